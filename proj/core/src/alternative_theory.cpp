#include "ugof/alternative_theory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "ugof/special_math.hpp"

namespace ugof {
namespace {

// Inner integral Z(t) = int_0^t z(s) ds.
double discrepancy_prefix(const AlternativeTheorySpec& spec,
                          const QuadratureRule& rule, double t) {
  return integrate(rule, 0.0, t,
                   [&spec](double s) { return discrepancy(spec, s); });
}

void write_number(std::ostream& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

}  // namespace

const QuadratureRule& default_theory_rule() {
  static const QuadratureRule rule = graded_gauss_legendre(128);
  return rule;
}

double discrepancy(const AlternativeTheorySpec& spec, double t) {
  return spec.psi(t) - t * (1.0 - t);
}

double delta(const AlternativeTheorySpec& spec, const QuadratureRule& rule) {
  return integrate(rule, [&spec](double t) {
    const double z = discrepancy(spec, t);
    return z * z;
  });
}

double kernel_kw(const AlternativeTheorySpec& spec, double s, double t) {
  return spec.second_moment_tail(std::max(s, t)) - spec.psi(s) * spec.psi(t);
}

double sigma2(const AlternativeTheorySpec& spec, const QuadratureRule& rule) {
  // The kernel is M2(max(s,t)) - Psi(s) Psi(t); the first part folds onto
  // the lower triangle, the second factorises.
  double tail_part = 0.0;
  double psi_part = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double z = discrepancy(spec, t);
    tail_part += rule.weights[i] * spec.second_moment_tail(t) * z *
                 discrepancy_prefix(spec, rule, t);
    psi_part += rule.weights[i] * spec.psi(t) * z;
  }
  return 4.0 * (2.0 * tail_part - psi_part * psi_part);
}

double power_approx(double delta, double sigma2, int n, double c_n) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
  if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  if (n < 1) throw std::invalid_argument("n must be positive");
  const double z = std::sqrt(static_cast<double>(n) / sigma2) * (c_n / n - delta);
  return normal_sf(z);
}

std::vector<AlternativeTheorySpec> builtin_beta_specs() {
  using std::numbers::pi;
  std::vector<AlternativeTheorySpec> out;

  out.push_back({"Beta(2,2)",
                 [](double t) { return 3.0 * t * t * (1.0 - t) * (1.0 - t); },
                 [](double m) {
                   return (((24.0 / 5.0 * m - 12.0) * m + 10.0) * m - 3.0) * m * m +
                          0.2;
                 },
                 1.0 / 210.0, 107297.0 / 94594500.0});

  out.push_back({"Beta(2,3)",
                 [](double t) {
                   const double c = t - 1.0;
                   return -0.2 * (24.0 * t * t - 3.0 * t - 1.0) * c * c * c;
                 },
                 [](double m) {
                   return ((((-8.0 * m + 144.0 / 5.0) * m - 39.0) * m + 24.0) * m -
                           6.0) * m * m +
                          0.2;
                 },
                 71.0 / 2310.0, 13088573.0 / 2948195250.0});

  out.push_back({"Beta(1,0.5)",
                 [](double t) { return std::sqrt(1.0 - t) * (2.0 * t + 1.0) / 3.0; },
                 [](double m) {
                   return (12.0 * m * m - 4.0 * m + 7.0) * std::sqrt(1.0 - m) / 15.0;
                 },
                 53.0 / 945.0, 426456598.0 / 10854718875.0});

  out.push_back({"Beta(0.5,0.5)",
                 [](double t) { return 2.0 / pi * std::sqrt(t * (1.0 - t)); },
                 [](double m) {
                   const double r = std::sqrt(m * (1.0 - m));
                   return 2.0 / pi * m * r - r / pi -
                          std::asin(2.0 * m - 1.0) / (2.0 * pi) + 0.25;
                 },
                 2.0 / (3.0 * pi * pi) - 3.0 / 32.0 + 1.0 / 30.0, std::nullopt});
  return out;
}

AlternativeTheorySpec beta_theory_spec(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) {
    throw std::invalid_argument("beta parameters must be positive");
  }
  const double m1 = a / (a + b);
  const double m2 = a * (a + 1.0) / ((a + b) * (a + b + 1.0));
  AlternativeTheorySpec spec;
  char buf[96];
  std::snprintf(buf, sizeof buf, "Beta(%g,%g)", a, b);
  spec.name = buf;
  spec.psi = [a, b, m1](double t) {
    return 2.0 * m1 * (1.0 - incomplete_beta(a + 1.0, b, t)) -
           (1.0 - incomplete_beta(a, b, t));
  };
  spec.second_moment_tail = [a, b, m1, m2](double t) {
    return 4.0 * m2 * (1.0 - incomplete_beta(a + 2.0, b, t)) -
           4.0 * m1 * (1.0 - incomplete_beta(a + 1.0, b, t)) +
           (1.0 - incomplete_beta(a, b, t));
  };
  return spec;
}

AlternativeTheorySpec uniform_theory_spec() {
  AlternativeTheorySpec spec;
  spec.name = "U(0,1)";
  spec.psi = [](double t) { return t - t * t; };
  // int_t^1 (2u - 1)^2 du
  spec.second_moment_tail = [](double t) {
    const double c = 2.0 * t - 1.0;
    return (1.0 - c * c * c) / 6.0;
  };
  spec.delta = 0.0;
  return spec;
}

AlternativeTheorySpec theory_spec_from_cdf(std::string name,
                                           std::function<double(double)> cdf,
                                           const QuadratureRule& rule) {
  AlternativeTheorySpec spec;
  spec.name = std::move(name);
  spec.psi = [cdf, rule](double t) {
    const double tail = integrate(rule, t, 1.0,
                                  [&cdf](double u) { return 1.0 - cdf(u); });
    return (2.0 * t - 1.0) * (1.0 - cdf(t)) + 2.0 * tail;
  };
  spec.second_moment_tail = [cdf, rule](double t) {
    const double tail = integrate(rule, t, 1.0, [&cdf](double u) {
      return 4.0 * (2.0 * u - 1.0) * (1.0 - cdf(u));
    });
    const double c = 2.0 * t - 1.0;
    return c * c * (1.0 - cdf(t)) + tail;
  };
  return spec;
}

constexpr double kDegenerateSigma2 = 1e-15;

PowerCurve power_curve(const AlternativeTheorySpec& spec, double alpha,
                       std::span<const int> sizes,
                       std::span<const double> critical_values) {
  if (sizes.size() != critical_values.size()) {
    throw std::invalid_argument("one critical value per sample size required");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  const double d = spec.delta ? *spec.delta : delta(spec);
  const double s2 = spec.sigma2 ? *spec.sigma2 : sigma2(spec);
  PowerCurve curve;
  curve.sample_sizes.assign(sizes.begin(), sizes.end());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (s2 <= kDegenerateSigma2) {
      // sigma -> 0 limit of the approximation, e.g. under the null itself.
      const double gap = critical_values[i] / sizes[i] - d;
      curve.approx_power.push_back(gap > 0.0 ? 0.0 : gap < 0.0 ? 1.0 : 0.5);
      continue;
    }
    curve.approx_power.push_back(power_approx(d, s2, sizes[i], critical_values[i]));
  }
  return curve;
}

void write_power_curve_csv(std::ostream& out, const PowerCurve& curve) {
  out << "n,approx_power,empirical_power,mc_se\n";
  for (std::size_t i = 0; i < curve.sample_sizes.size(); ++i) {
    out << curve.sample_sizes[i] << ',';
    write_number(out, curve.approx_power[i]);
    out << ',';
    if (curve.empirical_power) write_number(out, (*curve.empirical_power)[i]);
    out << ',';
    if (curve.mc_se) write_number(out, (*curve.mc_se)[i]);
    out << '\n';
  }
}

}  // namespace ugof
