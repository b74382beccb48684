#include "ugof/pearson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ugof/special_math.hpp"

namespace ugof {
namespace {

constexpr double kBoundaryTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Unnormalised type IV density in theta = atan(z).
double type_iv_theta_density(double m, double nu, double theta) {
  return std::pow(std::cos(theta), 2.0 * m - 2.0) * std::exp(-nu * theta);
}

double type_iv_integral(double m, double nu, double a, double b) {
  if (b <= a) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(
      [m, nu](double th) { return type_iv_theta_density(m, nu, th); }, a, b);
}

void set_support(PearsonFit& fit, double z_lo, double z_hi) {
  double a = fit.location + fit.scale * z_lo;
  double b = fit.location + fit.scale * z_hi;
  if (fit.scale < 0) std::swap(a, b);
  fit.lower = a;
  fit.upper = b;
}

// Distribution function of the standard form z.
double standard_cdf(const PearsonFit& fit, double z) {
  switch (fit.type) {
    case PearsonType::normal:
      return normal_cdf(z);
    case PearsonType::type_i:
    case PearsonType::type_ii:
      return incomplete_beta(fit.shape1, fit.shape2, z);
    case PearsonType::type_iii:
      return gamma_p(fit.shape1, z);
    case PearsonType::type_iv: {
      const double theta = std::atan(z);
      const double half_pi = 0.5 * std::numbers::pi;
      // Integrate the shorter side for accuracy in the tails.
      if (theta <= 0.0) {
        return fit.norm * type_iv_integral(fit.shape1, fit.shape2, -half_pi, theta);
      }
      return 1.0 - fit.norm * type_iv_integral(fit.shape1, fit.shape2, theta,
                                               half_pi);
    }
    case PearsonType::type_v:
      return z <= 0.0 ? 0.0 : gamma_q(fit.shape1, 1.0 / z);
    case PearsonType::type_vi:
      return z <= 0.0 ? 0.0
                      : incomplete_beta(fit.shape1, fit.shape2, z / (1.0 + z));
    case PearsonType::type_vii:
      return student_t_cdf(fit.shape1, z);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double standard_density(const PearsonFit& fit, double z) {
  switch (fit.type) {
    case PearsonType::normal:
      return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    case PearsonType::type_i:
    case PearsonType::type_ii:
      if (z <= 0.0 || z >= 1.0) return 0.0;
      return std::exp((fit.shape1 - 1.0) * std::log(z) +
                      (fit.shape2 - 1.0) * std::log1p(-z)) /
             beta_fn(fit.shape1, fit.shape2);
    case PearsonType::type_iii:
      if (z <= 0.0) return 0.0;
      return std::exp((fit.shape1 - 1.0) * std::log(z) - z -
                      log_gamma(fit.shape1));
    case PearsonType::type_iv:
      return fit.norm * std::pow(1.0 + z * z, -fit.shape1) *
             std::exp(-fit.shape2 * std::atan(z));
    case PearsonType::type_v:
      if (z <= 0.0) return 0.0;
      return std::exp(-(fit.shape1 + 1.0) * std::log(z) - 1.0 / z -
                      log_gamma(fit.shape1));
    case PearsonType::type_vi:
      if (z <= 0.0) return 0.0;
      return std::exp((fit.shape1 - 1.0) * std::log(z) -
                      (fit.shape1 + fit.shape2) * std::log1p(z)) /
             beta_fn(fit.shape1, fit.shape2);
    case PearsonType::type_vii: {
      const double nu = fit.shape1;
      return std::exp(log_gamma(0.5 * (nu + 1.0)) - log_gamma(0.5 * nu) -
                      0.5 * (nu + 1.0) * std::log1p(z * z / nu)) /
             std::sqrt(nu * std::numbers::pi);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::string_view pearson_type_name(PearsonType type) {
  switch (type) {
    case PearsonType::normal: return "normal";
    case PearsonType::type_i: return "I";
    case PearsonType::type_ii: return "II";
    case PearsonType::type_iii: return "III";
    case PearsonType::type_iv: return "IV";
    case PearsonType::type_v: return "V";
    case PearsonType::type_vi: return "VI";
    case PearsonType::type_vii: return "VII";
  }
  return "?";
}

PearsonMoments moments_from_cumulants(const CumulantSet& c) {
  if (!(c.k2 > 0.0)) throw std::domain_error("second cumulant must be positive");
  return {c.k1, c.k2, c.skewness(), c.excess_kurtosis()};
}

PearsonFit pearson_fit(const CumulantSet& c) {
  return pearson_fit(moments_from_cumulants(c));
}

PearsonFit pearson_fit(const PearsonMoments& m) {
  if (!(m.variance > 0.0)) throw std::domain_error("variance must be positive");
  const double g1 = m.skewness;
  const double g2 = m.excess_kurtosis;
  const double b1 = g1 * g1;
  const double b2 = g2 + 3.0;
  if (!(b2 > b1 + 1.0)) {
    throw std::domain_error(
        "moments outside the Pearson region: need beta2 > beta1 + 1");
  }
  const double sd = std::sqrt(m.variance);

  PearsonFit fit;
  fit.source = m;

  if (std::abs(g1) < kBoundaryTol && std::abs(g2) < kBoundaryTol) {
    fit.type = PearsonType::normal;
    fit.location = m.mean;
    fit.scale = sd;
    fit.lower = -kInf;
    fit.upper = kInf;
    return fit;
  }
  if (std::abs(g1) < kBoundaryTol && g2 > 0.0) {
    fit.type = PearsonType::type_vii;
    const double nu = 6.0 / g2 + 4.0;
    fit.shape1 = nu;
    fit.location = m.mean;
    fit.scale = sd * std::sqrt((nu - 2.0) / nu);
    fit.lower = -kInf;
    fit.upper = kInf;
    return fit;
  }

  // Pearson's equation scaled by (10 b2 - 12 b1 - 18) so the uniform point,
  // where that factor vanishes, stays regular:
  //   f'(y)/f(y) = -(A + D y) / (C2 y^2 + C1 y + C0),  y = x - mean.
  const double D = 10.0 * b2 - 12.0 * b1 - 18.0;
  const double A = sd * g1 * (b2 + 3.0);
  const double C0 = m.variance * (4.0 * b2 - 3.0 * b1);
  const double C1 = A;
  const double C2 = 2.0 * b2 - 3.0 * b1 - 6.0;

  if (std::abs(C2) < kBoundaryTol) {
    fit.type = PearsonType::type_iii;
    const double k = 4.0 / b1;
    const double theta = sd * g1 / 2.0;
    fit.shape1 = k;
    fit.scale = theta;
    fit.location = m.mean - k * theta;
    set_support(fit, 0.0, kInf);
    return fit;
  }

  const double kappa = b1 * (b2 + 3.0) * (b2 + 3.0) /
                       (4.0 * (4.0 * b2 - 3.0 * b1) * C2);

  if (kappa < 0.0 || (std::abs(g1) < kBoundaryTol && g2 < 0.0)) {
    // Real roots on both sides of the mean: beta on (r_lo, r_hi).
    const double disc = C1 * C1 - 4.0 * C2 * C0;
    const double sq = std::sqrt(disc);
    double r1 = (-C1 - sq) / (2.0 * C2);
    double r2 = (-C1 + sq) / (2.0 * C2);
    if (r1 > r2) std::swap(r1, r2);
    const double e1 = -(A + D * r1) / (C2 * (r1 - r2));
    const double e2 = -(A + D * r2) / (C2 * (r2 - r1));
    fit.type = std::abs(g1) < kBoundaryTol ? PearsonType::type_ii
                                           : PearsonType::type_i;
    fit.shape1 = e1 + 1.0;
    fit.shape2 = e2 + 1.0;
    fit.location = m.mean + r1;
    fit.scale = r2 - r1;
    set_support(fit, 0.0, 1.0);
    return fit;
  }

  if (!(D > 0.0)) {
    throw std::domain_error(
        "moments imply a Pearson density without a finite fourth moment");
  }

  if (std::abs(kappa - 1.0) < kBoundaryTol) {
    // Double root: inverse gamma.
    const double r = -C1 / (2.0 * C2);
    const double p = D / C2;
    const double q = (A + D * r) / C2;
    fit.type = PearsonType::type_v;
    fit.shape1 = p - 1.0;
    fit.location = m.mean + r;
    // Right of r the scale is -q > 0; left of r it is mirrored, again -q.
    fit.scale = -q;
    set_support(fit, 0.0, kInf);
    return fit;
  }

  if (kappa < 1.0) {
    const double c = -C1 / (2.0 * C2);
    const double alpha = std::sqrt(C0 / C2 - c * c);
    fit.type = PearsonType::type_iv;
    fit.shape1 = D / (2.0 * C2);
    fit.shape2 = (A + D * c) / (C2 * alpha);
    fit.location = m.mean + c;
    fit.scale = alpha;
    const double half_pi = 0.5 * std::numbers::pi;
    fit.norm = 1.0 / type_iv_integral(fit.shape1, fit.shape2, -half_pi, half_pi);
    fit.lower = -kInf;
    fit.upper = kInf;
    return fit;
  }

  // kappa > 1: real roots on one side of the mean, beta prime.
  const double disc = C1 * C1 - 4.0 * C2 * C0;
  const double sq = std::sqrt(disc);
  double r1 = (-C1 - sq) / (2.0 * C2);
  double r2 = (-C1 + sq) / (2.0 * C2);
  if (r1 > r2) std::swap(r1, r2);
  const double e1 = -(A + D * r1) / (C2 * (r1 - r2));
  const double e2 = -(A + D * r2) / (C2 * (r2 - r1));
  const double d = r2 - r1;
  fit.type = PearsonType::type_vi;
  if (r2 < 0.0) {
    // Support (r2, inf): f ~ w^e2 (w + d)^e1 with w = y - r2.
    fit.shape1 = e2 + 1.0;
    fit.shape2 = -(e1 + e2) - 1.0;
    fit.location = m.mean + r2;
    fit.scale = d;
  } else {
    // Support (-inf, r1): mirrored.
    fit.shape1 = e1 + 1.0;
    fit.shape2 = -(e1 + e2) - 1.0;
    fit.location = m.mean + r1;
    fit.scale = -d;
  }
  set_support(fit, 0.0, kInf);
  return fit;
}

double pearson_density(const PearsonFit& fit, double x) {
  if (!(x > fit.lower && x < fit.upper)) return 0.0;
  const double z = (x - fit.location) / fit.scale;
  return standard_density(fit, z) / std::abs(fit.scale);
}

double pearson_cdf(const PearsonFit& fit, double x) {
  if (x <= fit.lower) return 0.0;
  if (x >= fit.upper) return 1.0;
  const double z = (x - fit.location) / fit.scale;
  const double g = standard_cdf(fit, z);
  return std::clamp(fit.scale > 0.0 ? g : 1.0 - g, 0.0, 1.0);
}

double pearson_quantile(const PearsonFit& fit, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("pearson_quantile needs 0 < p < 1");
  }
  const double mean = fit.source.mean;
  const double sd = std::sqrt(fit.source.variance);

  double lo = std::max(fit.lower, mean - 4.0 * sd);
  double hi = std::min(fit.upper, mean + 4.0 * sd);
  double step = 4.0 * sd;
  for (int i = 0; i < 200 && pearson_cdf(fit, lo) > p; ++i) {
    step *= 2.0;
    lo = std::max(fit.lower, mean - step);
  }
  step = 4.0 * sd;
  for (int i = 0; i < 200 && pearson_cdf(fit, hi) < p; ++i) {
    step *= 2.0;
    hi = std::min(fit.upper, mean + step);
  }
  if (!(pearson_cdf(fit, lo) <= p && pearson_cdf(fit, hi) >= p)) {
    throw std::runtime_error("pearson_quantile: could not bracket p");
  }
  for (int i = 0; i < 400 && hi - lo > 1e-8; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (pearson_cdf(fit, mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ugof
