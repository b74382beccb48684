#include "ugof/composite.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ugof/classical_tests.hpp"
#include "ugof/parallel.hpp"
#include "ugof/special_math.hpp"

namespace ugof {
namespace {

std::string format_value(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<double> statistics_of(const UnitSample& u,
                                  std::span<const TestId> tests) {
  const std::vector<double> sorted = u.sorted();
  std::vector<double> out;
  out.reserve(tests.size());
  for (TestId id : tests) out.push_back(statistic_sorted(id, sorted));
  return out;
}

AlternativeSpec fitted_member(NullFamily family, const Sample& x) {
  switch (family) {
    case NullFamily::normal: {
      const NormalEstimate e = estimate_normal(x);
      return AlternativeSpec::make(Family::normal, {e.mu, e.sigma * e.sigma});
    }
    case NullFamily::pareto:
      return AlternativeSpec::make(Family::pareto, {estimate_pareto(x)});
    case NullFamily::uniform:
      break;
  }
  throw std::invalid_argument("the uniform null has no parameters to bootstrap");
}

}  // namespace

std::string_view null_family_name(NullFamily family) {
  switch (family) {
    case NullFamily::uniform: return "uniform";
    case NullFamily::normal: return "normal";
    case NullFamily::pareto: return "pareto";
  }
  return "?";
}

NullFamily parse_null_family(std::string_view text) {
  std::string s;
  for (char c : text) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "uniform" || s == "u" || s == "unif") return NullFamily::uniform;
  if (s == "normal" || s == "n" || s == "z") return NullFamily::normal;
  if (s == "pareto" || s == "p") return NullFamily::pareto;
  throw std::invalid_argument("unknown null family \"" + std::string(text) +
                              "\" (expected uniform, normal or pareto)");
}

NormalEstimate estimate_normal(const Sample& x) {
  const std::size_t n = x.size();
  if (n < 2) throw std::domain_error("normal estimation needs at least 2 values");
  double mean = 0.0;
  for (double v : x.values()) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : x.values()) ss += (v - mean) * (v - mean);
  const double sigma = std::sqrt(ss / static_cast<double>(n));
  if (!(sigma > 0.0)) throw std::domain_error("sample has zero variance");
  return {mean, sigma};
}

UnitSample transform_normal(const Sample& x) {
  const NormalEstimate e = estimate_normal(x);
  std::vector<double> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    u[i] = normal_cdf((x[i] - e.mu) / e.sigma);
  }
  return UnitSample(std::move(u));
}

double estimate_pareto(const Sample& x) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 1.0)) {
      throw std::domain_error("Pareto null needs values > 1; value " +
                              format_value(x[i]) + " at position " +
                              std::to_string(i + 1));
    }
    sum += std::log(x[i]);
  }
  return static_cast<double>(x.size()) / sum;
}

UnitSample transform_pareto(const Sample& x) {
  const double beta = estimate_pareto(x);
  std::vector<double> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    u[i] = -std::expm1(-beta * std::log(x[i]));
  }
  return UnitSample(std::move(u));
}

UnitSample null_transform(NullFamily family, const Sample& x) {
  switch (family) {
    case NullFamily::uniform: {
      const auto v = x.values();
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0.0 || v[i] > 1.0) {
          throw std::domain_error("uniform null needs values in [0,1]; value " +
                                  format_value(v[i]) + " at position " +
                                  std::to_string(i + 1));
        }
      }
      return UnitSample(std::vector<double>(v.begin(), v.end()));
    }
    case NullFamily::normal:
      return transform_normal(x);
    case NullFamily::pareto:
      return transform_pareto(x);
  }
  throw std::invalid_argument("unknown null family");
}

AlternativeSpec standard_member(NullFamily family) {
  switch (family) {
    case NullFamily::uniform: return AlternativeSpec::uniform();
    case NullFamily::normal: return AlternativeSpec::make(Family::normal, {0.0, 1.0});
    case NullFamily::pareto: return AlternativeSpec::make(Family::pareto, {1.0});
  }
  throw std::invalid_argument("unknown null family");
}

std::vector<BootstrapResult> bootstrap_pvalues(NullFamily family,
                                               std::span<const TestId> tests,
                                               const Sample& x, int B,
                                               std::uint64_t seed, int workers) {
  if (B < 99) throw std::invalid_argument("bootstrap needs B >= 99");
  if (tests.empty()) throw std::invalid_argument("no tests requested");
  const AlternativeSpec member = fitted_member(family, x);
  const std::vector<double> observed = statistics_of(null_transform(family, x), tests);
  for (std::size_t k = 0; k < tests.size(); ++k) {
    if (!std::isfinite(observed[k])) {
      throw std::domain_error(std::string(test_name(tests[k])) +
                              ": observed statistic is not finite");
    }
  }

  const std::size_t n = x.size();
  const std::size_t m = tests.size();
  std::vector<double> stats(static_cast<std::size_t>(B) * m);
  std::vector<char> ok(static_cast<std::size_t>(B), 0);

  parallel_for(static_cast<std::size_t>(B), workers, [&](std::size_t b) {
    RngStream rng = rng_substream(seed, b);
    std::vector<double> draws(n);
    sample_into(member, draws, rng);
    try {
      const std::vector<double> s =
          statistics_of(null_transform(family, Sample(std::move(draws))), tests);
      for (double v : s) {
        if (!std::isfinite(v)) return;
      }
      std::copy(s.begin(), s.end(), stats.begin() + b * m);
      ok[b] = 1;
    } catch (const std::domain_error&) {
      // Degenerate replicate; counted below.
    }
  });

  const auto good = static_cast<int>(std::count(ok.begin(), ok.end(), 1));
  const int failed = B - good;
  if (failed * 100 > B) {
    throw std::runtime_error("bootstrap: " + std::to_string(failed) + " of " +
                             std::to_string(B) +
                             " replicates failed to estimate (limit 1%)");
  }

  std::vector<BootstrapResult> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    int exceed = 0;
    for (std::size_t b = 0; b < static_cast<std::size_t>(B); ++b) {
      if (ok[b] && stats[b * m + k] >= observed[k]) ++exceed;
    }
    out[k].test = tests[k];
    out[k].replications = good;
    out[k].observed_statistic = observed[k];
    out[k].p_value = (1.0 + exceed) / (good + 1.0);
  }
  return out;
}

BootstrapResult bootstrap_pvalue(NullFamily family, TestId test, const Sample& x,
                                 int B, std::uint64_t seed) {
  const TestId one[] = {test};
  return bootstrap_pvalues(family, one, x, B, seed).front();
}

}  // namespace ugof
