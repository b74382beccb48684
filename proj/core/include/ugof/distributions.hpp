#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ugof/rng.hpp"
#include "ugof/sample.hpp"

namespace ugof {

enum class Family {
  uniform,
  beta,           // (a, b)
  trunc_normal,   // (mu, sigma), truncated to [0, 1]
  kumaraswamy,    // (a, b)
  stephens1,      // (k)
  stephens2,      // (k)
  stephens3,      // (k)
  weibull,        // (theta) shape, unit scale
  gamma,          // (theta) shape, unit scale
  skew_normal,    // (theta)
  lfr,            // (theta) linear failure rate
  exp_geometric,  // (theta), theta < 1
  student_t,      // (theta) degrees of freedom
  chi_square,     // (theta) degrees of freedom
  half_normal,    // (theta) scale
  normal,         // (mu, sigma^2)
  pareto,         // (beta), support x >= 1
  mixture,
};

/// A sampleable distribution from the alternative catalog.
///
/// Immutable value type. Mixture components are shared, so copies are
/// cheap.
class AlternativeSpec {
 public:
  /// Validates parameter count and ranges; throws std::invalid_argument.
  static AlternativeSpec make(Family family, std::vector<double> params);
  static AlternativeSpec uniform() { return make(Family::uniform, {}); }
  /// Draws from `a` with probability p, otherwise from `b`.
  static AlternativeSpec mixture(double p, AlternativeSpec a,
                                 AlternativeSpec b);

  /// Copy shifted by +1 (used for the Pareto-support studies).
  AlternativeSpec translated() const;

  Family family() const noexcept { return family_; }
  std::span<const double> params() const noexcept { return params_; }
  bool translate_by_one() const noexcept { return translate_; }

  double mixture_weight() const noexcept { return p_; }
  const AlternativeSpec& component_a() const { return *a_; }
  const AlternativeSpec& component_b() const { return *b_; }

  /// Canonical text form, parseable by parse_alternative.
  std::string label() const;

 private:
  AlternativeSpec() = default;

  Family family_ = Family::uniform;
  std::vector<double> params_;
  bool translate_ = false;
  double p_ = 1.0;
  std::shared_ptr<const AlternativeSpec> a_;
  std::shared_ptr<const AlternativeSpec> b_;
};

/// One draw.
double draw(const AlternativeSpec& spec, RngStream& stream);

/// n independent draws.
Sample sample(const AlternativeSpec& spec, std::size_t n, RngStream& stream);

/// Writes draws into `out` without allocating.
void sample_into(const AlternativeSpec& spec, std::span<double> out,
                 RngStream& stream);

/// Distribution function; nondecreasing with limits 0 and 1.
double cdf(const AlternativeSpec& spec, double x);

/// Kolmogorov-Smirnov distance between n draws and cdf(spec, .).
double sampler_goodness(const AlternativeSpec& spec, std::size_t n,
                        RngStream& stream);

class SpecParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grammar description printed with parse errors.
std::string_view alternative_grammar();

/// Parses e.g. "beta(2,3)", "mix(0.75,gamma(1)+1,pareto(1))", "uniform".
/// Throws SpecParseError.
AlternativeSpec parse_alternative(std::string_view text);

}  // namespace ugof
