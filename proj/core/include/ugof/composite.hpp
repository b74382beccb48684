#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ugof/distributions.hpp"
#include "ugof/sample.hpp"

namespace ugof {

/// Null hypothesis targets. `uniform` is the simple U(0,1) null; the other
/// two are composite families with estimated parameters.
enum class NullFamily {
  uniform,
  normal,  // location-scale
  pareto,  // shape
};

std::string_view null_family_name(NullFamily family);
NullFamily parse_null_family(std::string_view text);

struct NormalEstimate {
  double mu = 0.0;
  double sigma = 1.0;
};

/// Maximum likelihood: sample mean and the 1/n standard deviation.
/// Throws std::domain_error for n < 2 or zero variance.
NormalEstimate estimate_normal(const Sample& x);

/// Phi of the scaled residuals (x_j - mu_hat) / sigma_hat.
UnitSample transform_normal(const Sample& x);

/// beta_hat = n / sum log x_j. Throws std::domain_error naming the first
/// value <= 1.
double estimate_pareto(const Sample& x);

/// u_j = 1 - Y_j^(-1) with Y_j = x_j^beta_hat, i.e. the unit-shape Pareto
/// cdf applied to the power-transformed sample whose MLE is exactly 1.
UnitSample transform_pareto(const Sample& x);

/// Estimate-and-transform for any null family (identity check for uniform).
UnitSample null_transform(NullFamily family, const Sample& x);

/// N(0,1), Pareto(1) or U(0,1): the member used to tabulate pivotal
/// critical values.
AlternativeSpec standard_member(NullFamily family);

struct BootstrapResult {
  TestId test = TestId::t_n;
  double p_value = 1.0;
  /// Replicates that completed; p = (1 + #{T* >= T}) / (replications + 1).
  int replications = 0;
  double observed_statistic = 0.0;
};

/// Parametric bootstrap for every test in `tests` on shared replicates:
/// fit the family to x, draw B samples of size n from the fitted member,
/// re-estimate and re-transform each. Replicate b uses rng_substream(seed, b).
/// Throws std::invalid_argument for B < 99 or the uniform family and
/// std::runtime_error when more than 1% of replicates fail to estimate.
std::vector<BootstrapResult> bootstrap_pvalues(NullFamily family,
                                               std::span<const TestId> tests,
                                               const Sample& x, int B,
                                               std::uint64_t seed,
                                               int workers = 1);

BootstrapResult bootstrap_pvalue(NullFamily family, TestId test,
                                 const Sample& x, int B, std::uint64_t seed);

}  // namespace ugof
