#pragma once

namespace ugof {

/// Standard normal distribution function.
double normal_cdf(double x);

/// Standard normal upper tail 1 - Phi(x), accurate far into the tail.
double normal_sf(double x);

/// Inverse of normal_cdf. Throws std::domain_error unless 0 < p < 1.
double normal_quantile(double p);

/// log Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// B(a, b) = exp(lgamma(a) + lgamma(b) - lgamma(a + b)); a, b > 0.
double beta_fn(double a, double b);

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

/// Student t distribution function with `dof` degrees of freedom.
double student_t_cdf(double dof, double x);

/// Skew-normal distribution function with shape `alpha` (location 0,
/// scale 1): Phi(x) - 2 T(x, alpha) with Owen's T.
double skew_normal_cdf(double alpha, double x);

}  // namespace ugof
