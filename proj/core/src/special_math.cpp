#include "ugof/special_math.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/owens_t.hpp>

namespace ugof {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile needs 0 < p < 1");
  }
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma needs x > 0");
  return std::lgamma(x);
}

double beta_fn(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) {
    throw std::domain_error("beta_fn needs positive arguments");
  }
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(a, x);
}

double gamma_q(double a, double x) {
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(a, x);
}

double student_t_cdf(double dof, double x) {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  // P(|T| > |x|) = I_{dof/(dof + x^2)}(dof/2, 1/2).
  const double tail =
      0.5 * boost::math::ibeta(0.5 * dof, 0.5, dof / (dof + x * x));
  return x >= 0.0 ? 1.0 - tail : tail;
}

double skew_normal_cdf(double alpha, double x) {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  const double v = normal_cdf(x) - 2.0 * boost::math::owens_t(x, alpha);
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace ugof
