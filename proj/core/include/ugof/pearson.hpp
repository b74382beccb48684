#pragma once

#include <string_view>

#include "ugof/null_theory.hpp"

namespace ugof {

enum class PearsonType {
  normal,
  type_i,    // beta on a finite interval
  type_ii,   // symmetric beta
  type_iii,  // gamma
  type_iv,
  type_v,    // inverse gamma
  type_vi,   // beta prime
  type_vii,  // Student t
};

std::string_view pearson_type_name(PearsonType type);

struct PearsonMoments {
  double mean = 0.0;
  double variance = 1.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

PearsonMoments moments_from_cumulants(const CumulantSet& c);

/// Member of the Pearson system matched to four moments.
///
/// Every family is stored as x = location + scale * z with z in a standard
/// form; a negative scale mirrors the standard form.
///   normal   z ~ N(0, 1)
///   I, II    z ~ Beta(shape1, shape2) on (0, 1)
///   III      z ~ Gamma(shape1)
///   IV       density of z proportional to (1 + z^2)^(-shape1) exp(-shape2 atan z)
///   V        z ~ InverseGamma(shape1, 1)
///   VI       z ~ BetaPrime(shape1, shape2)
///   VII      z ~ Student t with shape1 degrees of freedom
struct PearsonFit {
  PearsonType type = PearsonType::normal;
  double location = 0.0;
  double scale = 1.0;
  double shape1 = 0.0;
  double shape2 = 0.0;
  /// Normalising constant of the type IV standard density; 1 otherwise.
  double norm = 1.0;
  /// Support in x.
  double lower = 0.0;
  double upper = 0.0;
  PearsonMoments source;
};

/// Selects the family with the kappa criterion on (beta1, beta2) and
/// matches moments. Boundary types (III, V, the normal point) are chosen
/// when the criterion is within 1e-9 of the boundary.
/// Throws std::domain_error when beta2 <= beta1 + 1 (no distribution) or
/// when the fourth moment cannot be finite.
PearsonFit pearson_fit(const PearsonMoments& m);
PearsonFit pearson_fit(const CumulantSet& c);

double pearson_density(const PearsonFit& fit, double x);
double pearson_cdf(const PearsonFit& fit, double x);

/// Bisection on pearson_cdf after exponential bracket expansion,
/// absolute tolerance 1e-8. Throws std::runtime_error when no bracket
/// encloses p, std::domain_error unless 0 < p < 1.
double pearson_quantile(const PearsonFit& fit, double p);

}  // namespace ugof
