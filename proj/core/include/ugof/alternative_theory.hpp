#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ugof/quadrature.hpp"

namespace ugof {

/// Ingredients of the fixed-alternative asymptotics for a (0,1)-valued U.
struct AlternativeTheorySpec {
  std::string name;
  /// Psi(t) = E[(2U - 1) 1{U >= t}].
  std::function<double(double)> psi;
  /// E[(2U - 1)^2 1{U >= t}].
  std::function<double(double)> second_moment_tail;
  /// Exact values, when known.
  std::optional<double> delta;
  std::optional<double> sigma2;
};

struct PowerCurve {
  std::vector<int> sample_sizes;
  std::vector<double> approx_power;
  std::optional<std::vector<double>> empirical_power;
  std::optional<std::vector<double>> mc_se;
};

/// Graded Gauss-Legendre rule of order 128, the default for the integrals
/// below.
const QuadratureRule& default_theory_rule();

/// z(t) = Psi(t) - t(1 - t).
double discrepancy(const AlternativeTheorySpec& spec, double t);

/// Delta = int_0^1 z(t)^2 dt, the almost-sure limit of T_n / n.
double delta(const AlternativeTheorySpec& spec,
             const QuadratureRule& rule = default_theory_rule());

/// K_W(s,t) = E[(2U-1)^2 1{U >= max(s,t)}] - Psi(s) Psi(t).
double kernel_kw(const AlternativeTheorySpec& spec, double s, double t);

/// sigma^2 = 4 int int K_W(s,t) z(s) z(t) ds dt over the diagonally split
/// square.
double sigma2(const AlternativeTheorySpec& spec,
              const QuadratureRule& rule = default_theory_rule());

/// 1 - Phi( sqrt(n)/sigma * (c_n/n - Delta) ). Throws std::invalid_argument
/// if sigma2 <= 0, delta < 0 or n < 1.
double power_approx(double delta, double sigma2, int n, double c_n);

/// Beta(2,2), Beta(2,3), Beta(1,1/2) and Beta(1/2,1/2) with closed-form
/// Psi and second-moment tails and the exact Delta / sigma^2 constants.
std::vector<AlternativeTheorySpec> builtin_beta_specs();

/// Any Beta(a,b) through incomplete beta functions.
AlternativeTheorySpec beta_theory_spec(double a, double b);

/// U ~ U(0,1); Psi(t) = t - t^2 and Delta = 0.
AlternativeTheorySpec uniform_theory_spec();

/// Generic alternative on [0,1] given only its distribution function.
/// Integration by parts turns both tail expectations into integrals of
/// 1 - F, evaluated with `rule` mapped onto (t, 1).
AlternativeTheorySpec theory_spec_from_cdf(
    std::string name, std::function<double(double)> cdf,
    const QuadratureRule& rule = graded_gauss_legendre(64));

/// Evaluates power_approx at every size. Delta and sigma^2 come from the
/// spec's stored values when present, otherwise from quadrature. When
/// sigma^2 is numerically zero (the uniform itself) the sigma -> 0 limit is
/// used: 0 if c_n/n > Delta, 1 if below, 1/2 at equality.
PowerCurve power_curve(const AlternativeTheorySpec& spec, double alpha,
                       std::span<const int> sizes,
                       std::span<const double> critical_values);

/// CSV with header n,approx_power,empirical_power,mc_se. Missing empirical
/// columns are left empty.
void write_power_curve_csv(std::ostream& out, const PowerCurve& curve);

}  // namespace ugof
