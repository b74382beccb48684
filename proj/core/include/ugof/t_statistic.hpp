#pragma once

#include <span>

#include "ugof/sample.hpp"

namespace ugof {

/// T_n through the closed double-sum form
///   (1/n) sum_{j,k} (4 U_j U_k - 2(U_j + U_k) + 1) min(U_j, U_k)
///   - (1/3) sum_j (2U_j - 1) U_j^2 (3 - 2U_j) + n/30.
/// O(n^2). Tiny negative results from cancellation are clamped to 0.
double t_statistic(const UnitSample& u);

/// Same statistic from an ascending array in O(n); the double sum collapses
/// because min(U_(i), U_(k)) = U_(min(i,k)).
double t_statistic_sorted(std::span<const double> sorted_u);

/// n * integral_0^1 |(1/n) sum_j (2U_j - 1) 1{U_j >= t} - t(1-t)|^2 dt,
/// integrated piecewise between the distinct order statistics with a
/// `nodes`-point Gauss-Legendre rule on every piece. The integrand is a
/// quartic on each piece, so the result is exact up to rounding.
/// Throws std::invalid_argument when nodes < 64.
double t_statistic_integral(const UnitSample& u, int nodes = 64);

/// sqrt(n) * [(1/n) sum_j (2U_j - 1) 1{U_j >= t} - t(1-t)] for t in (0,1).
double empirical_process(const UnitSample& u, double t);

}  // namespace ugof
