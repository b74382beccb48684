#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace ugof {

/// A fixed rule on (0,1): nodes strictly increasing, positive weights
/// summing to one.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

/// Gauss-Legendre rule mapped to (0,1). Exact for polynomials of degree
/// <= 2*order - 1. Nodes come from Newton iteration on the Legendre
/// three-term recurrence. Throws std::invalid_argument if order < 2.
QuadratureRule gauss_legendre(int order);

/// Gauss-Legendre pulled through t = x^2 (3 - 2x). Nodes cluster at both
/// ends, which restores fast convergence for integrands with square-root
/// type behaviour at 0 or 1. Exact for polynomials of degree
/// <= (2*order - 3) / 3.
QuadratureRule graded_gauss_legendre(int order);

template <class F>
double integrate(const QuadratureRule& rule, F&& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(rule.nodes[i]);
  }
  return sum;
}

/// Integral of f over (a, b) with the rule mapped affinely.
template <class F>
double integrate(const QuadratureRule& rule, double a, double b, F&& f) {
  const double h = b - a;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(a + h * rule.nodes[i]);
  }
  return h * sum;
}

/// Double integral of f over the unit square, split along the diagonal:
///   int_0^1 dt int_0^t [f(s, t) + f(t, s)] ds.
/// Kernels built from max(s, t) are smooth on each triangle, so this keeps
/// the rule's full accuracy where a tensor grid would not.
template <class F>
double split_square_integral(const QuadratureRule& rule, F&& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    double inner = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double s = t * rule.nodes[j];
      inner += rule.weights[j] * (f(s, t) + f(t, s));
    }
    sum += rule.weights[i] * t * inner;
  }
  return sum;
}

/// Discretised integral kernel on a quadrature grid.
struct KernelGrid {
  std::vector<double> grid;
  Eigen::MatrixXd K;
  /// True when entries are already multiplied by sqrt(w_i w_j).
  bool weighted = true;
};

/// Nystrom matrix A_ij = sqrt(w_i w_j) k(x_i, x_j). The trace of A^j
/// approximates int K_j(t, t) dt for the j-fold iterated kernel, and the
/// eigenvalues of A approximate those of the integral operator.
KernelGrid nystrom_discretize(const std::function<double(double, double)>& kernel,
                              const QuadratureRule& rule);

/// trace(A), trace(A^2), ..., trace(A^max_power).
std::vector<double> trace_powers(const KernelGrid& grid, int max_power);

}  // namespace ugof
