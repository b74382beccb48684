#include "ugof/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ugof {

QuadratureRule gauss_legendre(int order) {
  if (order < 2) throw std::invalid_argument("gauss_legendre needs order >= 2");
  const int n = order;
  QuadratureRule rule;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  // Roots are symmetric; solve for the upper half on [-1, 1].
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // P_n'(x) from P_n and P_{n-1}.
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);

    // Map [-1, 1] to (0, 1); weights halve.
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[n - 1 - i] = 0.5 * w;
    rule.weights[i] = 0.5 * w;
  }
  return rule;
}

QuadratureRule graded_gauss_legendre(int order) {
  QuadratureRule rule = gauss_legendre(order);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    rule.nodes[i] = x * x * (3.0 - 2.0 * x);
    rule.weights[i] *= 6.0 * x * (1.0 - x);
  }
  return rule;
}

KernelGrid nystrom_discretize(
    const std::function<double(double, double)>& kernel,
    const QuadratureRule& rule) {
  const auto n = static_cast<Eigen::Index>(rule.nodes.size());
  KernelGrid out;
  out.grid = rule.nodes;
  out.weighted = true;
  out.K.resize(n, n);
  std::vector<double> root_w(rule.weights.size());
  for (std::size_t i = 0; i < root_w.size(); ++i) {
    root_w[i] = std::sqrt(rule.weights[i]);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.K(i, j) =
          root_w[i] * root_w[j] * kernel(rule.nodes[i], rule.nodes[j]);
    }
  }
  return out;
}

std::vector<double> trace_powers(const KernelGrid& grid, int max_power) {
  std::vector<double> traces;
  if (max_power < 1) return traces;
  traces.reserve(static_cast<std::size_t>(max_power));
  Eigen::MatrixXd power = grid.K;
  traces.push_back(power.trace());
  for (int k = 2; k <= max_power; ++k) {
    power = power * grid.K;
    traces.push_back(power.trace());
  }
  return traces;
}

}  // namespace ugof
