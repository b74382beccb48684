#include "ugof/null_theory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace ugof {

double kernel_kz(double s, double t) {
  const double m = 2.0 * std::max(s, t) - 1.0;
  return (1.0 - m * m * m) / 6.0 - s * t * (1.0 - s) * (1.0 - t);
}

double CumulantSet::skewness() const { return k3 / std::pow(k2, 1.5); }

double CumulantSet::excess_kurtosis() const { return k4 / (k2 * k2); }

CumulantSet cumulants_closed() {
  return {2.0 / 15.0, 109.0 / 4050.0, 502883.0 / 40540500.0,
          200311667.0 / 23260111875.0};
}

CumulantSet cumulants_numeric(int order) {
  if (order < 128) {
    throw std::invalid_argument("cumulants_numeric needs order >= 128");
  }
  const KernelGrid grid = nystrom_discretize(kernel_kz, gauss_legendre(order));
  const std::vector<double> tr = trace_powers(grid, 4);
  // k_j = 2^(j-1) (j-1)! trace(A^j)
  return {tr[0], 2.0 * tr[1], 8.0 * tr[2], 48.0 * tr[3]};
}

LowCumulants low_cumulants_quadrature(int order) {
  const QuadratureRule rule = gauss_legendre(order);
  LowCumulants out;
  out.k1 = integrate(rule, [](double t) { return kernel_kz(t, t); });
  out.k2 = 2.0 * split_square_integral(rule, [](double s, double t) {
             const double k = kernel_kz(s, t);
             return k * k;
           });
  return out;
}

NystromSpectrum nystrom_spectrum(int order) {
  if (order < 64) {
    throw std::invalid_argument("nystrom_spectrum needs order >= 64");
  }
  const KernelGrid grid = nystrom_discretize(kernel_kz, gauss_legendre(order));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      grid.K, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue solver did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  NystromSpectrum out;
  out.order = order;
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::reverse(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

}  // namespace ugof
