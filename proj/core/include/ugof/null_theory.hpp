#pragma once

#include <vector>

#include "ugof/quadrature.hpp"

namespace ugof {

/// Covariance kernel of the Gaussian limit of the empirical process under
/// uniformity: (1 - (2 max(s,t) - 1)^3)/6 - s t (1-s)(1-t).
double kernel_kz(double s, double t);

/// First four cumulants of the limit statistic T_inf = ||Z||^2.
struct CumulantSet {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;

  double skewness() const;
  double excess_kurtosis() const;
};

/// (2/15, 109/4050, 502883/40540500, 200311667/23260111875).
CumulantSet cumulants_closed();

/// k_j = 2^(j-1) (j-1)! trace(A^j) from the Nystrom matrix of kernel_kz on a
/// Gauss-Legendre grid of the given order. Throws if order < 128.
CumulantSet cumulants_numeric(int order = 512);

struct LowCumulants {
  double k1 = 0.0;
  double k2 = 0.0;
};

/// k1 = int K(t,t) dt and k2 = 2 int int K(s,t)^2 ds dt by quadrature that
/// splits the square along the diagonal. The integrands are polynomials on
/// each triangle, so a rule of order >= 8 is exact.
LowCumulants low_cumulants_quadrature(int order = 128);

struct NystromSpectrum {
  std::vector<double> eigenvalues;  // descending
  int order = 0;
};

/// Eigenvalues of the symmetric Nystrom matrix of kernel_kz.
/// Throws if order < 64.
NystromSpectrum nystrom_spectrum(int order = 512);

}  // namespace ugof
