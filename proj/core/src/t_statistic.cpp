#include "ugof/t_statistic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ugof/quadrature.hpp"

namespace ugof {

double t_statistic(const UnitSample& u) {
  const auto v = u.values();
  const std::size_t n = v.size();
  // Diagonal plus twice the strict upper triangle of the symmetric sum.
  double pair_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double uj = v[j];
    pair_sum += (4.0 * uj * uj - 4.0 * uj + 1.0) * uj;
    double row = 0.0;
    for (std::size_t k = j + 1; k < n; ++k) {
      const double uk = v[k];
      row += (4.0 * uj * uk - 2.0 * (uj + uk) + 1.0) * std::min(uj, uk);
    }
    pair_sum += 2.0 * row;
  }
  double single_sum = 0.0;
  for (double uj : v) {
    single_sum += (2.0 * uj - 1.0) * uj * uj * (3.0 - 2.0 * uj);
  }
  const double nd = static_cast<double>(n);
  const double t = pair_sum / nd - single_sum / 3.0 + nd / 30.0;
  return std::max(t, 0.0);
}

double t_statistic_sorted(std::span<const double> u) {
  const std::size_t n = u.size();
  // Walk from the top so `tail` holds sum_{k > i} (2U_(k) - 1).
  double tail = 0.0;
  double pair_sum = 0.0;
  double single_sum = 0.0;
  for (std::size_t r = n; r-- > 0;) {
    const double ui = u[r];
    const double a = 2.0 * ui - 1.0;
    pair_sum += a * ui * (a + 2.0 * tail);
    single_sum += a * ui * ui * (3.0 - 2.0 * ui);
    tail += a;
  }
  const double nd = static_cast<double>(n);
  const double t = pair_sum / nd - single_sum / 3.0 + nd / 30.0;
  return std::max(t, 0.0);
}

double t_statistic_integral(const UnitSample& u, int nodes) {
  if (nodes < 64) {
    throw std::invalid_argument("t_statistic_integral needs at least 64 nodes");
  }
  const QuadratureRule rule = gauss_legendre(nodes);
  const std::vector<double> s = u.sorted();
  const std::size_t n = s.size();
  const double nd = static_cast<double>(n);

  // On (s_(i-1), s_(i)] the indicator sum covers exactly the points >= s_(i).
  double level = 0.0;
  for (double x : s) level += 2.0 * x - 1.0;
  level /= nd;

  double total = 0.0;
  double left = 0.0;
  std::size_t i = 0;
  while (i < n) {
    const double right = s[i];
    if (right > left) {
      total += integrate(rule, left, right, [level](double t) {
        const double d = level - t * (1.0 - t);
        return d * d;
      });
    }
    // Points equal to `right` leave the sum for t beyond it.
    while (i < n && s[i] == right) {
      level -= (2.0 * s[i] - 1.0) / nd;
      ++i;
    }
    left = right;
  }
  if (left < 1.0) {
    total += integrate(rule, left, 1.0, [](double t) {
      const double d = t * (1.0 - t);
      return d * d;
    });
  }
  return nd * total;
}

double empirical_process(const UnitSample& u, double t) {
  double sum = 0.0;
  for (double x : u.values()) {
    if (x >= t) sum += 2.0 * x - 1.0;
  }
  const double nd = static_cast<double>(u.size());
  return std::sqrt(nd) * (sum / nd - t * (1.0 - t));
}

}  // namespace ugof
