#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <gtest/gtest.h>

#include "ugof/rng.hpp"
#include "ugof/t_statistic.hpp"

namespace {

using ugof::UnitSample;

// Oracle: n * int_0^1 (E_n(t) - t(1-t))^2 dt evaluated piecewise between
// the sorted sample points with a fixed 10-point Gauss rule, the indicator
// sum recomputed from scratch at every node.
double integral_oracle(const std::vector<double>& u) {
  const double n = static_cast<double>(u.size());
  auto integrand = [&](double t) {
    double e = 0.0;
    for (double v : u) {
      if (v >= t) e += 2.0 * v - 1.0;
    }
    const double d = e / n - t * (1.0 - t);
    return d * d;
  };
  std::vector<double> cuts = u;
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) {
      total += boost::math::quadrature::gauss<double, 10>::integrate(
          integrand, cuts[i], cuts[i + 1]);
    }
  }
  return n * total;
}

std::vector<double> random_unit(ugof::RngStream& rng, int n) {
  std::vector<double> u(n);
  for (double& v : u) v = rng.uniform();
  return u;
}

TEST(TStatistic, SinglePointAtHalf) {
  EXPECT_NEAR(ugof::t_statistic(UnitSample({0.5})), 1.0 / 30.0, 1e-15);
  EXPECT_NEAR(ugof::t_statistic_integral(UnitSample({0.5})), 1.0 / 30.0, 1e-15);
}

TEST(TStatistic, TwoPointHandValue) {
  const UnitSample u({0.25, 0.75});
  EXPECT_NEAR(ugof::t_statistic(u), 7.0 / 480.0, 1e-15);
  EXPECT_NEAR(ugof::t_statistic_integral(u), 7.0 / 480.0, 1e-15);
}

TEST(TStatistic, AllOnesBoundarySample) {
  // E_n(t) = 1 on (0,1], so T_n = n * int (1 - t(1-t))^2 = 7n/10.
  for (int n : {1, 3, 17}) {
    const UnitSample u(std::vector<double>(n, 1.0));
    EXPECT_NEAR(ugof::t_statistic(u), 0.7 * n, 1e-12);
    EXPECT_NEAR(ugof::t_statistic_integral(u), ugof::t_statistic(u), 1e-10);
  }
}

TEST(TStatistic, AllZerosBoundarySample) {
  // Only t = 0 sees the points, so E_n vanishes almost everywhere.
  const UnitSample u(std::vector<double>(5, 0.0));
  EXPECT_NEAR(ugof::t_statistic(u), 5.0 / 30.0, 1e-13);
  EXPECT_NEAR(ugof::t_statistic_integral(u), 5.0 / 30.0, 1e-13);
}

TEST(TStatistic, TwentyRandomAgainstIntegral) {
  ugof::RngStream rng(42);
  const UnitSample u(random_unit(rng, 20));
  EXPECT_NEAR(ugof::t_statistic(u), ugof::t_statistic_integral(u), 1e-8);
}

TEST(TStatistic, OracleEquivalenceThousandSamples) {
  ugof::RngStream rng(7);
  double worst = 0.0;
  double worst_oracle = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int n = 1 + static_cast<int>(rng() % 100);
    const auto v = random_unit(rng, n);
    const UnitSample u(v);
    const double closed = ugof::t_statistic(u);
    worst = std::max(worst, std::abs(closed - ugof::t_statistic_integral(u)));
    if (k % 10 == 0) {
      worst_oracle = std::max(worst_oracle, std::abs(closed - integral_oracle(v)));
    }
  }
  EXPECT_LT(worst, 1e-8);
  EXPECT_LT(worst_oracle, 1e-8);
}

TEST(TStatistic, SortedFormMatchesDoubleSum) {
  ugof::RngStream rng(3);
  for (int k = 0; k < 200; ++k) {
    auto v = random_unit(rng, 1 + k % 60);
    const double direct = ugof::t_statistic(UnitSample(v));
    std::sort(v.begin(), v.end());
    EXPECT_NEAR(ugof::t_statistic_sorted(v), direct, 1e-12);
  }
}

TEST(TStatistic, TiesHandled) {
  const UnitSample u({0.3, 0.3, 0.3, 0.8, 0.8});
  EXPECT_NEAR(ugof::t_statistic(u), ugof::t_statistic_integral(u), 1e-12);
  EXPECT_NEAR(ugof::t_statistic(u),
              integral_oracle({0.3, 0.3, 0.3, 0.8, 0.8}), 1e-12);
}

TEST(TStatistic, PermutationInvariance) {
  ugof::RngStream rng(11);
  std::mt19937_64 shuffler(5);
  for (int k = 0; k < 100; ++k) {
    auto v = random_unit(rng, 2 + k % 40);
    const double a = ugof::t_statistic(UnitSample(v));
    std::shuffle(v.begin(), v.end(), shuffler);
    EXPECT_NEAR(ugof::t_statistic(UnitSample(v)), a, 1e-12);
  }
}

TEST(TStatistic, NonNegative) {
  ugof::RngStream rng(13);
  for (int k = 0; k < 2000; ++k) {
    const auto v = random_unit(rng, 1 + k % 30);
    EXPECT_GE(ugof::t_statistic(UnitSample(v)), -1e-12);
  }
}

TEST(TStatistic, IntegralNeedsEnoughNodes) {
  EXPECT_THROW(ugof::t_statistic_integral(UnitSample({0.5}), 63),
               std::invalid_argument);
}

TEST(EmpiricalProcess, HandValues) {
  EXPECT_NEAR(ugof::empirical_process(UnitSample({0.5}), 0.25), -0.1875, 1e-15);
  EXPECT_NEAR(ugof::empirical_process(UnitSample({1.0}), 0.5), 0.75, 1e-15);
}

TEST(EmpiricalProcess, SquaredNormIsStatistic) {
  ugof::RngStream rng(21);
  const auto v = random_unit(rng, 15);
  const UnitSample u(v);
  std::vector<double> cuts = v;
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  double norm2 = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    norm2 += boost::math::quadrature::gauss<double, 10>::integrate(
        [&](double t) {
          const double z = ugof::empirical_process(u, t);
          return z * z;
        },
        cuts[i], cuts[i + 1]);
  }
  EXPECT_NEAR(norm2, ugof::t_statistic(u), 1e-12);
}

}  // namespace
