#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "ugof/classical_tests.hpp"
#include "ugof/distributions.hpp"
#include "ugof/rng.hpp"

namespace {

using ugof::TestId;

std::vector<double> uniform_draws(ugof::RngStream& rng, int n) {
  std::vector<double> u(n);
  for (auto& v : u) v = rng.uniform();
  return u;
}

double stat(TestId id, const std::vector<double>& u) {
  return ugof::classical_statistic(id, ugof::UnitSample(u));
}

// n * int_0^1 (F_n(t) - t)^2 w(t) dt, integrated segment by segment between
// order statistics where F_n is constant.
template <class W>
double weighted_l2(std::vector<double> u, W weight, double shift = 0.0) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double total = 0.0;
  double lo = 0.0;
  for (std::size_t i = 0; i <= u.size(); ++i) {
    const double hi = i < u.size() ? u[i] : 1.0;
    const double fn = i / n;
    if (hi > lo) {
      auto f = [&](double t) {
        const double d = fn - t - shift;
        return d * d * weight(t);
      };
      total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 10,
                                                                             1e-13);
    }
    lo = hi;
  }
  return n * total;
}

double mean_deviation(std::vector<double> u) {
  // int_0^1 (F_n(t) - t) dt = 1/2 - mean(u).
  double m = 0.0;
  for (double v : u) m += v;
  return 0.5 - m / static_cast<double>(u.size());
}

TEST(Sherman, PerfectlySpacedIsZero) {
  for (int n : {1, 5, 30}) {
    std::vector<double> u;
    for (int j = 1; j <= n; ++j) u.push_back(static_cast<double>(j) / (n + 1));
    EXPECT_NEAR(stat(TestId::sherman, u), 0.0, 1e-15);
  }
}

TEST(QuesenberryMiller, EquallySpacedThree) {
  EXPECT_NEAR(stat(TestId::quesenberry_miller, {0.25, 0.5, 0.75}), 7.0 / 16.0, 1e-15);
}

TEST(QuesenberryMiller, EquallySpacedGeneral) {
  for (int n : {2, 7, 40}) {
    std::vector<double> u;
    for (int j = 1; j <= n; ++j) u.push_back(static_cast<double>(j) / (n + 1));
    EXPECT_NEAR(stat(TestId::quesenberry_miller, u),
                (2.0 * n + 1.0) / ((n + 1.0) * (n + 1.0)), 1e-14);
  }
}

TEST(SupTests, SinglePoint) {
  EXPECT_NEAR(stat(TestId::ks, {0.5}), 0.5, 1e-15);
  EXPECT_NEAR(stat(TestId::kuiper, {0.5}), 1.0, 1e-15);
}

TEST(SupTests, MatchDenseGridSupremum) {
  ugof::RngStream rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    auto u = uniform_draws(rng, 12);
    std::sort(u.begin(), u.end());
    // Suprema are attained at jump points; take both one-sided limits.
    double dp = 0.0, dm = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double right = static_cast<double>(i + 1) / u.size();
      const double left = static_cast<double>(i) / u.size();
      dp = std::max({dp, right - u[i], left - u[i]});
      dm = std::max({dm, u[i] - left, u[i] - right});
    }
    EXPECT_NEAR(stat(TestId::ks, u), std::max(dp, dm), 1e-15);
    EXPECT_NEAR(stat(TestId::kuiper, u), dp + dm, 1e-15);
  }
}

TEST(QuadraticTests, CramerVonMisesMatchesIntegral) {
  ugof::RngStream rng(11);
  for (int n : {1, 3, 25}) {
    const auto u = uniform_draws(rng, n);
    EXPECT_NEAR(stat(TestId::cvm, u), weighted_l2(u, [](double) { return 1.0; }), 1e-11);
  }
}

TEST(QuadraticTests, WatsonMatchesIntegral) {
  ugof::RngStream rng(12);
  for (int n : {2, 10, 40}) {
    const auto u = uniform_draws(rng, n);
    const double shift = mean_deviation(u);
    EXPECT_NEAR(stat(TestId::watson, u),
                weighted_l2(u, [](double) { return 1.0; }, shift), 1e-11);
  }
}

TEST(QuadraticTests, AndersonDarlingMatchesIntegral) {
  ugof::RngStream rng(13);
  for (int n : {1, 4, 30}) {
    const auto u = uniform_draws(rng, n);
    const double oracle = weighted_l2(u, [](double t) { return 1.0 / (t * (1.0 - t)); });
    EXPECT_NEAR(stat(TestId::ad, u), oracle, 1e-9 * std::max(1.0, oracle));
  }
}

TEST(Frosini, HandValue) {
  // n = 2: (|0.1 - 0.25| + |0.9 - 0.75|) / sqrt(2).
  EXPECT_NEAR(stat(TestId::frosini, {0.9, 0.1}), 0.3 / std::sqrt(2.0), 1e-15);
}

TEST(Zhang, HandValue) {
  // n = 1: log((1/u - 1) / ((0.5 / 0.25) - 1))^2.
  const double u = 0.2;
  const double r = std::log(1.0 / u - 1.0);
  EXPECT_NEAR(stat(TestId::zhang, {u}), r * r, 1e-14);
}

TEST(Clamping, ExactBoundaryValuesStayFinite) {
  const std::vector<double> u = {0.0, 0.3, 0.6, 1.0};
  EXPECT_TRUE(std::isfinite(stat(TestId::ad, u)));
  EXPECT_TRUE(std::isfinite(stat(TestId::zhang, u)));
}

TEST(Dispatch, TnIsNotClassical) {
  EXPECT_THROW(stat(TestId::t_n, {0.5}), std::invalid_argument);
  EXPECT_THROW(ugof::statistic_sorted(TestId::ks, {}), std::invalid_argument);
}

TEST(Invariants, PermutationInvariance) {
  ugof::RngStream rng(21);
  std::mt19937_64 shuffler(3);
  for (int rep = 0; rep < 20; ++rep) {
    auto u = uniform_draws(rng, 17);
    auto v = u;
    std::shuffle(v.begin(), v.end(), shuffler);
    const auto a = ugof::classical_battery(ugof::UnitSample(u));
    const auto b = ugof::classical_battery(ugof::UnitSample(v));
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].statistic, b[k].statistic);
  }
}

TEST(Invariants, RangeBounds) {
  ugof::RngStream rng(99);
  for (int rep = 0; rep < 10000; ++rep) {
    const int n = 1 + static_cast<int>(rng.uniform() * 60);
    const auto u = uniform_draws(rng, n);
    const double s = stat(TestId::sherman, u);
    const double k = stat(TestId::kuiper, u);
    const double ks = stat(TestId::ks, u);
    const double qm = stat(TestId::quesenberry_miller, u);
    EXPECT_GE(s, 0.0);
    EXPECT_LT(s, 1.0);
    EXPECT_GT(k, 0.0);
    EXPECT_LE(k, 2.0);
    EXPECT_GT(ks, 0.0);
    EXPECT_LE(ks, 1.0);
    EXPECT_GT(qm, 0.0);
    EXPECT_LE(qm, 1.0);
    if (::testing::Test::HasFailure()) break;
  }
}

TEST(Battery, TenOutcomesInOrder) {
  const auto out = ugof::classical_battery(ugof::UnitSample({0.1, 0.4, 0.8}));
  ASSERT_EQ(out.size(), 10u);
  for (std::size_t k = 0; k < out.size(); ++k) {
    EXPECT_EQ(out[k].test_id, ugof::kAllTests[k]);
    EXPECT_FALSE(out[k].error.has_value());
  }
}

TEST(Battery, FiniteOnBetaTwoThreeDraws) {
  const auto spec = ugof::parse_alternative("beta(2,3)");
  ugof::RngStream rng(2023);
  std::vector<double> buf(50);
  for (int rep = 0; rep < 1000; ++rep) {
    ugof::sample_into(spec, buf, rng);
    for (const auto& o : ugof::classical_battery(ugof::UnitSample(buf))) {
      ASSERT_TRUE(std::isfinite(o.statistic)) << ugof::test_name(o.test_id);
    }
  }
}

}  // namespace
