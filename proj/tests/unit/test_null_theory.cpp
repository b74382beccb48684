#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ugof/null_theory.hpp"

namespace {

constexpr double kK1 = 2.0 / 15.0;
constexpr double kK2 = 109.0 / 4050.0;
constexpr double kK3 = 502883.0 / 40540500.0;
constexpr double kK4 = 200311667.0 / 23260111875.0;

// Covariance of (2U-1)1{U>=s} and (2U-1)1{U>=t} for uniform U, by quadrature.
double kernel_oracle(double s, double t) {
  const double hi = std::max(s, t);
  const auto rule = ugof::gauss_legendre(8);
  const double second =
      ugof::integrate(rule, hi, 1.0, [](double u) { return (2 * u - 1) * (2 * u - 1); });
  return second - s * (1 - s) * t * (1 - t);
}

TEST(KernelKz, CentreValue) { EXPECT_NEAR(ugof::kernel_kz(0.5, 0.5), 5.0 / 48.0, 1e-15); }

TEST(KernelKz, Symmetric) {
  for (double s : {0.05, 0.3, 0.61, 0.99}) {
    for (double t : {0.0, 0.2, 0.5, 0.77, 1.0}) {
      EXPECT_DOUBLE_EQ(ugof::kernel_kz(s, t), ugof::kernel_kz(t, s));
    }
  }
}

TEST(KernelKz, MatchesCovarianceOracle) {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double s = i / 20.0, t = j / 20.0;
      EXPECT_NEAR(ugof::kernel_kz(s, t), kernel_oracle(s, t), 1e-14);
    }
  }
}

TEST(Cumulants, ClosedFormValues) {
  const auto c = ugof::cumulants_closed();
  EXPECT_DOUBLE_EQ(c.k1, kK1);
  EXPECT_DOUBLE_EQ(c.k2, kK2);
  EXPECT_DOUBLE_EQ(c.k3, kK3);
  EXPECT_DOUBLE_EQ(c.k4, kK4);
  EXPECT_NEAR(c.skewness(), kK3 / std::pow(kK2, 1.5), 1e-15);
  EXPECT_NEAR(c.excess_kurtosis(), kK4 / (kK2 * kK2), 1e-14);
}

TEST(Cumulants, NumericFirstMatches) {
  const auto c = ugof::cumulants_numeric(512);
  EXPECT_NEAR(c.k1, kK1, 1e-10);
}

TEST(Cumulants, NumericHigherMatch) {
  const auto c = ugof::cumulants_numeric(512);
  EXPECT_NEAR(c.k3, kK3, 1e-6);
  EXPECT_NEAR(c.k4, kK4, 1e-6);
}

TEST(Cumulants, QuadratureLowOrderMatch) {
  const auto c = ugof::low_cumulants_quadrature(128);
  EXPECT_NEAR(c.k1, kK1, 1e-10);
  EXPECT_NEAR(c.k2, kK2, 1e-10);
}

TEST(Cumulants, OrderGuards) {
  EXPECT_THROW(ugof::cumulants_numeric(64), std::invalid_argument);
  EXPECT_THROW(ugof::nystrom_spectrum(32), std::invalid_argument);
}

class Spectrum : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    s512_ = new ugof::NystromSpectrum(ugof::nystrom_spectrum(512));
    s256_ = new ugof::NystromSpectrum(ugof::nystrom_spectrum(256));
  }
  static void TearDownTestSuite() {
    delete s512_;
    delete s256_;
  }
  static ugof::NystromSpectrum* s512_;
  static ugof::NystromSpectrum* s256_;
};
ugof::NystromSpectrum* Spectrum::s512_ = nullptr;
ugof::NystromSpectrum* Spectrum::s256_ = nullptr;

TEST_F(Spectrum, SizeAndOrdering) {
  ASSERT_EQ(s512_->eigenvalues.size(), 512u);
  EXPECT_EQ(s512_->order, 512);
  EXPECT_TRUE(std::is_sorted(s512_->eigenvalues.rbegin(), s512_->eigenvalues.rend()));
}

TEST_F(Spectrum, NonNegative) {
  for (double l : s512_->eigenvalues) EXPECT_GE(l, -1e-10);
}

TEST_F(Spectrum, SumIsFirstCumulant) {
  double sum = 0.0;
  for (double l : s512_->eigenvalues) sum += l;
  EXPECT_NEAR(sum, kK1, 1e-8);
}

TEST_F(Spectrum, SumOfSquaresIsSecondCumulant) {
  double sum = 0.0;
  for (double l : s512_->eigenvalues) sum += l * l;
  EXPECT_NEAR(2.0 * sum, kK2, 1e-8);
}

TEST_F(Spectrum, LeadingEigenvalueStable) {
  EXPECT_NEAR(s512_->eigenvalues[0], s256_->eigenvalues[0], 1e-6);
  EXPECT_NEAR(s512_->eigenvalues[0], 0.115734344, 1e-6);
}

}  // namespace
