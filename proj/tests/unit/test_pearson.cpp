#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "ugof/null_theory.hpp"
#include "ugof/pearson.hpp"

namespace {

using ugof::PearsonMoments;
using ugof::PearsonType;

struct Measured {
  double mean, variance, skewness, excess_kurtosis, mass;
};

// Moments of the fitted density by independent numerical integration,
// split at multiples of the input standard deviation around the mean.
Measured integrate_moments(const ugof::PearsonFit& fit) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double mu = fit.source.mean, sd = std::sqrt(fit.source.variance);
  std::vector<double> cuts = {fit.lower};
  for (double k : {-60.0, -20.0, -8.0, -3.0, -1.0, 0.0, 1.0, 3.0, 8.0, 20.0, 60.0}) {
    const double c = mu + k * sd;
    if (c > fit.lower && c < fit.upper) cuts.push_back(c);
  }
  cuts.push_back(fit.upper);
  auto moment = [&](auto g) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      total += ts.integrate(
          [&](double x) {
            const double f = ugof::pearson_density(fit, x);
            return f == 0.0 ? 0.0 : g(x) * f;
          },
          cuts[i], cuts[i + 1], 1e-14);
    }
    return total;
  };
  const double mass = moment([](double) { return 1.0; });
  const double mean = moment([](double x) { return x; });
  auto central = [&](int k) {
    return moment([&](double x) { return std::pow(x - mean, k); });
  };
  const double m2 = central(2), m3 = central(3), m4 = central(4);
  return {mean, m2, m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0, mass};
}

void expect_round_trip(PearsonMoments m, PearsonType expected) {
  auto fit = ugof::pearson_fit(m);
  ASSERT_EQ(fit.type, expected) << ugof::pearson_type_name(fit.type);
  // Move a finite endpoint to the origin, where doubles resolve the
  // integrable singularity of the density; the fit is location equivariant.
  const double shift = std::isfinite(fit.lower)   ? fit.lower
                       : std::isfinite(fit.upper) ? fit.upper
                                                  : 0.0;
  m.mean -= shift;
  fit = ugof::pearson_fit(m);
  const auto got = integrate_moments(fit);
  EXPECT_NEAR(got.mass, 1.0, 1e-8);
  EXPECT_NEAR(got.mean, m.mean, 1e-8);
  EXPECT_NEAR(got.variance, m.variance, 1e-8);
  EXPECT_NEAR(got.skewness, m.skewness, 1e-8);
  EXPECT_NEAR(got.excess_kurtosis, m.excess_kurtosis, 1e-8);
}

TEST(PearsonFit, NormalPoint) {
  const auto fit = ugof::pearson_fit(PearsonMoments{1.0, 4.0, 0.0, 0.0});
  EXPECT_EQ(fit.type, PearsonType::normal);
  EXPECT_NEAR(ugof::pearson_cdf(fit, 1.0), 0.5, 1e-12);
  EXPECT_NEAR(ugof::pearson_quantile(fit, 0.975), 1.0 + 2.0 * 1.959963984540054, 1e-7);
}

TEST(PearsonFit, RoundTripTypeI) {
  expect_round_trip({0.3, 0.02, 0.5, 0.0}, PearsonType::type_i);
}

TEST(PearsonFit, RoundTripTypeII) {
  expect_round_trip({0.0, 1.0, 0.0, -1.0}, PearsonType::type_ii);
}

TEST(PearsonFit, RoundTripTypeIII) {
  expect_round_trip({2.0, 0.5, 1.0, 1.5}, PearsonType::type_iii);
}

TEST(PearsonFit, RoundTripTypeIV) {
  expect_round_trip({0.0, 1.0, 0.5, 2.0}, PearsonType::type_iv);
}

TEST(PearsonFit, RoundTripTypeIVNegativeSkew) {
  expect_round_trip({-1.0, 0.3, -0.7, 3.0}, PearsonType::type_iv);
}

TEST(PearsonFit, RoundTripTypeV) {
  // On the type V line with beta1 = 1: 31 b2^2 - 174 b2 + 99 = 0.
  const double b2 = (174.0 + std::sqrt(174.0 * 174.0 - 4.0 * 31.0 * 99.0)) / 62.0;
  expect_round_trip({0.5, 0.1, 1.0, b2 - 3.0}, PearsonType::type_v);
}

TEST(PearsonFit, RoundTripTypeVI) {
  expect_round_trip({0.0, 1.0, 1.0, 1.7}, PearsonType::type_vi);
}

TEST(PearsonFit, RoundTripTypeVII) {
  expect_round_trip({0.0, 1.0, 0.0, 1.0}, PearsonType::type_vii);
}

TEST(PearsonFit, RoundTripLimitLaw) {
  const auto m = ugof::moments_from_cumulants(ugof::cumulants_closed());
  expect_round_trip(m, PearsonType::type_vi);
}

TEST(PearsonFit, LimitLawMoments) {
  const auto m = ugof::moments_from_cumulants(ugof::cumulants_closed());
  EXPECT_NEAR(m.mean, 2.0 / 15.0, 1e-15);
  EXPECT_NEAR(m.variance, 109.0 / 4050.0, 1e-15);
  EXPECT_NEAR(m.skewness, 2.8094, 1e-4);
  EXPECT_NEAR(m.excess_kurtosis, 11.889, 1e-3);
}

TEST(PearsonFit, LimitQuantiles) {
  const auto fit = ugof::pearson_fit(ugof::cumulants_closed());
  EXPECT_NEAR(ugof::pearson_quantile(fit, 0.90), 0.332, 0.002);
  EXPECT_NEAR(ugof::pearson_quantile(fit, 0.95), 0.462, 0.002);
  EXPECT_NEAR(ugof::pearson_quantile(fit, 0.99), 0.785, 0.002);
}

TEST(PearsonFit, LocationEquivariance) {
  PearsonMoments m = ugof::moments_from_cumulants(ugof::cumulants_closed());
  const auto base = ugof::pearson_fit(m);
  m.mean += 3.25;
  const auto shifted = ugof::pearson_fit(m);
  for (double p : {0.1, 0.5, 0.95}) {
    EXPECT_NEAR(ugof::pearson_quantile(shifted, p), ugof::pearson_quantile(base, p) + 3.25,
                2e-8);
  }
}

TEST(PearsonFit, RejectsInfeasibleRegion) {
  EXPECT_THROW(ugof::pearson_fit(PearsonMoments{0.0, 1.0, 1.0, -1.5}), std::domain_error);
  EXPECT_THROW(ugof::pearson_fit(PearsonMoments{0.0, 1.0, 0.0, -2.5}), std::domain_error);
  EXPECT_THROW(ugof::pearson_fit(PearsonMoments{0.0, 0.0, 0.0, 0.0}), std::domain_error);
}

TEST(PearsonFit, CdfMonotoneAndBounded) {
  for (const PearsonMoments& m :
       {PearsonMoments{0.0, 1.0, 0.5, 2.0}, PearsonMoments{0.3, 0.02, 0.5, 0.0},
        ugof::moments_from_cumulants(ugof::cumulants_closed())}) {
    const auto fit = ugof::pearson_fit(m);
    double prev = 0.0;
    const double sd = std::sqrt(m.variance);
    for (int i = 0; i <= 400; ++i) {
      const double x = m.mean + sd * (-6.0 + 24.0 * i / 400.0);
      const double v = ugof::pearson_cdf(fit, x);
      EXPECT_GE(v, prev - 1e-12);
      EXPECT_LE(v, 1.0);
      prev = v;
    }
  }
}

TEST(PearsonFit, QuantileInvertsCdf) {
  const auto fit = ugof::pearson_fit(PearsonMoments{0.0, 1.0, 0.5, 2.0});
  for (double p : {0.01, 0.3, 0.9, 0.999}) {
    EXPECT_NEAR(ugof::pearson_cdf(fit, ugof::pearson_quantile(fit, p)), p, 1e-7);
  }
  EXPECT_THROW(ugof::pearson_quantile(fit, 0.0), std::domain_error);
  EXPECT_THROW(ugof::pearson_quantile(fit, 1.0), std::domain_error);
}

}  // namespace
