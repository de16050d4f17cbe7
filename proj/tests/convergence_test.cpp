#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pgossip/convergence.hpp"
#include "pgossip/error.hpp"
#include "pgossip/matrix_builder.hpp"
#include "pgossip/numeric_oracle.hpp"
#include "test_util.hpp"

using namespace pgossip;

namespace {

// 1 - |lambda_2| straight from Eigen, with no library code in between.
double eigen_gap(const DenseMatrix& m) {
  auto v = test::eigen_spectrum(m);
  std::size_t one = 0;
  for (std::size_t k = 1; k < v.size(); ++k)
    if (std::abs(v[k] - 1.0) < std::abs(v[one] - 1.0)) one = k;
  v.erase(v.begin() + static_cast<long>(one));
  double worst = 0;
  for (auto x : v) worst = std::max(worst, std::abs(x));
  return 1 - worst;
}

}  // namespace

TEST(RateWeighted, AveragingFourNodes) {
  const RateResult r = rate_weighted(4, 0.5);
  EXPECT_NEAR(r.lambda2_modulus, 0.5, 1e-12);
  EXPECT_NEAR(r.rate, 0.5, 1e-12);
  EXPECT_EQ(r.regime, Regime::real_roots);
}

TEST(RateWeighted, ComplexPairFourNodes) {
  const RateResult r = rate_weighted(4, 0.6);
  EXPECT_EQ(r.regime, Regime::complex_pair);
  EXPECT_NEAR(r.lambda2_modulus, 0.2, 1e-12);
  EXPECT_NEAR(r.rate, 0.8, 1e-12);
}

TEST(RateWeighted, FifteenNodes) { EXPECT_NEAR(rate_weighted(15, 0.8).rate, 0.2015, 5e-4); }

TEST(RateWeighted, AveragingClosedForm) {
  for (int n = 3; n <= 200; ++n) {
    const double s = std::sin((n - 2) * std::numbers::pi / (2 * n));
    EXPECT_NEAR(rate_weighted(n, 0.5).rate, 1 - s * s, 1e-12);
  }
}

TEST(RateWeighted, MatchesEigenSolver) {
  for (int n = 3; n <= 60; ++n) {
    for (int k = 1; k <= 19; ++k) {
      const double w = 0.05 * k;
      EXPECT_NEAR(rate_weighted(n, w).rate, eigen_gap(primitive_gossip_matrix(n, w).entries),
                  1e-8)
          << "n=" << n << " w=" << w;
    }
  }
}

TEST(RateWeighted, DecreasesWithOrder) {
  for (double w : {0.5, 0.7, 0.9}) {
    double prev = 2.0;
    for (int n = 3; n <= 512; ++n) {
      const double r = rate_weighted(n, w).rate;
      EXPECT_LE(r, prev + 1e-12) << "n=" << n << " w=" << w;
      prev = r;
    }
  }
}

TEST(RateWeighted, ComplexRegimePlateau) {
  for (int n = 3; n <= 40; ++n) {
    for (double w : {0.55, 0.7, 0.85, 0.95}) {
      const RateResult r = rate_weighted(n, w);
      if (r.regime == Regime::complex_pair) EXPECT_NEAR(r.rate, 2 - 2 * w, 1e-12);
    }
  }
}

TEST(RateWeighted, Errors) {
  EXPECT_THROW(rate_weighted(4, 0.0), Error);
  EXPECT_THROW(rate_weighted(4, 1.0), Error);
  EXPECT_THROW(rate_weighted(2, 0.5), Error);
}

TEST(RateLinkFailure, Endpoints) {
  for (int n = 3; n <= 50; ++n) {
    EXPECT_NEAR(rate_link_failure(n, 0.0).rate, rate_weighted(n, 0.5).rate, 1e-12);
    EXPECT_EQ(rate_link_failure(n, 1.0).rate, 0.0);
  }
  EXPECT_THROW(rate_link_failure(5, 1.2), Error);
}

TEST(RateLinkFailure, MatchesExpectedMatrixSpectrum) {
  EXPECT_NEAR(rate_link_failure(6, 0.3).rate,
              eigen_gap(expected_failure_matrix(6, 0.3).entries), 1e-8);
  for (int n = 3; n <= 50; ++n) {
    for (int k = 0; k <= 10; ++k) {
      const double p = 0.1 * k;
      EXPECT_NEAR(rate_link_failure(n, p).rate,
                  eigen_gap(expected_failure_matrix(n, p).entries), 1e-8)
          << "n=" << n << " p=" << p;
    }
  }
}

TEST(RateLinkFailure, DecreasesWithFailureProbability) {
  for (int n : {4, 9, 30}) {
    double prev = 2.0;
    for (int k = 0; k <= 100; ++k) {
      const double r = rate_link_failure(n, 0.01 * k).rate;
      EXPECT_LE(r, prev + 1e-12);
      prev = r;
    }
  }
}

TEST(SlowModeSine, Values) {
  EXPECT_NEAR(slow_mode_sine(4), std::sin(std::numbers::pi / 4), 1e-15);
  EXPECT_THROW(slow_mode_sine(2), Error);
}

TEST(OptimalWeight, TableRows) {
  const auto grid = default_weight_grid();
  ASSERT_EQ(grid.size(), 9u);
  const OptimalWeight eight = optimal_weight(8, grid);
  EXPECT_NEAR(eight.w, 0.8, 1e-12);
  EXPECT_NEAR(eight.result.rate, 0.4, 1e-6);
  const OptimalWeight sixteen = optimal_weight(16, grid);
  EXPECT_NEAR(sixteen.w, 0.9, 1e-12);
  EXPECT_NEAR(sixteen.result.rate, 0.2, 1e-6);
  const OptimalWeight hundred = optimal_weight(100, grid);
  EXPECT_NEAR(hundred.w, 0.9, 1e-12);
  EXPECT_NEAR(hundred.result.rate, 0.009, 5e-4);
  EXPECT_THROW(optimal_weight(8, {}), Error);
}

TEST(OptimalWeight, RefinementNeverLosesRate) {
  for (int n = 4; n <= 30; ++n) {
    const double coarse = optimal_weight(n, default_weight_grid()).result.rate;
    const OptimalWeight fine = refine_optimal_weight(n, 0.1, 2);
    EXPECT_GE(fine.result.rate, coarse - 1e-12);
    EXPECT_GT(fine.w, 0.0);
    EXPECT_LT(fine.w, 1.0);
  }
}

TEST(RelativeError, Examples) {
  EXPECT_NEAR(relative_error(100), 0.891, 2e-3);
  EXPECT_NEAR(relative_error(1000), 0.89, 0.02);
  for (int n = 100; n <= 1000; n += 50) {
    const double re = relative_error(n);
    EXPECT_GE(re, 0.87);
    EXPECT_LE(re, 0.91);
  }
}

// While R(0.9) sits on its 0.2 plateau the gain over w = 1/2 keeps growing.
TEST(RelativeError, SmallNetworksIncrease) {
  double prev = -10.0;
  for (int n = 3; n <= 28; ++n) {
    const double re = relative_error(n);
    EXPECT_GE(re, prev - 1e-12);
    prev = re;
  }
}
