#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "pgossip/error.hpp"
#include "pgossip/matrix_builder.hpp"
#include "pgossip/numeric_oracle.hpp"
#include "pgossip/penta_analytic.hpp"
#include "test_util.hpp"

using namespace pgossip;
using oracle::Complex;

TEST(DeterminantShifted, Identity) {
  EXPECT_EQ(oracle::determinant_shifted(DenseMatrix::Identity(3, 3), 0.0), Complex(1.0));
}

TEST(DeterminantShifted, StochasticMatrixAtOne) {
  EXPECT_LT(std::abs(oracle::determinant_shifted(primitive_gossip_matrix(3, 0.5).entries, 1.0)),
            1e-15);
}

TEST(DeterminantShifted, SingularGivesZero) {
  EXPECT_EQ(oracle::determinant_shifted(DenseMatrix::Zero(4, 4), 0.0), Complex(0.0));
}

TEST(DeterminantShifted, AgreesWithEigenvalueProduct) {
  // det(W - lambda I) = prod (mu_k - lambda) over the closed-form spectrum.
  const Complex lambda(0.3, 0.1);
  const DenseMatrix w = primitive_gossip_matrix(5, 0.7).entries;
  const Spectrum s = analytic_eigenvalues(gossip_params(5, 0.7));
  Complex product = 1.0;
  for (Complex mu : s.eigenvalues) product *= mu - lambda;
  const Complex det = oracle::determinant_shifted(w, lambda);
  EXPECT_LT(std::abs(det - product) / std::abs(product), 1e-8);
  EXPECT_LT(std::abs(det - test::lu_determinant(w, lambda)) / std::abs(det), 1e-12);
}

TEST(DeterminantShifted, RandomMatricesAgainstEigenLu) {
  test::Lcg rng(17);
  for (int n = 1; n <= 30; ++n) {
    DenseMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1, 1);
    const Complex lambda(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Complex ref = test::lu_determinant(a, lambda);
    EXPECT_LT(std::abs(oracle::determinant_shifted(a, lambda) - ref),
              1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST(FullSpectrum, Swap) {
  const auto s = oracle::full_spectrum(test::rows({{0, 1}, {1, 0}}));
  EXPECT_LT(test::multiset_gap(s.eigenvalues, {1.0, -1.0}), 1e-14);
}

TEST(FullSpectrum, FourNodesAveraging) {
  const auto s = oracle::full_spectrum(primitive_gossip_matrix(4, 0.5).entries);
  EXPECT_LT(test::multiset_gap(s.eigenvalues, {1.0, 0.5, 0.0, 0.0}), 1e-10);
  EXPECT_LT(s.residual, 1e-12);
}

TEST(FullSpectrum, ComplexPairAtFourNodes) {
  const auto s = oracle::full_spectrum(primitive_gossip_matrix(4, 0.6).entries);
  int pairs = 0;
  for (Complex v : s.eigenvalues) {
    if (v.imag() > 1e-6) {
      ++pairs;
      EXPECT_NEAR(std::abs(v), 0.2, 1e-8);
      bool has_conjugate = false;
      for (Complex u : s.eigenvalues) has_conjugate |= u == std::conj(v);
      EXPECT_TRUE(has_conjugate);
    }
  }
  EXPECT_EQ(pairs, 1);
}

TEST(FullSpectrum, Errors) {
  EXPECT_THROW(oracle::full_spectrum(DenseMatrix::Zero(2, 3)), Error);
  DenseMatrix bad = DenseMatrix::Identity(3, 3);
  bad(1, 1) = std::nan("");
  EXPECT_THROW(oracle::full_spectrum(bad), Error);
}

TEST(EnumerateFailureExpectation, NoFailures) {
  EXPECT_TRUE(test::matrix_near(oracle::enumerate_failure_expectation(3, 0.0),
                                primitive_gossip_matrix(3, 0.5).entries, 1e-15));
}

TEST(EnumerateFailureExpectation, CornerEntry) {
  EXPECT_NEAR(oracle::enumerate_failure_expectation(4, 0.5)(0, 0), 0.75, 1e-15);
}

TEST(EnumerateFailureExpectation, MatchesClosedConstruction) {
  for (int n = 3; n <= 10; ++n) {
    for (double p : {0.0, 0.1, 0.3, 0.55, 0.9, 1.0}) {
      EXPECT_TRUE(test::matrix_near(oracle::enumerate_failure_expectation(n, p),
                                    expected_failure_matrix(n, p).entries, 1e-12))
          << "n=" << n << " p=" << p;
    }
  }
}

TEST(EnumerateFailureExpectation, SizeLimit) {
  try {
    oracle::enumerate_failure_expectation(13, 0.2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::size);
  }
}

TEST(SpectralGapNumeric, Examples) {
  EXPECT_NEAR(oracle::spectral_gap_numeric(primitive_gossip_matrix(3, 0.5).entries), 0.75,
              1e-12);
  EXPECT_NEAR(oracle::spectral_gap_numeric(DenseMatrix::Identity(5, 5)), 0.0, 1e-15);
  EXPECT_NEAR(oracle::spectral_gap_numeric(primitive_gossip_matrix(100, 0.9).entries), 0.009,
              5e-4);
}

TEST(SpectralGapNumeric, RejectsNonStochastic) {
  DenseMatrix a = primitive_gossip_matrix(4, 0.5).entries;
  a(0, 0) += 0.1;
  try {
    oracle::spectral_gap_numeric(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::contract_violation);
  }
}

TEST(SpectrumDistance, PairsMultisets) {
  EXPECT_EQ(oracle::spectrum_distance({1.0, 2.0}, {2.0, 1.0}), 0.0);
  EXPECT_NEAR(oracle::spectrum_distance({1.0, 1.0, 3.0}, {1.0, 3.0, 3.1}), 2.1, 1e-15);
  EXPECT_THROW(oracle::spectrum_distance({1.0}, {1.0, 2.0}), Error);
}
