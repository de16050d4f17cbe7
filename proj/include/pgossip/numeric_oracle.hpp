#pragma once

#include <complex>
#include <vector>

#include "pgossip/matrix_builder.hpp"

// Ground-truth engines. Nothing here depends on the closed-form code, so an
// agreement between the two is evidence rather than a tautology.
namespace pgossip::oracle {

using Complex = std::complex<double>;

struct OracleSpectrum {
  std::vector<Complex> eigenvalues;
  /// max_k ||A v_k - lambda_k v_k|| / (||A|| ||v_k||)
  double residual = 0.0;
};

/// det(A - lambda I) by Gaussian elimination with partial pivoting.
Complex determinant_shifted(const DenseMatrix& a, Complex lambda);

/// All eigenvalues of a general real matrix (real Schur form via Hessenberg
/// reduction and Francis double-shift QR, at most 100 n sweeps). Complex
/// eigenvalues come out as exact conjugate pairs.
OracleSpectrum full_spectrum(const DenseMatrix& a);

/// Expected one-period matrix, summed over every one of the 2^(n-1) link
/// failure patterns. Limited to n <= 12.
DenseMatrix enumerate_failure_expectation(int n, double p);

/// 1 - (largest modulus after removing the eigenvalue nearest to 1).
double spectral_gap_numeric(const DenseMatrix& a);

/// Greedy nearest-neighbour pairing of two equal-size multisets; returns the
/// largest distance between paired elements.
double spectrum_distance(const std::vector<Complex>& a,
                         const std::vector<Complex>& b);

}  // namespace pgossip::oracle
