#include "pgossip/numeric_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <sstream>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "pgossip/error.hpp"

namespace pgossip::oracle {
namespace {

// FNV-1a over the raw entries; identifies a matrix in diagnostics.
std::uint64_t fingerprint(const DenseMatrix& a) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    std::uint64_t bits = 0;
    const double v = a.data()[k];
    std::memcpy(&bits, &v, sizeof bits);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (bits >> (8 * byte)) & 0xffU;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

// Left-multiplies `m` by the averaging matrix of edge (row, row + 1).
void average_rows(DenseMatrix& m, int row) {
  const Eigen::RowVectorXd mean = 0.5 * (m.row(row) + m.row(row + 1));
  m.row(row) = mean;
  m.row(row + 1) = mean;
}

}  // namespace

Complex determinant_shifted(const DenseMatrix& a, Complex lambda) {
  const Eigen::Index n = a.rows();
  require(a.cols() == n, ErrorCode::argument, "determinant needs a square matrix");
  Eigen::MatrixXcd m = a.cast<Complex>();
  m.diagonal().array() -= lambda;

  Complex det = 1.0;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    double best = std::abs(m(col, col));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > best) {
        best = std::abs(m(r, col));
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const Complex factor = m(r, col) / m(col, col);
      if (factor == Complex{}) continue;
      m.row(r).tail(n - col) -= factor * m.row(col).tail(n - col);
    }
  }
  return det;
}

OracleSpectrum full_spectrum(const DenseMatrix& a) {
  const Eigen::Index n = a.rows();
  require(a.cols() == n, ErrorCode::argument, "spectrum needs a square matrix");
  require(n <= 2000, ErrorCode::size, "full_spectrum is limited to n <= 2000");
  require(a.allFinite(), ErrorCode::argument, "matrix has non-finite entries");

  OracleSpectrum out;
  if (n == 0) return out;

  Eigen::EigenSolver<DenseMatrix> solver;
  solver.setMaxIterations(100 * n);
  solver.compute(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigensolver did not converge within " << 100 * n
        << " iterations (n=" << n << ", matrix seed 0x" << std::hex
        << fingerprint(a) << ")";
    fail(ErrorCode::non_convergence, msg.str());
  }

  const Eigen::VectorXcd values = solver.eigenvalues();
  const Eigen::MatrixXcd vectors = solver.eigenvectors();
  out.eigenvalues.assign(values.data(), values.data() + n);

  const double norm_a = std::max(a.norm(), 1e-300);
  const Eigen::MatrixXcd ac = a.cast<Complex>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::VectorXcd v = vectors.col(k);
    const double denom = norm_a * std::max(v.norm(), 1e-300);
    out.residual =
        std::max(out.residual, (ac * v - values(k) * v).norm() / denom);
  }
  return out;
}

DenseMatrix enumerate_failure_expectation(int n, double p) {
  require(n >= 2, ErrorCode::argument, "enumeration needs at least 2 nodes");
  require(n <= 12, ErrorCode::size,
          "exhaustive failure enumeration is limited to n <= 12");
  require(p >= 0.0 && p <= 1.0, ErrorCode::argument,
          "failure probability must lie in [0,1]");

  const int edges = n - 1;  // edge k joins nodes k and k+1 (0-based)
  DenseMatrix total = DenseMatrix::Zero(n, n);
  for (std::uint32_t failed = 0; failed < (1U << edges); ++failed) {
    const int nfailed = std::popcount(failed);
    const double weight =
        std::pow(p, nfailed) * std::pow(1.0 - p, edges - nfailed);
    if (weight == 0.0) continue;

    DenseMatrix m = DenseMatrix::Identity(n, n);
    // First round: edges (2,3), (4,5), ...; second round: (1,2), (3,4), ...
    for (int first : {1, 0}) {
      for (int k = first; k < edges; k += 2) {
        if (!((failed >> k) & 1U)) average_rows(m, k);
      }
    }
    total += weight * m;
  }
  return total;
}

double spectral_gap_numeric(const DenseMatrix& a) {
  const Eigen::Index n = a.rows();
  require(n >= 1 && a.cols() == n, ErrorCode::argument,
          "spectral gap needs a non-empty square matrix");
  const double row_dev = (a.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double col_dev = (a.colwise().sum().array() - 1.0).abs().maxCoeff();
  require(row_dev <= 1e-9 && col_dev <= 1e-9, ErrorCode::contract_violation,
          "spectral gap needs a doubly stochastic matrix");

  const OracleSpectrum s = full_spectrum(a);
  const auto unit = std::min_element(
      s.eigenvalues.begin(), s.eigenvalues.end(),
      [](Complex x, Complex y) { return std::abs(x - 1.0) < std::abs(y - 1.0); });
  double second = 0.0;
  for (auto it = s.eigenvalues.begin(); it != s.eigenvalues.end(); ++it) {
    if (it != unit) second = std::max(second, std::abs(*it));
  }
  return 1.0 - second;
}

double spectrum_distance(const std::vector<Complex>& a,
                         const std::vector<Complex>& b) {
  require(a.size() == b.size(), ErrorCode::argument,
          "spectra have different cardinalities");
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      pairs.emplace_back(std::abs(a[i] - b[j]), i, j);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> used_a(a.size()), used_b(b.size());
  double worst = 0.0;
  std::size_t matched = 0;
  for (const auto& [dist, i, j] : pairs) {
    if (used_a[i] || used_b[j]) continue;
    used_a[i] = used_b[j] = true;
    worst = std::max(worst, dist);
    if (++matched == a.size()) break;
  }
  return worst;
}

}  // namespace pgossip::oracle
