#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace test {

using Cplx = std::complex<double>;

inline Eigen::MatrixXd rows(std::initializer_list<std::initializer_list<double>> r) {
  const auto n = static_cast<Eigen::Index>(r.size());
  const auto m = static_cast<Eigen::Index>(r.begin()->size());
  Eigen::MatrixXd out(n, m);
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (double v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

inline bool matrix_near(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

// Small deterministic generator for test inputs, independent of the library RNG.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : s_(seed * 2862933555777941757ULL + 3037000493ULL) {}
  double uniform(double lo, double hi) {
    s_ = s_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + (hi - lo) * static_cast<double>(s_ >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t s_;
};

inline std::vector<Cplx> eigen_spectrum(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  std::vector<Cplx> v(es.eigenvalues().data(), es.eigenvalues().data() + a.rows());
  return v;
}

// Distance between two multisets: each element of a matched to the nearest
// unused element of b, repeated in both directions.
inline double multiset_gap(std::vector<Cplx> a, std::vector<Cplx> b) {
  if (a.size() != b.size()) return 1e300;
  auto one_way = [](const std::vector<Cplx>& x, std::vector<Cplx> y) {
    double worst = 0;
    for (const Cplx& v : x) {
      auto it = std::min_element(y.begin(), y.end(), [&](const Cplx& p, const Cplx& q) {
        return std::abs(p - v) < std::abs(q - v);
      });
      worst = std::max(worst, std::abs(*it - v));
      y.erase(it);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

inline double sorted_spectrum_gap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return multiset_gap(eigen_spectrum(a), eigen_spectrum(b));
}

// det(A - lambda I) through Eigen's complex LU.
inline Cplx lu_determinant(const Eigen::MatrixXd& a, Cplx lambda) {
  Eigen::MatrixXcd s = a.cast<Cplx>();
  s.diagonal().array() -= lambda;
  return s.partialPivLu().determinant();
}

}  // namespace test
