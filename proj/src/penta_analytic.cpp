#include "pgossip/penta_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pgossip/error.hpp"

namespace pgossip {
namespace {

double param_scale(const PentaParams& p) {
  return std::max({1.0, std::abs(p.e), std::abs(p.b), std::abs(p.c),
                   std::abs(p.d)});
}

bool nearly(double a, double b, double scale) {
  return std::abs(a - b) <= 1e-12 * scale;
}

void require_order(const PentaParams& p) {
  require(p.n >= 3, ErrorCode::argument,
          "pentadiagonal order must be at least 3, got " + std::to_string(p.n));
}

void require_unperturbed_diagonal(const PentaParams& p) {
  const double s = param_scale(p);
  require(nearly(p.alpha, 0.0, s) && nearly(p.beta, 0.0, s),
          ErrorCode::unsupported_parameter,
          "characteristic polynomial formulas need alpha = beta = 0");
}

// Homogenized Chebyshev sequence V_k = z^k U_k(x) with 2zx = t. It obeys
// V_k = t V_{k-1} - z^2 V_{k-2}, V_{-1} = 0, V_0 = 1, and stays polynomial
// in (Y, z) so the closed forms have no singularity at z = 0.
class ScaledChebyshev {
 public:
  ScaledChebyshev(Complex t, Complex z, int max_index)
      : values_(std::max(max_index, 0) + 2) {
    values_[0] = 0.0;
    values_[1] = 1.0;
    const Complex z2 = z * z;
    for (int k = 1; k <= max_index; ++k) {
      values_[k + 1] = t * values_[k] - z2 * values_[k - 1];
    }
  }

  Complex operator[](int k) const { return k < 0 ? Complex{} : values_[k + 1]; }

 private:
  std::vector<Complex> values_;
};

struct Homogenized {
  Complex y;
  Complex z;
  ScaledChebyshev v;
};

Homogenized homogenize(const PentaParams& p, Complex lambda, int max_index) {
  const Complex y = p.e - lambda;
  const Complex z = p.c * y - p.b * p.b;
  const Complex t = y * y + p.c * p.c - 2.0 * p.b * p.b;
  return {y, z, ScaledChebyshev(t, z, max_index)};
}

void append_quadratic_eigenvalues(double lin, double cst, std::vector<Complex>& out,
                            double e) {
  // Roots of Y^2 + lin*Y + cst. The larger-magnitude root is formed without
  // cancellation and the other follows from the product of roots.
  const double disc = lin * lin - 4.0 * cst;
  if (disc >= 0.0) {
    const double q = -0.5 * (lin + std::copysign(std::sqrt(disc), lin));
    const double r1 = q;
    const double r2 = q != 0.0 ? cst / q : 0.0;
    out.emplace_back(e - r1, 0.0);
    out.emplace_back(e - r2, 0.0);
  } else {
    const double re = -0.5 * lin;
    const double im = 0.5 * std::sqrt(-disc);
    out.emplace_back(e - re, -im);
    out.emplace_back(e - re, im);
  }
}

}  // namespace

DenseMatrix penta_matrix(const PentaParams& p, CornerPattern corners) {
  require_order(p);
  const int n = p.n;
  DenseMatrix a = DenseMatrix::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    a(r, r) = p.e;
    if (r % 2 == 0) {
      if (r >= 1) a(r, r - 1) = p.b;
      if (r + 1 < n) a(r, r + 1) = p.b;
      if (r + 2 < n) a(r, r + 2) = p.c;
    } else {
      if (r >= 2) a(r, r - 2) = p.c;
      a(r, r - 1) = p.b;
      if (r + 1 < n) a(r, r + 1) = p.b;
    }
  }
  const bool top_d = corners == CornerPattern::bd_bd;
  const bool bottom_d = corners != CornerPattern::bb_bb;
  a(1, 0) = top_d ? p.d : p.b;
  if (n % 2 == 0) {
    a(n - 2, n - 1) = bottom_d ? p.d : p.b;
  } else {
    a(n - 1, n - 2) = bottom_d ? p.d : p.b;
  }
  a(0, 0) -= p.alpha;
  a(n - 1, n - 1) -= p.beta;
  return a;
}

SpectralVariable spectral_variable(const PentaParams& p, Complex lambda) {
  SpectralVariable v;
  v.y = p.e - lambda;
  v.z = p.c * v.y - p.b * p.b;
  v.x = (v.y * v.y + p.c * p.c - 2.0 * p.b * p.b) / (2.0 * v.z);
  return v;
}

Complex chebyshev_u(int m, Complex x) {
  require(m >= -1, ErrorCode::argument,
          "Chebyshev index must be >= -1, got " + std::to_string(m));
  if (m == -1) return 0.0;
  Complex prev = 0.0;
  Complex cur = 1.0;
  for (int k = 1; k <= m; ++k) {
    const Complex next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex charpoly_bb(const PentaParams& p, Complex lambda) {
  require_order(p);
  require_unperturbed_diagonal(p);
  require(nearly(p.d, p.b, param_scale(p)), ErrorCode::unsupported_parameter,
          "charpoly_bb needs d = b");
  if (p.n % 2 == 1) {
    const int m = (p.n - 1) / 2;
    const Homogenized h = homogenize(p, lambda, m);
    return h.y * h.v[m] - p.c * h.z * h.v[m - 1];
  }
  const int m = p.n / 2;
  const Homogenized h = homogenize(p, lambda, m);
  return h.v[m] + (p.b * p.b - p.c * p.c) * h.v[m - 1];
}

Complex charpoly_bb_bd(const PentaParams& p, Complex lambda) {
  require_order(p);
  require_unperturbed_diagonal(p);
  const double db = p.d - p.b;
  if (p.n % 2 == 1) {
    const int m = (p.n - 1) / 2 - 1;
    const Homogenized h = homogenize(p, lambda, m + 1);
    return h.y * h.v[m + 1] - (p.c * h.z + db * p.b * (h.y - p.c)) * h.v[m];
  }
  const int m = p.n / 2 - 1;
  const Homogenized h = homogenize(p, lambda, m + 1);
  return h.v[m + 1] - ((p.d - 2.0 * p.b) * p.b + p.c * p.c) * h.v[m] +
         db * p.b * h.z * h.v[m - 1];
}

Complex charpoly_bd_bd(const PentaParams& p, Complex lambda) {
  require_order(p);
  require_unperturbed_diagonal(p);
  const double db = p.d - p.b;
  if (p.n % 2 == 1) {
    require(nearly(db, p.c, param_scale(p)), ErrorCode::unsupported_parameter,
            "odd-order bd,bd polynomial is only established for d - b = c");
    const int m = (p.n - 1) / 2 - 1;
    const Homogenized h = homogenize(p, lambda, m + 1);
    const Complex mid = h.z + 2.0 * p.b * (h.y - p.c) - p.c * p.c;
    return h.y * h.v[m + 1] - p.c * mid * h.v[m] -
           p.c * p.c * h.y * h.z * h.v[m - 1];
  }
  const int m = p.n / 2 - 1;
  const Homogenized h = homogenize(p, lambda, m + 1);
  const Complex z = h.z;
  return h.v[m + 1] + (3.0 * p.b * p.b - 2.0 * p.b * p.d - p.c * p.c) * h.v[m] -
         db * (p.d - 3.0 * p.b) * z * h.v[m - 1] +
         db * db * z * z * h.v[m - 2] +
         db * db * p.c * (h.y - p.c) * h.v[m - 1];
}

Spectrum analytic_eigenvalues(const PentaParams& p) {
  require_order(p);
  const double s = param_scale(p);
  require(nearly(p.alpha, -p.b, s) && nearly(p.beta, -p.b, s) &&
              nearly(p.d - p.b, p.c, s),
          ErrorCode::unsupported_parameter,
          "closed-form eigenvalues need alpha = beta = -b and d - b = c");

  const double pi = std::numbers::pi;
  Spectrum out;
  out.eigenvalues.reserve(p.n);
  std::vector<double> angles;
  if (p.n % 2 == 1) {
    const int m = (p.n - 1) / 2;
    out.eigenvalues.emplace_back(p.e + (2.0 * p.b + p.c), 0.0);
    for (int k = 0; k < m; ++k) angles.push_back((2 * k + 1) * pi / (2 * m + 1));
  } else {
    const int m = p.n / 2;
    out.eigenvalues.emplace_back(p.e - p.c, 0.0);
    out.eigenvalues.emplace_back(p.e + (2.0 * p.b + p.c), 0.0);
    for (int k = 1; k < m; ++k) angles.push_back(k * pi / m);
  }
  // Y^2 - 2(cY - b^2) cos(phi) - (2b^2 - c^2) = 0
  for (double phi : angles) {
    const double cs = std::cos(phi);
    const double lin = -2.0 * p.c * cs;
    const double cst = 2.0 * p.b * p.b * (cs - 1.0) + p.c * p.c;
    append_quadratic_eigenvalues(lin, cst, out.eigenvalues, p.e);
  }
  return out;
}

double second_largest_modulus(const Spectrum& s) {
  require(!s.eigenvalues.empty(), ErrorCode::contract_violation,
          "spectrum is empty");
  std::size_t unit = 0;
  double best = std::abs(s.eigenvalues[0] - 1.0);
  for (std::size_t k = 1; k < s.size(); ++k) {
    const double dist = std::abs(s.eigenvalues[k] - 1.0);
    if (dist < best) {
      best = dist;
      unit = k;
    }
  }
  require(best <= 1e-9, ErrorCode::contract_violation,
          "spectrum has no eigenvalue within 1e-9 of 1");
  double out = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k != unit) out = std::max(out, std::abs(s.eigenvalues[k]));
  }
  return out;
}

PentaParams gossip_params(int n, double w) {
  PentaParams p;
  p.n = n;
  p.c = w * w;
  p.d = w;
  p.b = w - w * w;
  p.e = (w - 1.0) * (w - 1.0);
  p.alpha = p.beta = w * w - w;
  return p;
}

PentaParams link_failure_params(int n, double fail_prob) {
  const double q = fail_prob;
  PentaParams p;
  p.n = n;
  p.c = (q - 1.0) * (q - 1.0) / 4.0;
  p.d = (1.0 - q) / 2.0;
  p.b = (1.0 - q * q) / 4.0;
  p.e = (q + 1.0) * (q + 1.0) / 4.0;
  p.alpha = p.beta = (q * q - 1.0) / 4.0;
  return p;
}

}  // namespace pgossip
