#pragma once

#include <complex>
#include <vector>

#include "pgossip/matrix_builder.hpp"

namespace pgossip {

using Complex = std::complex<double>;

/// Parameters of the perturbed pentadiagonal family A_n. `e` is the interior
/// diagonal, `b` the first off-diagonals, `c` the alternating second
/// off-diagonals, `d` the perturbed entry next to each corner, and the corner
/// diagonals are e - alpha (top) and e - beta (bottom).
struct PentaParams {
  double alpha = 0.0;
  double beta = 0.0;
  double e = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  int n = 3;
};

/// Which corners carry the `d` entry when the matrix is realized.
enum class CornerPattern {
  bb_bb,  // both corners use b
  bb_bd,  // top corner b, bottom corner d
  bd_bd,  // both corners use d
};

/// Dense realization of A_n. Rows alternate between the patterns
/// (b, e, b, c) and (c, b, e, b); the corner rows replace the b adjacent to
/// the corner diagonal with d according to `corners`.
DenseMatrix penta_matrix(const PentaParams& p, CornerPattern corners);

/// Y = e - lambda, z = cY - b^2 and x = cos(theta) = (Y^2 + c^2 - 2b^2)/(2z).
struct SpectralVariable {
  Complex y;
  Complex z;
  Complex x;
};

SpectralVariable spectral_variable(const PentaParams& p, Complex lambda);

/// Second-kind Chebyshev value U_m(x) for m >= -1, any complex x.
Complex chebyshev_u(int m, Complex x);

/// Characteristic polynomials det(A - lambda I). The parity of the order
/// comes from `p.n`. All three require alpha = beta = 0.
Complex charpoly_bb(const PentaParams& p, Complex lambda);
Complex charpoly_bb_bd(const PentaParams& p, Complex lambda);
/// Odd orders additionally require d - b = c.
Complex charpoly_bd_bd(const PentaParams& p, Complex lambda);

struct Spectrum {
  std::vector<Complex> eigenvalues;

  std::size_t size() const { return eigenvalues.size(); }
};

/// Closed-form spectrum of A_n(-b, -b, e, bd, c, bd) when d - b = c.
Spectrum analytic_eigenvalues(const PentaParams& p);

/// Largest modulus left after removing the one eigenvalue closest to 1.
/// Throws contract_violation when no eigenvalue lies within 1e-9 of 1.
double second_largest_modulus(const Spectrum& s);

/// The parameterizations under which the gossip matrices are members of
/// the A_n family.
PentaParams gossip_params(int n, double w);
PentaParams link_failure_params(int n, double p);

}  // namespace pgossip
