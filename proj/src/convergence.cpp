#include "pgossip/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pgossip/error.hpp"

namespace pgossip {

double slow_mode_sine(int n) {
  require(n >= 3, ErrorCode::argument,
          "convergence rates need n >= 3, got " + std::to_string(n));
  return std::sin((n - 2) * std::numbers::pi / (2.0 * n));
}

RateResult rate_weighted(int n, double w) {
  require(w > 0.0 && w < 1.0, ErrorCode::argument,
          "gossip weight must lie strictly between 0 and 1");
  const double s = slow_mode_sine(n);
  const double s2 = s * s;
  const double radicand = w * w * s2 - 2.0 * w + 1.0;

  RateResult r;
  r.n = n;
  r.parameter = w;
  if (radicand >= 0.0) {
    r.regime = Regime::real_roots;
    r.lambda2_modulus =
        std::abs(1.0 - 2.0 * w + 2.0 * w * w * s2 + 2.0 * w * s * std::sqrt(radicand));
  } else {
    // Conjugate pair; the product of the roots is (2w - 1)^2.
    r.regime = Regime::complex_pair;
    r.lambda2_modulus = std::abs(2.0 * w - 1.0);
  }
  r.rate = 1.0 - r.lambda2_modulus;
  return r;
}

RateResult rate_link_failure(int n, double p) {
  require(p >= 0.0 && p <= 1.0, ErrorCode::argument,
          "failure probability must lie in [0,1]");
  const double s = slow_mode_sine(n);
  const double s2 = s * s;
  const double q2 = (p - 1.0) * (p - 1.0);

  RateResult r;
  r.n = n;
  r.parameter = p;
  r.regime = Regime::real_roots;
  if (p == 1.0) {
    r.lambda2_modulus = 1.0;
  } else {
    r.lambda2_modulus =
        p + 0.5 * q2 * s2 + std::sqrt(0.25 * q2 * q2 * s2 * s2 + p * q2 * s2);
  }
  r.rate = 1.0 - r.lambda2_modulus;
  return r;
}

std::vector<double> default_weight_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 9; ++k) grid.push_back(k / 10.0);
  return grid;
}

OptimalWeight optimal_weight(int n, const std::vector<double>& grid) {
  require(!grid.empty(), ErrorCode::argument, "weight grid is empty");
  OptimalWeight best;
  bool have = false;
  for (double w : grid) {
    const RateResult r = rate_weighted(n, w);
    if (!have || r.rate > best.result.rate ||
        (r.rate == best.result.rate && w < best.w)) {
      best = {w, r};
      have = true;
    }
  }
  return best;
}

OptimalWeight refine_optimal_weight(int n, double step, int levels) {
  require(step > 0.0 && step < 1.0, ErrorCode::argument,
          "refinement step must lie in (0,1)");
  require(levels >= 0, ErrorCode::argument, "refinement levels must be >= 0");

  std::vector<double> grid;
  for (int k = 1; k * step < 1.0 - 1e-12; ++k) grid.push_back(k * step);
  OptimalWeight best = optimal_weight(n, grid);
  for (int level = 0; level < levels; ++level) {
    const double fine = step / 10.0;
    grid.clear();
    for (int k = -10; k <= 10; ++k) {
      const double w = best.w + k * fine;
      if (w > 0.0 && w < 1.0) grid.push_back(w);
    }
    best = optimal_weight(n, grid);
    step = fine;
  }
  return best;
}

double relative_error(int n) {
  const double fast = rate_weighted(n, 0.9).rate;
  const double avg = rate_weighted(n, 0.5).rate;
  require(fast != 0.0, ErrorCode::undefined_value,
          "relative error undefined: rate at w=0.9 is zero");
  return (fast - avg) / fast;
}

}  // namespace pgossip
