#pragma once

#include <vector>

namespace pgossip {

enum class Regime { real_roots, complex_pair };

/// Closed-form convergence rate R = 1 - |lambda_2| of the primitive gossip
/// matrix. `parameter` is the gossip weight or the failure probability.
struct RateResult {
  int n = 0;
  double parameter = 0.0;
  double lambda2_modulus = 0.0;
  double rate = 0.0;
  Regime regime = Regime::real_roots;
};

/// sin((n-2) pi / (2n)), the angle of the slowest non-consensus mode.
double slow_mode_sine(int n);

/// Weighted periodic gossip, 0 < w < 1. The same expression covers odd and
/// even n.
RateResult rate_weighted(int n, double w);

/// Average gossip (w = 1/2) with independent link failures, 0 <= p <= 1.
RateResult rate_link_failure(int n, double p);

struct OptimalWeight {
  double w = 0.0;
  RateResult result;
};

/// Grid member with the largest rate; ties go to the smaller weight.
OptimalWeight optimal_weight(int n, const std::vector<double>& grid);

/// Repeatedly re-grids around the current optimum with a ten times finer
/// step, starting from `step`. `levels` = 0 returns the plain grid search.
OptimalWeight refine_optimal_weight(int n, double step, int levels);

/// The default search grid {0.1, 0.2, ..., 0.9}.
std::vector<double> default_weight_grid();

/// (R(0.9) - R(0.5)) / R(0.9).
double relative_error(int n);

}  // namespace pgossip
