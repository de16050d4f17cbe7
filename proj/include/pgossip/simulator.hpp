#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pgossip {

struct SimConfig {
  int n = 4;
  double w = 0.5;
  double p = 0.0;
  std::uint64_t seed = 0;
  int max_periods = 200;
  double tolerance = 1e-12;
};

struct SimResult {
  int periods_elapsed = 0;
  bool converged = false;
  /// max_i x_i - min_i x_i after each period.
  std::vector<double> disagreement_trace;
  /// 1 - geometric mean of successive trace ratios over the second half of
  /// the trace. Entries below 1e-13 max|x_0| are treated as rounding noise
  /// and cut off; empty when fewer than 4 usable periods remain.
  std::optional<double> empirical_rate;
  std::vector<double> final_states;
  std::string rng_algorithm;
};

/// Seeded 64-bit generator used for link failures and random initial
/// states. Same seed, same sequence, on every platform.
class RandomSource {
 public:
  static constexpr const char* algorithm = "splitmix64";

  explicit RandomSource(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Seed for trial `index` of a batch started from `seed`.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t state_;
};

/// Runs the scheduled gossip: each period applies the (2,3),(4,5),... round
/// and then the (1,2),(3,4),... round. Every scheduled link is skipped for
/// the period with probability p, one draw per link per period.
SimResult run_periodic_gossip(const SimConfig& config,
                              const std::vector<double>& initial);

struct MonteCarloRate {
  double mean = 0.0;
  double standard_error = 0.0;
  int trials = 0;  // trials that produced a rate estimate
};

/// Mean empirical rate over independent trials with uniform [0,1] initial
/// states. Trials run in parallel; the result does not depend on the
/// thread count.
MonteCarloRate monte_carlo_rate(const SimConfig& config, int trials);

/// Deterministic probe state e_1 = (1, 0, ..., 0).
std::vector<double> basis_probe(int n);

}  // namespace pgossip
