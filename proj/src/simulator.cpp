#include "pgossip/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "pgossip/error.hpp"

namespace pgossip {
namespace {

constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double disagreement(const std::vector<double>& x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

void validate(const SimConfig& c) {
  require(c.n >= 2, ErrorCode::argument, "simulation needs n >= 2");
  require(c.max_periods >= 1, ErrorCode::argument, "max_periods must be >= 1");
  require(c.tolerance > 0.0, ErrorCode::argument, "tolerance must be positive");
  require(std::isfinite(c.w), ErrorCode::argument, "gossip weight must be finite");
  require(c.p >= 0.0 && c.p <= 1.0, ErrorCode::argument,
          "failure probability must lie in [0,1]");
}

// Entries at or below `floor` are rounding noise, not decay, so the estimate
// only looks at the trace before it first drops that low.
std::optional<double> tail_rate(const std::vector<double>& trace, double floor) {
  const auto usable = std::find_if(trace.begin(), trace.end(),
                                   [floor](double d) { return d <= floor; });
  const std::size_t len = static_cast<std::size_t>(usable - trace.begin());
  if (len < 4) return std::nullopt;
  const std::size_t start = len / 2;
  const double steps = static_cast<double>(len - 1 - start);
  return 1.0 - std::pow(trace[len - 1] / trace[start], 1.0 / steps);
}

double noise_floor(const std::vector<double>& x) {
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  return 1e-13 * scale;
}

}  // namespace

std::uint64_t RandomSource::next() {
  state_ += golden_gamma;
  return mix64(state_);
}

double RandomSource::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::derive(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + golden_gamma * (index + 1));
}

std::vector<double> basis_probe(int n) {
  require(n >= 1, ErrorCode::argument, "probe needs n >= 1");
  std::vector<double> x(n, 0.0);
  x[0] = 1.0;
  return x;
}

SimResult run_periodic_gossip(const SimConfig& config,
                              const std::vector<double>& initial) {
  validate(config);
  require(initial.size() == static_cast<std::size_t>(config.n),
          ErrorCode::argument,
          "initial state has " + std::to_string(initial.size()) +
              " entries, expected " + std::to_string(config.n));

  RandomSource rng(config.seed);
  SimResult out;
  out.rng_algorithm = RandomSource::algorithm;
  std::vector<double> x = initial;
  const double floor = noise_floor(x);
  const double w = config.w;

  auto run_round = [&](int first) {
    for (int i = first; i + 1 < config.n; i += 2) {
      if (rng.uniform() < config.p) continue;
      const double a = x[i];
      const double b = x[i + 1];
      x[i] = (1.0 - w) * a + w * b;
      x[i + 1] = w * a + (1.0 - w) * b;
    }
  };

  if (disagreement(x) <= config.tolerance) {
    out.converged = true;
  } else {
    for (int period = 1; period <= config.max_periods; ++period) {
      run_round(1);  // edges (2,3), (4,5), ...
      run_round(0);  // edges (1,2), (3,4), ...
      const double d = disagreement(x);
      out.disagreement_trace.push_back(d);
      out.periods_elapsed = period;
      if (d <= config.tolerance) {
        out.converged = true;
        break;
      }
    }
  }
  out.empirical_rate = tail_rate(out.disagreement_trace, floor);
  out.final_states = std::move(x);
  return out;
}

MonteCarloRate monte_carlo_rate(const SimConfig& config, int trials) {
  validate(config);
  require(trials >= 1, ErrorCode::argument, "trials must be >= 1");

  std::vector<std::optional<double>> rates(trials);
  auto run_trial = [&](int t) {
    RandomSource init(RandomSource::derive(config.seed, t));
    std::vector<double> x(config.n);
    for (double& v : x) v = init.uniform();
    SimConfig trial = config;
    trial.seed = init.next();
    rates[t] = run_periodic_gossip(trial, x).empirical_rate;
  };

  const int workers = std::clamp(
      static_cast<int>(std::thread::hardware_concurrency()), 1, trials);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int wk = 0; wk < workers; ++wk) {
    pool.emplace_back([&, wk] {
      try {
        for (int t = wk; t < trials; t += workers) run_trial(t);
      } catch (...) {
        errors[wk] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  MonteCarloRate out;
  double sum = 0.0;
  for (const auto& r : rates) {
    if (r) {
      sum += *r;
      ++out.trials;
    }
  }
  require(out.trials > 0, ErrorCode::undefined_value,
          "no trial ran long enough to estimate a rate");
  out.mean = sum / out.trials;
  if (out.trials > 1) {
    double ss = 0.0;
    for (const auto& r : rates) {
      if (r) ss += (*r - out.mean) * (*r - out.mean);
    }
    out.standard_error = std::sqrt(ss / (out.trials - 1) / out.trials);
  }
  return out;
}

}  // namespace pgossip
