#include "pgossip/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pgossip/convergence.hpp"
#include "pgossip/error.hpp"
#include "pgossip/matrix_builder.hpp"
#include "pgossip/numeric_oracle.hpp"
#include "pgossip/penta_analytic.hpp"
#include "pgossip/simulator.hpp"

namespace pgossip {
namespace {

constexpr std::uint64_t verify_seed = 20190101;

class Tracker {
 public:
  Tracker(std::string name, double tolerance) {
    report_.name = std::move(name);
    report_.tolerance = tolerance;
  }

  void observe(double discrepancy) {
    ++report_.cases;
    if (!(discrepancy <= report_.tolerance)) report_.passed = false;
    // NaN must not hide behind max().
    if (std::isnan(discrepancy)) {
      report_.worst = discrepancy;
    } else if (!std::isnan(report_.worst)) {
      report_.worst = std::max(report_.worst, discrepancy);
    }
  }

  SuiteReport done() const { return report_; }

 private:
  SuiteReport report_;
};

std::vector<double> step_grid(int first, int last, double step) {
  std::vector<double> g;
  for (int k = first; k <= last; ++k) g.push_back(k * step);
  return g;
}

double relative_gap(Complex value, Complex reference) {
  return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

Complex sum_of(const std::vector<Complex>& v) {
  return std::accumulate(v.begin(), v.end(), Complex{});
}

void spectra_suites(int n_max, std::vector<SuiteReport>& out) {
  Tracker weighted("spectra.weighted", 1e-8);
  Tracker failure("spectra.link_failure", 1e-8);
  Tracker trace("spectra.trace", 1e-8);
  for (int n = 3; n <= n_max; ++n) {
    for (double w : step_grid(1, 19, 0.05)) {
      const DenseMatrix m = primitive_gossip_matrix(n, w).entries;
      const Spectrum s = analytic_eigenvalues(gossip_params(n, w));
      weighted.observe(oracle::spectrum_distance(
          s.eigenvalues, oracle::full_spectrum(m).eigenvalues));
      trace.observe(std::abs(sum_of(s.eigenvalues) - m.trace()));
    }
    for (double p : step_grid(0, 9, 0.1)) {
      const DenseMatrix m = expected_failure_matrix(n, p).entries;
      const Spectrum s = analytic_eigenvalues(link_failure_params(n, p));
      failure.observe(oracle::spectrum_distance(
          s.eigenvalues, oracle::full_spectrum(m).eigenvalues));
    }
  }
  out.push_back(weighted.done());
  out.push_back(failure.done());
  out.push_back(trace.done());
}

void charpoly_suites(int n_max, std::vector<SuiteReport>& out) {
  Tracker bb("charpoly.bb", 1e-8);
  Tracker bb_bd("charpoly.bb_bd", 1e-8);
  Tracker bd_bd("charpoly.bd_bd", 1e-8);
  RandomSource rng(verify_seed);
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };

  for (int n = 3; n <= std::min(n_max, 51); ++n) {
    PentaParams p;
    p.n = n;
    p.e = draw(-0.5, 0.5);
    p.b = draw(0.1, 0.5);
    p.c = draw(0.1, 0.5);
    p.d = n % 2 == 1 ? p.b + p.c : draw(0.1, 0.8);
    PentaParams sym = p;
    sym.d = sym.b;
    const DenseMatrix a_bb = penta_matrix(sym, CornerPattern::bb_bb);
    const DenseMatrix a_bb_bd = penta_matrix(p, CornerPattern::bb_bd);
    const DenseMatrix a_bd_bd = penta_matrix(p, CornerPattern::bd_bd);
    for (int k = 0; k < 20; ++k) {
      const Complex lambda(draw(-1.5, 1.5), draw(-1.0, 1.0));
      bb.observe(relative_gap(charpoly_bb(sym, lambda),
                              oracle::determinant_shifted(a_bb, lambda)));
      bb_bd.observe(relative_gap(charpoly_bb_bd(p, lambda),
                                 oracle::determinant_shifted(a_bb_bd, lambda)));
      bd_bd.observe(relative_gap(charpoly_bd_bd(p, lambda),
                                 oracle::determinant_shifted(a_bd_bd, lambda)));
    }
  }
  out.push_back(bb.done());
  out.push_back(bb_bd.done());
  out.push_back(bd_bd.done());
}

void failure_suites(int n_max, std::vector<SuiteReport>& out) {
  Tracker exact("failure_matrix.enumeration", 1e-12);
  Tracker rate("failure_matrix.rate", 1e-8);
  for (int n = 3; n <= std::min(n_max, 10); ++n) {
    for (double p : step_grid(0, 10, 0.1)) {
      const DenseMatrix built = expected_failure_matrix(n, p).entries;
      const DenseMatrix enumerated = oracle::enumerate_failure_expectation(n, p);
      exact.observe((built - enumerated).cwiseAbs().maxCoeff());
    }
  }
  for (int n = 3; n <= n_max; ++n) {
    for (double p : step_grid(0, 10, 0.1)) {
      const double numeric =
          oracle::spectral_gap_numeric(expected_failure_matrix(n, p).entries);
      rate.observe(std::abs(rate_link_failure(n, p).rate - numeric));
    }
  }
  out.push_back(exact.done());
  out.push_back(rate.done());
}

void simulator_suites(int n_max, std::vector<SuiteReport>& out) {
  Tracker agreement("simulator.rate_agreement", 0.05);
  Tracker conservation("simulator.sum_conservation", 1e-10);
  Tracker replay("simulator.replay", 0.0);
  for (int n = 4; n <= std::min(n_max, 16); ++n) {
    for (double w : {0.3, 0.5, 0.7}) {
      SimConfig cfg;
      cfg.n = n;
      cfg.w = w;
      cfg.p = 0.0;
      cfg.max_periods = 200;
      cfg.seed = verify_seed + n;
      const std::vector<double> x0 = basis_probe(n);
      const SimResult r = run_periodic_gossip(cfg, x0);
      const double analytic = rate_weighted(n, w).rate;
      agreement.observe(r.empirical_rate ? std::abs(*r.empirical_rate - analytic)
                                         : std::nan(""));

      for (double p : {0.0, 0.3}) {
        cfg.p = p;
        RandomSource init(RandomSource::derive(cfg.seed, 7));
        std::vector<double> x(n);
        for (double& v : x) v = init.uniform();
        const SimResult a = run_periodic_gossip(cfg, x);
        const SimResult b = run_periodic_gossip(cfg, x);
        const double before = std::accumulate(x.begin(), x.end(), 0.0);
        const double after =
            std::accumulate(a.final_states.begin(), a.final_states.end(), 0.0);
        conservation.observe(std::abs(after - before));
        replay.observe(a.disagreement_trace == b.disagreement_trace &&
                               a.final_states == b.final_states
                           ? 0.0
                           : 1.0);
      }
    }
  }
  out.push_back(agreement.done());
  out.push_back(conservation.done());
  out.push_back(replay.done());
}

}  // namespace

VerifyReport verify(VerifyScope scope, int n_max) {
  require(n_max >= 3, ErrorCode::argument, "verify needs n_max >= 3");
  VerifyReport report;
  const bool all = scope == VerifyScope::all;
  if (all || scope == VerifyScope::spectra) spectra_suites(n_max, report.suites);
  if (all || scope == VerifyScope::charpoly) charpoly_suites(n_max, report.suites);
  if (all || scope == VerifyScope::failure_matrix) failure_suites(n_max, report.suites);
  if (all || scope == VerifyScope::simulator) simulator_suites(n_max, report.suites);
  return report;
}

}  // namespace pgossip
