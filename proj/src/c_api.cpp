#include "pgossip/pgossip.h"

#include <memory>
#include <new>
#include <string>

#include "pgossip/convergence.hpp"
#include "pgossip/error.hpp"
#include "pgossip/matrix_builder.hpp"
#include "pgossip/numeric_oracle.hpp"
#include "pgossip/penta_analytic.hpp"
#include "pgossip/simulator.hpp"
#include "pgossip/verify.hpp"

struct pg_matrix {
  pgossip::DenseMatrix entries;
  pg_matrix_kind kind = PG_KIND_GENERIC;
  double parameter = 0.0;
};

struct pg_schedule {
  pgossip::ScheduleSpec spec;
};

struct pg_spectrum {
  std::vector<pgossip::Complex> eigenvalues;
  double residual = 0.0;
};

struct pg_sim_result {
  pgossip::SimResult result;
};

struct pg_verify_report {
  pgossip::VerifyReport report;
};

namespace {

thread_local std::string last_error;

pg_status to_status(pgossip::ErrorCode code) {
  using pgossip::ErrorCode;
  switch (code) {
    case ErrorCode::argument: return PG_ERR_ARGUMENT;
    case ErrorCode::unsupported_parameter: return PG_ERR_UNSUPPORTED;
    case ErrorCode::contract_violation: return PG_ERR_CONTRACT;
    case ErrorCode::size: return PG_ERR_SIZE;
    case ErrorCode::undefined_value: return PG_ERR_UNDEFINED;
    case ErrorCode::non_convergence: return PG_ERR_NONCONVERGENCE;
  }
  return PG_ERR_INTERNAL;
}

template <class F>
pg_status guarded(F&& body) {
  try {
    body();
    return PG_OK;
  } catch (const pgossip::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PG_ERR_INTERNAL;
  }
}

void require_out(const void* ptr, const char* name) {
  pgossip::require(ptr != nullptr, pgossip::ErrorCode::argument,
                   std::string(name) + " must not be NULL");
}

pg_complex to_c(pgossip::Complex z) { return {z.real(), z.imag()}; }
pgossip::Complex from_c(pg_complex z) { return {z.re, z.im}; }

pg_matrix_kind to_c(pgossip::MatrixKind k) {
  switch (k) {
    case pgossip::MatrixKind::average: return PG_KIND_AVERAGE;
    case pgossip::MatrixKind::weighted: return PG_KIND_WEIGHTED;
    case pgossip::MatrixKind::expected_failure: return PG_KIND_EXPECTED_FAILURE;
  }
  return PG_KIND_GENERIC;
}

pg_matrix* wrap(const pgossip::GossipMatrix& m) {
  return new pg_matrix{m.entries, to_c(m.kind), m.parameter};
}

pgossip::PentaParams from_c(const pg_penta_params* p) {
  require_out(p, "params");
  return {p->alpha, p->beta, p->e, p->b, p->c, p->d, p->n};
}

pg_penta_params to_c(const pgossip::PentaParams& p) {
  return {p.alpha, p.beta, p.e, p.b, p.c, p.d, p.n};
}

pg_rate_result to_c(const pgossip::RateResult& r) {
  return {r.n, r.parameter, r.lambda2_modulus, r.rate,
          r.regime == pgossip::Regime::complex_pair ? PG_REGIME_COMPLEX_PAIR
                                                    : PG_REGIME_REAL_ROOTS};
}

pgossip::SimConfig from_c(const pg_sim_config* c) {
  require_out(c, "config");
  return {c->n, c->w, c->p, c->seed, c->max_periods, c->tolerance};
}

const pgossip::SuiteReport* suite(const pg_verify_report* r, size_t k) {
  if (r == nullptr || k >= r->report.suites.size()) return nullptr;
  return &r->report.suites[k];
}

}  // namespace

extern "C" {

const char* pg_last_error(void) { return last_error.c_str(); }

const char* pg_status_name(pg_status status) {
  switch (status) {
    case PG_OK: return "ok";
    case PG_ERR_ARGUMENT: return "argument error";
    case PG_ERR_UNSUPPORTED: return "unsupported parameter";
    case PG_ERR_CONTRACT: return "contract violation";
    case PG_ERR_SIZE: return "size error";
    case PG_ERR_UNDEFINED: return "undefined value";
    case PG_ERR_NONCONVERGENCE: return "non-convergence";
    case PG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pg_version(void) { return "1.0.0"; }

pg_status pg_pair_update_matrix(int n, int i, int j, double w, pg_matrix** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = wrap(pgossip::pair_update_matrix(n, {i, j}, w));
  });
}

pg_status pg_primitive_gossip_matrix(int n, double w, pg_matrix** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = wrap(pgossip::primitive_gossip_matrix(n, w));
  });
}

pg_status pg_expected_failure_matrix(int n, double p, pg_matrix** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = wrap(pgossip::expected_failure_matrix(n, p));
  });
}

pg_status pg_matrix_from_entries(int n, const double* entries, pg_matrix** out) {
  return guarded([&] {
    require_out(out, "out");
    require_out(entries, "entries");
    pgossip::require(n >= 1, pgossip::ErrorCode::argument, "order must be >= 1");
    auto m = std::make_unique<pg_matrix>();
    m->entries.resize(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) m->entries(r, c) = entries[r * n + c];
    }
    *out = m.release();
  });
}

int pg_matrix_order(const pg_matrix* m) {
  return m ? static_cast<int>(m->entries.rows()) : 0;
}

pg_matrix_kind pg_matrix_get_kind(const pg_matrix* m) {
  return m ? m->kind : PG_KIND_GENERIC;
}

double pg_matrix_parameter(const pg_matrix* m) { return m ? m->parameter : 0.0; }

pg_status pg_matrix_entry(const pg_matrix* m, int row, int col, double* out) {
  return guarded([&] {
    require_out(m, "matrix");
    require_out(out, "out");
    const int n = static_cast<int>(m->entries.rows());
    pgossip::require(row >= 1 && row <= n && col >= 1 && col <= n,
                     pgossip::ErrorCode::argument, "entry index out of range");
    *out = m->entries(row - 1, col - 1);
  });
}

pg_status pg_matrix_copy(const pg_matrix* m, double* buf, size_t len) {
  return guarded([&] {
    require_out(m, "matrix");
    require_out(buf, "buf");
    const auto n = static_cast<size_t>(m->entries.rows());
    pgossip::require(len >= n * n, pgossip::ErrorCode::size,
                     "buffer too small for matrix entries");
    for (size_t r = 0; r < n; ++r) {
      for (size_t c = 0; c < n; ++c) buf[r * n + c] = m->entries(r, c);
    }
  });
}

void pg_matrix_free(pg_matrix* m) { delete m; }

pg_status pg_optimal_schedule(int n, pg_schedule** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = new pg_schedule{pgossip::optimal_schedule(n)};
  });
}

size_t pg_schedule_round_size(const pg_schedule* s, int round) {
  if (s == nullptr) return 0;
  if (round == 1) return s->spec.e1.size();
  if (round == 2) return s->spec.e2.size();
  return 0;
}

pg_status pg_schedule_pair(const pg_schedule* s, int round, size_t k, int* i,
                           int* j) {
  return guarded([&] {
    require_out(s, "schedule");
    require_out(i, "i");
    require_out(j, "j");
    pgossip::require(round == 1 || round == 2, pgossip::ErrorCode::argument,
                     "round must be 1 or 2");
    const auto& pairs = round == 1 ? s->spec.e1 : s->spec.e2;
    pgossip::require(k < pairs.size(), pgossip::ErrorCode::argument,
                     "pair index out of range");
    *i = pairs[k].i;
    *j = pairs[k].j;
  });
}

int pg_schedule_period(const pg_schedule* s) { return s ? s->spec.period : 0; }

void pg_schedule_free(pg_schedule* s) { delete s; }

pg_status pg_gossip_params(int n, double w, pg_penta_params* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = to_c(pgossip::gossip_params(n, w));
  });
}

pg_status pg_link_failure_params(int n, double p, pg_penta_params* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = to_c(pgossip::link_failure_params(n, p));
  });
}

pg_status pg_penta_matrix(const pg_penta_params* params,
                          pg_corner_pattern corners, pg_matrix** out) {
  return guarded([&] {
    require_out(out, "out");
    pgossip::CornerPattern pattern;
    switch (corners) {
      case PG_CORNERS_BB_BB: pattern = pgossip::CornerPattern::bb_bb; break;
      case PG_CORNERS_BB_BD: pattern = pgossip::CornerPattern::bb_bd; break;
      case PG_CORNERS_BD_BD: pattern = pgossip::CornerPattern::bd_bd; break;
      default:
        pgossip::fail(pgossip::ErrorCode::argument, "unknown corner pattern");
    }
    *out = new pg_matrix{pgossip::penta_matrix(from_c(params), pattern),
                         PG_KIND_GENERIC, 0.0};
  });
}

pg_status pg_chebyshev_u(int m, pg_complex x, pg_complex* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = to_c(pgossip::chebyshev_u(m, from_c(x)));
  });
}

pg_status pg_charpoly_bb(const pg_penta_params* params, pg_complex lambda,
                         pg_complex* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = to_c(pgossip::charpoly_bb(from_c(params), from_c(lambda)));
  });
}

pg_status pg_charpoly_bb_bd(const pg_penta_params* params, pg_complex lambda,
                            pg_complex* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = to_c(pgossip::charpoly_bb_bd(from_c(params), from_c(lambda)));
  });
}

pg_status pg_charpoly_bd_bd(const pg_penta_params* params, pg_complex lambda,
                            pg_complex* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = to_c(pgossip::charpoly_bd_bd(from_c(params), from_c(lambda)));
  });
}

pg_status pg_analytic_eigenvalues(const pg_penta_params* params,
                                  pg_spectrum** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = new pg_spectrum{pgossip::analytic_eigenvalues(from_c(params)).eigenvalues,
                           0.0};
  });
}

pg_status pg_full_spectrum(const pg_matrix* m, pg_spectrum** out) {
  return guarded([&] {
    require_out(m, "matrix");
    require_out(out, "out");
    auto s = pgossip::oracle::full_spectrum(m->entries);
    *out = new pg_spectrum{std::move(s.eigenvalues), s.residual};
  });
}

size_t pg_spectrum_size(const pg_spectrum* s) {
  return s ? s->eigenvalues.size() : 0;
}

pg_status pg_spectrum_at(const pg_spectrum* s, size_t k, pg_complex* out) {
  return guarded([&] {
    require_out(s, "spectrum");
    require_out(out, "out");
    pgossip::require(k < s->eigenvalues.size(), pgossip::ErrorCode::argument,
                     "eigenvalue index out of range");
    *out = to_c(s->eigenvalues[k]);
  });
}

double pg_spectrum_residual(const pg_spectrum* s) { return s ? s->residual : 0.0; }

pg_status pg_second_largest_modulus(const pg_spectrum* s, double* out) {
  return guarded([&] {
    require_out(s, "spectrum");
    require_out(out, "out");
    *out = pgossip::second_largest_modulus(pgossip::Spectrum{s->eigenvalues});
  });
}

pg_status pg_spectrum_distance(const pg_spectrum* a, const pg_spectrum* b,
                               double* out) {
  return guarded([&] {
    require_out(a, "a");
    require_out(b, "b");
    require_out(out, "out");
    *out = pgossip::oracle::spectrum_distance(a->eigenvalues, b->eigenvalues);
  });
}

void pg_spectrum_free(pg_spectrum* s) { delete s; }

pg_status pg_determinant_shifted(const pg_matrix* m, pg_complex lambda,
                                 pg_complex* out) {
  return guarded([&] {
    require_out(m, "matrix");
    require_out(out, "out");
    *out = to_c(pgossip::oracle::determinant_shifted(m->entries, from_c(lambda)));
  });
}

pg_status pg_enumerate_failure_expectation(int n, double p, pg_matrix** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = new pg_matrix{pgossip::oracle::enumerate_failure_expectation(n, p),
                         PG_KIND_EXPECTED_FAILURE, p};
  });
}

pg_status pg_spectral_gap_numeric(const pg_matrix* m, double* out) {
  return guarded([&] {
    require_out(m, "matrix");
    require_out(out, "out");
    *out = pgossip::oracle::spectral_gap_numeric(m->entries);
  });
}

pg_status pg_rate_weighted(int n, double w, pg_rate_result* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = to_c(pgossip::rate_weighted(n, w));
  });
}

pg_status pg_rate_link_failure(int n, double p, pg_rate_result* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = to_c(pgossip::rate_link_failure(n, p));
  });
}

pg_status pg_optimal_weight(int n, const double* grid, size_t len,
                            double* w_out, pg_rate_result* out) {
  return guarded([&] {
    require_out(w_out, "w_out");
    require_out(out, "out");
    pgossip::require(grid != nullptr || len == 0, pgossip::ErrorCode::argument,
                     "grid must not be NULL");
    const std::vector<double> g(grid, grid + len);
    const auto best = pgossip::optimal_weight(n, g);
    *w_out = best.w;
    *out = to_c(best.result);
  });
}

pg_status pg_refine_optimal_weight(int n, double step, int levels,
                                   double* w_out, pg_rate_result* out) {
  return guarded([&] {
    require_out(w_out, "w_out");
    require_out(out, "out");
    const auto best = pgossip::refine_optimal_weight(n, step, levels);
    *w_out = best.w;
    *out = to_c(best.result);
  });
}

pg_status pg_relative_error(int n, double* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = pgossip::relative_error(n);
  });
}

void pg_sim_config_default(int n, pg_sim_config* out) {
  if (out == nullptr) return;
  const pgossip::SimConfig c;
  *out = {n, c.w, c.p, c.seed, c.max_periods, c.tolerance};
}

pg_status pg_run_periodic_gossip(const pg_sim_config* config,
                                 const double* initial, size_t len,
                                 pg_sim_result** out) {
  return guarded([&] {
    require_out(out, "out");
    pgossip::require(initial != nullptr || len == 0,
                     pgossip::ErrorCode::argument, "initial must not be NULL");
    const std::vector<double> x(initial, initial + len);
    *out = new pg_sim_result{pgossip::run_periodic_gossip(from_c(config), x)};
  });
}

int pg_sim_periods(const pg_sim_result* r) {
  return r ? r->result.periods_elapsed : 0;
}

int pg_sim_converged(const pg_sim_result* r) {
  return r && r->result.converged ? 1 : 0;
}

size_t pg_sim_trace_size(const pg_sim_result* r) {
  return r ? r->result.disagreement_trace.size() : 0;
}

double pg_sim_trace_at(const pg_sim_result* r, size_t k) {
  if (r == nullptr || k >= r->result.disagreement_trace.size()) return 0.0;
  return r->result.disagreement_trace[k];
}

int pg_sim_empirical_rate(const pg_sim_result* r, double* out) {
  if (r == nullptr || !r->result.empirical_rate) return 0;
  if (out) *out = *r->result.empirical_rate;
  return 1;
}

size_t pg_sim_state_size(const pg_sim_result* r) {
  return r ? r->result.final_states.size() : 0;
}

double pg_sim_state_at(const pg_sim_result* r, size_t k) {
  if (r == nullptr || k >= r->result.final_states.size()) return 0.0;
  return r->result.final_states[k];
}

const char* pg_sim_rng_algorithm(const pg_sim_result* r) {
  return r ? r->result.rng_algorithm.c_str() : "";
}

void pg_sim_result_free(pg_sim_result* r) { delete r; }

pg_status pg_monte_carlo_rate(const pg_sim_config* config, int trials,
                              pg_monte_carlo* out) {
  return guarded([&] {
    require_out(out, "out");
    const auto mc = pgossip::monte_carlo_rate(from_c(config), trials);
    *out = {mc.mean, mc.standard_error, mc.trials};
  });
}

pg_status pg_verify(pg_verify_scope scope, int n_max, pg_verify_report** out) {
  return guarded([&] {
    require_out(out, "out");
    pgossip::VerifyScope s;
    switch (scope) {
      case PG_VERIFY_SPECTRA: s = pgossip::VerifyScope::spectra; break;
      case PG_VERIFY_CHARPOLY: s = pgossip::VerifyScope::charpoly; break;
      case PG_VERIFY_FAILURE_MATRIX: s = pgossip::VerifyScope::failure_matrix; break;
      case PG_VERIFY_SIMULATOR: s = pgossip::VerifyScope::simulator; break;
      case PG_VERIFY_ALL: s = pgossip::VerifyScope::all; break;
      default: pgossip::fail(pgossip::ErrorCode::argument, "unknown verify scope");
    }
    *out = new pg_verify_report{pgossip::verify(s, n_max)};
  });
}

size_t pg_verify_suite_count(const pg_verify_report* r) {
  return r ? r->report.suites.size() : 0;
}

const char* pg_verify_suite_name(const pg_verify_report* r, size_t k) {
  const auto* s = suite(r, k);
  return s ? s->name.c_str() : "";
}

double pg_verify_suite_worst(const pg_verify_report* r, size_t k) {
  const auto* s = suite(r, k);
  return s ? s->worst : 0.0;
}

double pg_verify_suite_tolerance(const pg_verify_report* r, size_t k) {
  const auto* s = suite(r, k);
  return s ? s->tolerance : 0.0;
}

long pg_verify_suite_cases(const pg_verify_report* r, size_t k) {
  const auto* s = suite(r, k);
  return s ? s->cases : 0;
}

int pg_verify_suite_passed(const pg_verify_report* r, size_t k) {
  const auto* s = suite(r, k);
  return s && s->passed ? 1 : 0;
}

int pg_verify_passed(const pg_verify_report* r) {
  return r && r->report.passed() ? 1 : 0;
}

void pg_verify_report_free(pg_verify_report* r) { delete r; }

}  // extern "C"
