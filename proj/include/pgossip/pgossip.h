/*
 * C interface to the periodic gossip library.
 *
 * Every fallible call returns a pg_status. On failure the message of the
 * most recent error on the calling thread is available from
 * pg_last_error(). Objects handed out through an out-pointer are owned by
 * the caller and released with the matching *_free function; passing NULL
 * to a *_free function is a no-op.
 *
 * Node and matrix indices are 1-based throughout.
 */
#ifndef PGOSSIP_H
#define PGOSSIP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PGOSSIP_BUILDING)
#    define PG_API __declspec(dllexport)
#  else
#    define PG_API __declspec(dllimport)
#  endif
#else
#  define PG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pg_status {
  PG_OK = 0,
  PG_ERR_ARGUMENT = 1,
  PG_ERR_UNSUPPORTED = 2,   /* parameters outside the closed-form domain */
  PG_ERR_CONTRACT = 3,      /* input violates an operation's contract */
  PG_ERR_SIZE = 4,
  PG_ERR_UNDEFINED = 5,     /* result is mathematically undefined */
  PG_ERR_NONCONVERGENCE = 6,
  PG_ERR_INTERNAL = 99
} pg_status;

typedef struct pg_complex {
  double re;
  double im;
} pg_complex;

typedef struct pg_matrix pg_matrix;
typedef struct pg_schedule pg_schedule;
typedef struct pg_spectrum pg_spectrum;
typedef struct pg_sim_result pg_sim_result;
typedef struct pg_verify_report pg_verify_report;

PG_API const char* pg_last_error(void);
PG_API const char* pg_status_name(pg_status status);
PG_API const char* pg_version(void);

/* ---- gossip matrices ------------------------------------------------- */

typedef enum pg_matrix_kind {
  PG_KIND_AVERAGE = 0,
  PG_KIND_WEIGHTED = 1,
  PG_KIND_EXPECTED_FAILURE = 2,
  PG_KIND_GENERIC = 3
} pg_matrix_kind;

PG_API pg_status pg_pair_update_matrix(int n, int i, int j, double w,
                                       pg_matrix** out);
PG_API pg_status pg_primitive_gossip_matrix(int n, double w, pg_matrix** out);
PG_API pg_status pg_expected_failure_matrix(int n, double p, pg_matrix** out);
/* Row-major n*n entries. */
PG_API pg_status pg_matrix_from_entries(int n, const double* entries,
                                        pg_matrix** out);

PG_API int pg_matrix_order(const pg_matrix* m);
PG_API pg_matrix_kind pg_matrix_get_kind(const pg_matrix* m);
PG_API double pg_matrix_parameter(const pg_matrix* m);
PG_API pg_status pg_matrix_entry(const pg_matrix* m, int row, int col,
                                 double* out);
/* Copies n*n entries row-major into buf; len is the capacity of buf. */
PG_API pg_status pg_matrix_copy(const pg_matrix* m, double* buf, size_t len);
PG_API void pg_matrix_free(pg_matrix* m);

PG_API pg_status pg_optimal_schedule(int n, pg_schedule** out);
/* round is 1 for E1 = {(2,3),(4,5),...} and 2 for E2 = {(1,2),(3,4),...}. */
PG_API size_t pg_schedule_round_size(const pg_schedule* s, int round);
PG_API pg_status pg_schedule_pair(const pg_schedule* s, int round, size_t k,
                                  int* i, int* j);
PG_API int pg_schedule_period(const pg_schedule* s);
PG_API void pg_schedule_free(pg_schedule* s);

/* ---- perturbed pentadiagonal closed forms ---------------------------- */

typedef struct pg_penta_params {
  double alpha;
  double beta;
  double e;
  double b;
  double c;
  double d;
  int n;
} pg_penta_params;

typedef enum pg_corner_pattern {
  PG_CORNERS_BB_BB = 0,
  PG_CORNERS_BB_BD = 1,
  PG_CORNERS_BD_BD = 2
} pg_corner_pattern;

PG_API pg_status pg_gossip_params(int n, double w, pg_penta_params* out);
PG_API pg_status pg_link_failure_params(int n, double p, pg_penta_params* out);
PG_API pg_status pg_penta_matrix(const pg_penta_params* params,
                                 pg_corner_pattern corners, pg_matrix** out);

PG_API pg_status pg_chebyshev_u(int m, pg_complex x, pg_complex* out);
PG_API pg_status pg_charpoly_bb(const pg_penta_params* params,
                                pg_complex lambda, pg_complex* out);
PG_API pg_status pg_charpoly_bb_bd(const pg_penta_params* params,
                                   pg_complex lambda, pg_complex* out);
PG_API pg_status pg_charpoly_bd_bd(const pg_penta_params* params,
                                   pg_complex lambda, pg_complex* out);

/* ---- spectra ---------------------------------------------------------- */

PG_API pg_status pg_analytic_eigenvalues(const pg_penta_params* params,
                                         pg_spectrum** out);
PG_API pg_status pg_full_spectrum(const pg_matrix* m, pg_spectrum** out);
PG_API size_t pg_spectrum_size(const pg_spectrum* s);
PG_API pg_status pg_spectrum_at(const pg_spectrum* s, size_t k,
                                pg_complex* out);
/* Backward-error estimate; 0 for closed-form spectra. */
PG_API double pg_spectrum_residual(const pg_spectrum* s);
PG_API pg_status pg_second_largest_modulus(const pg_spectrum* s, double* out);
PG_API pg_status pg_spectrum_distance(const pg_spectrum* a,
                                      const pg_spectrum* b, double* out);
PG_API void pg_spectrum_free(pg_spectrum* s);

/* ---- numeric oracle --------------------------------------------------- */

PG_API pg_status pg_determinant_shifted(const pg_matrix* m, pg_complex lambda,
                                        pg_complex* out);
PG_API pg_status pg_enumerate_failure_expectation(int n, double p,
                                                  pg_matrix** out);
PG_API pg_status pg_spectral_gap_numeric(const pg_matrix* m, double* out);

/* ---- convergence rates ------------------------------------------------ */

typedef enum pg_regime {
  PG_REGIME_REAL_ROOTS = 0,
  PG_REGIME_COMPLEX_PAIR = 1
} pg_regime;

typedef struct pg_rate_result {
  int n;
  double parameter;
  double lambda2_modulus;
  double rate;
  pg_regime regime;
} pg_rate_result;

PG_API pg_status pg_rate_weighted(int n, double w, pg_rate_result* out);
PG_API pg_status pg_rate_link_failure(int n, double p, pg_rate_result* out);
PG_API pg_status pg_optimal_weight(int n, const double* grid, size_t len,
                                   double* w_out, pg_rate_result* out);
PG_API pg_status pg_refine_optimal_weight(int n, double step, int levels,
                                          double* w_out, pg_rate_result* out);
PG_API pg_status pg_relative_error(int n, double* out);

/* ---- simulation ------------------------------------------------------- */

typedef struct pg_sim_config {
  int n;
  double w;
  double p;
  uint64_t seed;
  int max_periods;
  double tolerance;
} pg_sim_config;

typedef struct pg_monte_carlo {
  double mean;
  double standard_error;
  int trials;
} pg_monte_carlo;

/* Fills the library defaults: w = 0.5, p = 0, seed = 0, 200 periods,
 * tolerance 1e-12. */
PG_API void pg_sim_config_default(int n, pg_sim_config* out);
PG_API pg_status pg_run_periodic_gossip(const pg_sim_config* config,
                                        const double* initial, size_t len,
                                        pg_sim_result** out);
PG_API int pg_sim_periods(const pg_sim_result* r);
PG_API int pg_sim_converged(const pg_sim_result* r);
PG_API size_t pg_sim_trace_size(const pg_sim_result* r);
PG_API double pg_sim_trace_at(const pg_sim_result* r, size_t k);
/* Returns 1 and writes the rate when one was estimated, else 0. */
PG_API int pg_sim_empirical_rate(const pg_sim_result* r, double* out);
PG_API size_t pg_sim_state_size(const pg_sim_result* r);
PG_API double pg_sim_state_at(const pg_sim_result* r, size_t k);
PG_API const char* pg_sim_rng_algorithm(const pg_sim_result* r);
PG_API void pg_sim_result_free(pg_sim_result* r);

PG_API pg_status pg_monte_carlo_rate(const pg_sim_config* config, int trials,
                                     pg_monte_carlo* out);

/* ---- cross-checks ----------------------------------------------------- */

typedef enum pg_verify_scope {
  PG_VERIFY_SPECTRA = 0,
  PG_VERIFY_CHARPOLY = 1,
  PG_VERIFY_FAILURE_MATRIX = 2,
  PG_VERIFY_SIMULATOR = 3,
  PG_VERIFY_ALL = 4
} pg_verify_scope;

PG_API pg_status pg_verify(pg_verify_scope scope, int n_max,
                           pg_verify_report** out);
PG_API size_t pg_verify_suite_count(const pg_verify_report* r);
PG_API const char* pg_verify_suite_name(const pg_verify_report* r, size_t k);
PG_API double pg_verify_suite_worst(const pg_verify_report* r, size_t k);
PG_API double pg_verify_suite_tolerance(const pg_verify_report* r, size_t k);
PG_API long pg_verify_suite_cases(const pg_verify_report* r, size_t k);
PG_API int pg_verify_suite_passed(const pg_verify_report* r, size_t k);
PG_API int pg_verify_passed(const pg_verify_report* r);
PG_API void pg_verify_report_free(pg_verify_report* r);

#ifdef __cplusplus
}
#endif

#endif /* PGOSSIP_H */
