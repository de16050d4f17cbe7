#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "pgossip/pgossip.h"

namespace {

double modulus(pg_complex c) { return std::hypot(c.re, c.im); }

}  // namespace

TEST(CApi, Version) {
  EXPECT_STREQ(pg_version(), "1.0.0");
  EXPECT_STREQ(pg_status_name(PG_OK), "ok");
}

TEST(CApi, PrimitiveMatrixRoundTrip) {
  pg_matrix* m = nullptr;
  ASSERT_EQ(pg_primitive_gossip_matrix(4, 0.5, &m), PG_OK);
  EXPECT_EQ(pg_matrix_order(m), 4);
  EXPECT_EQ(pg_matrix_get_kind(m), PG_KIND_AVERAGE);
  double v = 0;
  ASSERT_EQ(pg_matrix_entry(m, 1, 1, &v), PG_OK);
  EXPECT_DOUBLE_EQ(v, 0.5);
  EXPECT_EQ(pg_matrix_entry(m, 5, 1, &v), PG_ERR_ARGUMENT);
  std::vector<double> buf(16);
  ASSERT_EQ(pg_matrix_copy(m, buf.data(), buf.size()), PG_OK);
  EXPECT_DOUBLE_EQ(buf[2], 0.25);
  EXPECT_EQ(pg_matrix_copy(m, buf.data(), 3), PG_ERR_SIZE);
  pg_matrix_free(m);
  pg_matrix_free(nullptr);
}

TEST(CApi, ErrorsCarryMessages) {
  pg_matrix* m = nullptr;
  EXPECT_EQ(pg_pair_update_matrix(4, 1, 3, 0.5, &m), PG_ERR_ARGUMENT);
  EXPECT_EQ(m, nullptr);
  EXPECT_GT(std::strlen(pg_last_error()), 0u);
  EXPECT_EQ(pg_primitive_gossip_matrix(4, 0.5, nullptr), PG_ERR_ARGUMENT);
}

TEST(CApi, Schedule) {
  pg_schedule* s = nullptr;
  ASSERT_EQ(pg_optimal_schedule(5, &s), PG_OK);
  EXPECT_EQ(pg_schedule_round_size(s, 1), 2u);
  EXPECT_EQ(pg_schedule_round_size(s, 2), 2u);
  int i = 0, j = 0;
  ASSERT_EQ(pg_schedule_pair(s, 1, 1, &i, &j), PG_OK);
  EXPECT_EQ(i, 4);
  EXPECT_EQ(j, 5);
  EXPECT_EQ(pg_schedule_period(s), 2);
  EXPECT_EQ(pg_schedule_pair(s, 3, 0, &i, &j), PG_ERR_ARGUMENT);
  pg_schedule_free(s);
}

TEST(CApi, AnalyticAgainstNumericSpectrum) {
  pg_penta_params params;
  ASSERT_EQ(pg_gossip_params(12, 0.7, &params), PG_OK);
  pg_spectrum* analytic = nullptr;
  ASSERT_EQ(pg_analytic_eigenvalues(&params, &analytic), PG_OK);
  pg_matrix* m = nullptr;
  ASSERT_EQ(pg_penta_matrix(&params, PG_CORNERS_BD_BD, &m), PG_OK);
  pg_spectrum* numeric = nullptr;
  ASSERT_EQ(pg_full_spectrum(m, &numeric), PG_OK);
  EXPECT_EQ(pg_spectrum_size(analytic), 12u);
  double dist = 1;
  ASSERT_EQ(pg_spectrum_distance(analytic, numeric, &dist), PG_OK);
  EXPECT_LT(dist, 1e-8);
  EXPECT_LT(pg_spectrum_residual(numeric), 1e-12);
  double l2a = 0, l2n = 0;
  ASSERT_EQ(pg_second_largest_modulus(analytic, &l2a), PG_OK);
  ASSERT_EQ(pg_second_largest_modulus(numeric, &l2n), PG_OK);
  EXPECT_NEAR(l2a, l2n, 1e-8);
  pg_spectrum_free(analytic);
  pg_spectrum_free(numeric);
  pg_matrix_free(m);
}

TEST(CApi, CharpolyAgainstDeterminant) {
  pg_penta_params p{0, 0, 0.1, 0.3, 0.2, 0.5, 9};
  pg_matrix* m = nullptr;
  ASSERT_EQ(pg_penta_matrix(&p, PG_CORNERS_BD_BD, &m), PG_OK);
  const pg_complex lambda{0.25, -0.4};
  pg_complex a{}, d{};
  ASSERT_EQ(pg_charpoly_bd_bd(&p, lambda, &a), PG_OK);
  ASSERT_EQ(pg_determinant_shifted(m, lambda, &d), PG_OK);
  EXPECT_LT(std::hypot(a.re - d.re, a.im - d.im), 1e-10 * std::max(1.0, modulus(d)));
  p.d = 0.9;
  EXPECT_EQ(pg_charpoly_bd_bd(&p, lambda, &a), PG_ERR_UNSUPPORTED);
  pg_matrix_free(m);

  pg_complex u{};
  ASSERT_EQ(pg_chebyshev_u(3, {0.5, 0}, &u), PG_OK);
  EXPECT_NEAR(u.re, -1.0, 1e-15);
  EXPECT_EQ(pg_chebyshev_u(-3, {0.5, 0}, &u), PG_ERR_ARGUMENT);
}

TEST(CApi, Rates) {
  pg_rate_result r{};
  ASSERT_EQ(pg_rate_weighted(4, 0.6, &r), PG_OK);
  EXPECT_EQ(r.regime, PG_REGIME_COMPLEX_PAIR);
  EXPECT_NEAR(r.rate, 0.8, 1e-12);
  EXPECT_EQ(pg_rate_weighted(4, 1.0, &r), PG_ERR_ARGUMENT);
  ASSERT_EQ(pg_rate_link_failure(7, 1.0, &r), PG_OK);
  EXPECT_EQ(r.rate, 0.0);

  const double grid[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  double w = 0;
  ASSERT_EQ(pg_optimal_weight(14, grid, 9, &w, &r), PG_OK);
  EXPECT_DOUBLE_EQ(w, 0.8);
  EXPECT_NEAR(r.rate, 0.2412, 5e-4);
  EXPECT_EQ(pg_optimal_weight(14, grid, 0, &w, &r), PG_ERR_ARGUMENT);

  double re = 0;
  ASSERT_EQ(pg_relative_error(100, &re), PG_OK);
  EXPECT_NEAR(re, 0.891, 2e-3);
}

TEST(CApi, FailureMatrices) {
  pg_matrix* a = nullptr;
  pg_matrix* b = nullptr;
  ASSERT_EQ(pg_expected_failure_matrix(6, 0.3, &a), PG_OK);
  ASSERT_EQ(pg_enumerate_failure_expectation(6, 0.3, &b), PG_OK);
  std::vector<double> x(36), y(36);
  pg_matrix_copy(a, x.data(), 36);
  pg_matrix_copy(b, y.data(), 36);
  for (int k = 0; k < 36; ++k) EXPECT_NEAR(x[k], y[k], 1e-12);
  double gap = 0;
  pg_rate_result r{};
  ASSERT_EQ(pg_spectral_gap_numeric(a, &gap), PG_OK);
  ASSERT_EQ(pg_rate_link_failure(6, 0.3, &r), PG_OK);
  EXPECT_NEAR(gap, r.rate, 1e-8);
  EXPECT_EQ(pg_enumerate_failure_expectation(13, 0.3, &b), PG_ERR_SIZE);
  pg_matrix_free(a);
  pg_matrix_free(b);

  const double bad[] = {1, 1, 0, 1};
  pg_matrix* m = nullptr;
  ASSERT_EQ(pg_matrix_from_entries(2, bad, &m), PG_OK);
  EXPECT_EQ(pg_matrix_get_kind(m), PG_KIND_GENERIC);
  EXPECT_EQ(pg_spectral_gap_numeric(m, &gap), PG_ERR_CONTRACT);
  pg_matrix_free(m);
}

TEST(CApi, Simulation) {
  pg_sim_config c;
  pg_sim_config_default(2, &c);
  EXPECT_EQ(c.max_periods, 200);
  const double x[] = {0.0, 1.0};
  pg_sim_result* r = nullptr;
  ASSERT_EQ(pg_run_periodic_gossip(&c, x, 2, &r), PG_OK);
  EXPECT_EQ(pg_sim_converged(r), 1);
  EXPECT_EQ(pg_sim_periods(r), 1);
  EXPECT_EQ(pg_sim_state_size(r), 2u);
  EXPECT_EQ(pg_sim_state_at(r, 0), 0.5);
  EXPECT_STREQ(pg_sim_rng_algorithm(r), "splitmix64");
  double rate = 0;
  EXPECT_EQ(pg_sim_empirical_rate(r, &rate), 0);
  pg_sim_result_free(r);

  EXPECT_EQ(pg_run_periodic_gossip(&c, x, 1, &r), PG_ERR_ARGUMENT);

  pg_sim_config_default(6, &c);
  c.seed = 11;
  pg_monte_carlo mc{};
  ASSERT_EQ(pg_monte_carlo_rate(&c, 50, &mc), PG_OK);
  EXPECT_EQ(mc.trials, 50);
  EXPECT_NEAR(mc.mean, 0.25, 3 * mc.standard_error + 1e-9);
}

TEST(CApi, Verify) {
  pg_verify_report* r = nullptr;
  ASSERT_EQ(pg_verify(PG_VERIFY_FAILURE_MATRIX, 10, &r), PG_OK);
  EXPECT_EQ(pg_verify_passed(r), 1);
  ASSERT_EQ(pg_verify_suite_count(r), 2u);
  EXPECT_STREQ(pg_verify_suite_name(r, 0), "failure_matrix.enumeration");
  EXPECT_LE(pg_verify_suite_worst(r, 0), 1e-12);
  EXPECT_GT(pg_verify_suite_cases(r, 0), 0);
  pg_verify_report_free(r);
  EXPECT_EQ(pg_verify(PG_VERIFY_ALL, 2, &r), PG_ERR_ARGUMENT);
}
