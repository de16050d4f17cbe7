// Command-line front end. Talks to the library only through pgossip.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "pgossip/pgossip.h"

namespace {

struct ApiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(pg_status s) {
  if (s != PG_OK) {
    throw ApiError(std::string(pg_status_name(s)) + ": " + pg_last_error());
  }
}

// ---- tables ---------------------------------------------------------------

using Cell = std::variant<std::monostate, long, double, std::string, bool>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
  return std::string(buf, res.ptr);
}

std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  } visit;
  return std::visit(visit, c);
}

nlohmann::json json_cell(const Cell& c) {
  struct {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(long v) const { return v; }
    // Round through the 10-digit text so CSV and JSON carry the same values.
    nlohmann::json operator()(double v) const {
      if (!std::isfinite(v)) return format_double(v);
      return std::stod(format_double(v));
    }
    nlohmann::json operator()(const std::string& v) const { return v; }
    nlohmann::json operator()(bool v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

std::string render(const Table& t, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t k = 0; k < t.header.size(); ++k) obj[t.header[k]] = json_cell(r[k]);
      rows.push_back(std::move(obj));
    }
    out << rows.dump(2) << '\n';
    return out.str();
  }
  for (std::size_t k = 0; k < t.header.size(); ++k) out << (k ? "," : "") << t.header[k];
  out << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << csv_cell(r[k]);
    out << '\n';
  }
  return out.str();
}

void emit(const Table& t, const std::string& format, const std::string& path) {
  const std::string text = render(t, format);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f.flush()) throw std::runtime_error("failed writing " + path);
}

// ---- report rows ----------------------------------------------------------

const std::vector<std::string> report_header = {
    "n", "w", "p", "analytic_rate", "numeric_rate", "empirical_rate", "lambda2_modulus", "regime"};

struct ReportRow {
  int n = 0;
  std::optional<double> w, p, analytic, numeric, empirical, lambda2;
  std::optional<pg_regime> regime;
  std::vector<Cell> extra;

  std::vector<Cell> cells() const {
    auto opt = [](const std::optional<double>& v) -> Cell {
      return v ? Cell(*v) : Cell(std::monostate{});
    };
    std::vector<Cell> c = {static_cast<long>(n), opt(w),         opt(p),
                           opt(analytic),        opt(numeric),   opt(empirical),
                           opt(lambda2)};
    if (regime) {
      c.emplace_back(std::string(*regime == PG_REGIME_COMPLEX_PAIR ? "complex_pair"
                                                                    : "real_roots"));
    } else {
      c.emplace_back(std::monostate{});
    }
    c.insert(c.end(), extra.begin(), extra.end());
    return c;
  }
};

Table make_table(const std::vector<ReportRow>& rows, std::vector<std::string> extra_header = {}) {
  Table t;
  t.header = report_header;
  t.header.insert(t.header.end(), extra_header.begin(), extra_header.end());
  for (const auto& r : rows) t.rows.push_back(r.cells());
  return t;
}

// Eigensolver cross-checks cost O(n^3); above this order only the closed form
// is reported unless --numeric-max says otherwise.
int numeric_max = 200;

std::optional<double> gap_of(pg_matrix* m) {
  double gap = 0;
  const pg_status s = pg_spectral_gap_numeric(m, &gap);
  pg_matrix_free(m);
  check(s);
  return gap;
}

std::optional<double> numeric_weighted(int n, double w) {
  if (n > numeric_max) return std::nullopt;
  pg_matrix* m = nullptr;
  check(pg_primitive_gossip_matrix(n, w, &m));
  return gap_of(m);
}

std::optional<double> numeric_failure(int n, double p) {
  if (n > numeric_max) return std::nullopt;
  pg_matrix* m = nullptr;
  check(pg_expected_failure_matrix(n, p, &m));
  return gap_of(m);
}

ReportRow weighted_row(int n, double w) {
  pg_rate_result r{};
  check(pg_rate_weighted(n, w, &r));
  ReportRow row;
  row.n = n;
  row.w = w;
  row.p = 0.0;
  row.analytic = r.rate;
  row.numeric = numeric_weighted(n, w);
  row.lambda2 = r.lambda2_modulus;
  row.regime = r.regime;
  return row;
}

ReportRow failure_row(int n, double p) {
  pg_rate_result r{};
  check(pg_rate_link_failure(n, p, &r));
  ReportRow row;
  row.n = n;
  row.w = 0.5;
  row.p = p;
  row.analytic = r.rate;
  row.numeric = numeric_failure(n, p);
  row.lambda2 = r.lambda2_modulus;
  row.regime = r.regime;
  return row;
}

// Evaluates f on every index concurrently; results keep index order.
template <typename T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& f) {
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        slots[k] = f(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    out.push_back(std::move(*slots[k]));
  }
  return out;
}

// ---- argument parsing -----------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_number(const std::string& s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw CLI::ValidationError("not a number: '" + s + "'");
  }
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw CLI::ValidationError("not an integer: '" + s + "'");
  }
  return v;
}

// "A:B:STEP", inclusive of B up to rounding.
std::vector<double> parse_grid(const std::string& spec, const char* what) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) {
    throw CLI::ValidationError(std::string(what) + " grid must look like A:B:STEP");
  }
  const double a = parse_number(parts[0]);
  const double b = parse_number(parts[1]);
  const double step = parse_number(parts[2]);
  if (!(step > 0) || b < a) {
    throw CLI::ValidationError(std::string(what) + " grid is empty");
  }
  std::vector<double> grid;
  for (long k = 0;; ++k) {
    const double v = std::round((a + k * step) * 1e12) / 1e12;
    if (v > b + 1e-9 * step) break;
    grid.push_back(v);
  }
  return grid;
}

std::vector<int> parse_n_range(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 2 && parts.size() != 3) {
    throw CLI::ValidationError("--n-range must look like A:B or A:B:STEP");
  }
  const int a = parse_int(parts[0]);
  const int b = parse_int(parts[1]);
  const int step = parts.size() == 3 ? parse_int(parts[2]) : 1;
  if (step < 1 || b < a) throw CLI::ValidationError("--n-range is empty");
  std::vector<int> out;
  for (int n = a; n <= b; n += step) out.push_back(n);
  return out;
}

void require_weights(const std::vector<double>& grid) {
  for (double w : grid) {
    if (!(w > 0 && w < 1)) {
      throw CLI::ValidationError("gossip weights must lie in (0,1), got " + format_double(w));
    }
  }
}

void require_probabilities(const std::vector<double>& grid) {
  for (double p : grid) {
    if (!(p >= 0 && p <= 1)) {
      throw CLI::ValidationError("failure probabilities must lie in [0,1], got " +
                                 format_double(p));
    }
  }
}

struct Options {
  std::optional<int> n;
  std::string n_range;
  std::optional<double> w;
  std::string w_grid;
  std::optional<double> p;
  std::string p_grid;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  int trials = 50;
  int max_periods = 200;
  double tolerance = 1e-12;
  std::string scope = "all";
  int n_max = 20;
  std::string target;
};

std::vector<int> orders(const Options& o, std::vector<int> fallback = {}) {
  if (o.n && !o.n_range.empty()) throw CLI::ValidationError("give --n or --n-range, not both");
  if (o.n) return {*o.n};
  if (!o.n_range.empty()) return parse_n_range(o.n_range);
  if (fallback.empty()) throw CLI::ValidationError("--n or --n-range is required");
  return fallback;
}

std::vector<double> weights(const Options& o, const std::string& fallback) {
  if (o.w && !o.w_grid.empty()) throw CLI::ValidationError("give --w or --w-grid, not both");
  std::vector<double> g = o.w ? std::vector<double>{*o.w}
                              : parse_grid(o.w_grid.empty() ? fallback : o.w_grid, "--w");
  require_weights(g);
  return g;
}

std::vector<double> probabilities(const Options& o, const std::string& fallback) {
  if (o.p && !o.p_grid.empty()) throw CLI::ValidationError("give --p or --p-grid, not both");
  std::vector<double> g = o.p ? std::vector<double>{*o.p}
                              : parse_grid(o.p_grid.empty() ? fallback : o.p_grid, "--p");
  require_probabilities(g);
  return g;
}

// ---- commands -------------------------------------------------------------

Table grid_sweep(const std::vector<int>& ns, const std::vector<double>& ws) {
  const std::size_t cols = ws.size();
  return make_table(parallel_map<ReportRow>(ns.size() * cols, [&](std::size_t k) {
    return weighted_row(ns[k / cols], ws[k % cols]);
  }));
}

Table failure_sweep(const std::vector<int>& ns, const std::vector<double>& ps) {
  const std::size_t cols = ps.size();
  return make_table(parallel_map<ReportRow>(ns.size() * cols, [&](std::size_t k) {
    return failure_row(ns[k / cols], ps[k % cols]);
  }));
}

Table cmd_rate(const Options& o) { return grid_sweep(orders(o), weights(o, "0.5:0.5:1")); }

Table cmd_sweep_weight(const Options& o) {
  return grid_sweep(orders(o), weights(o, "0.1:0.9:0.1"));
}

Table cmd_sweep_n(const Options& o) {
  return grid_sweep(orders(o, parse_n_range("3:100")), weights(o, "0.5:0.5:1"));
}

Table cmd_link_failure(const Options& o) {
  return failure_sweep(orders(o), probabilities(o, "0:1:0.1"));
}

Table cmd_spectrum(const Options& o) {
  const std::vector<int> ns = orders(o);
  if (ns.size() != 1) throw CLI::ValidationError("spectrum takes a single --n");
  const int n = ns[0];
  if (o.p && o.w) throw CLI::ValidationError("spectrum takes --w or --p, not both");
  pg_penta_params params{};
  pg_matrix* m = nullptr;
  if (o.p) {
    require_probabilities({*o.p});
    check(pg_link_failure_params(n, *o.p, &params));
    check(pg_expected_failure_matrix(n, *o.p, &m));
  } else {
    const double w = o.w.value_or(0.5);
    require_weights({w});
    check(pg_gossip_params(n, w, &params));
    check(pg_primitive_gossip_matrix(n, w, &m));
  }
  pg_spectrum* analytic = nullptr;
  pg_spectrum* numeric = nullptr;
  const pg_status a = pg_analytic_eigenvalues(&params, &analytic);
  const pg_status b = pg_full_spectrum(m, &numeric);
  pg_matrix_free(m);
  if (a != PG_OK || b != PG_OK) {
    pg_spectrum_free(analytic);
    pg_spectrum_free(numeric);
    check(a != PG_OK ? a : b);
  }
  Table t;
  t.header = {"source", "k", "re", "im", "modulus"};
  for (auto [name, s] : {std::pair{"analytic", analytic}, std::pair{"numeric", numeric}}) {
    for (std::size_t k = 0; k < pg_spectrum_size(s); ++k) {
      pg_complex z{};
      pg_spectrum_at(s, k, &z);
      t.rows.push_back({std::string(name), static_cast<long>(k + 1), z.re, z.im,
                        std::hypot(z.re, z.im)});
    }
  }
  pg_spectrum_free(analytic);
  pg_spectrum_free(numeric);
  return t;
}

Table cmd_simulate(const Options& o) {
  const std::vector<int> ns = orders(o);
  const std::vector<double> ws = weights(o, "0.5:0.5:1");
  const std::vector<double> ps = probabilities(o, "0:0:1");
  if (o.trials < 1) throw CLI::ValidationError("--trials must be >= 1");
  std::vector<ReportRow> rows;
  for (int n : ns) {
    for (double w : ws) {
      for (double p : ps) {
        pg_sim_config c;
        pg_sim_config_default(n, &c);
        c.w = w;
        c.p = p;
        c.seed = o.seed;
        c.max_periods = o.max_periods;
        c.tolerance = o.tolerance;
        pg_monte_carlo mc{};
        check(pg_monte_carlo_rate(&c, o.trials, &mc));
        // The closed form covers p = 0 at any weight and p > 0 at w = 1/2,
        // where it describes the expected matrix rather than the process.
        ReportRow row;
        if (p == 0.0 && n >= 3) {
          row = weighted_row(n, w);
        } else if (w == 0.5 && n >= 3) {
          row = failure_row(n, p);
        } else {
          row.n = n;
          row.w = w;
          row.p = p;
        }
        row.empirical = mc.mean;
        row.extra = {mc.standard_error, static_cast<long>(mc.trials), static_cast<long>(o.seed)};
        rows.push_back(std::move(row));
      }
    }
  }
  return make_table(rows, {"standard_error", "trials", "seed"});
}

const std::vector<std::string> verify_scopes = {"spectra", "charpoly", "failure-matrix",
                                                "simulator", "all"};

bool cmd_verify(const Options& o, Table& t) {
  pg_verify_scope scope = PG_VERIFY_ALL;
  for (std::size_t k = 0; k < verify_scopes.size(); ++k) {
    if (verify_scopes[k] == o.scope) scope = static_cast<pg_verify_scope>(k);
  }
  pg_verify_report* r = nullptr;
  check(pg_verify(scope, o.n_max, &r));
  t.header = {"suite", "cases", "worst", "tolerance", "passed"};
  for (std::size_t k = 0; k < pg_verify_suite_count(r); ++k) {
    t.rows.push_back({std::string(pg_verify_suite_name(r, k)), pg_verify_suite_cases(r, k),
                      pg_verify_suite_worst(r, k), pg_verify_suite_tolerance(r, k),
                      pg_verify_suite_passed(r, k) != 0});
  }
  const bool ok = pg_verify_passed(r) != 0;
  pg_verify_report_free(r);
  return ok;
}

const std::vector<std::string> targets = {"table1", "table2", "fig2", "fig3",
                                          "fig4",   "fig5",   "fig6", "fig7"};

Table optimal_rows(const std::vector<int>& ns, const std::vector<std::string>& extra_header,
                   const std::function<std::vector<Cell>(int, double)>& extra) {
  const double grid[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  return make_table(parallel_map<ReportRow>(ns.size(), [&](std::size_t k) {
                      double w = 0;
                      pg_rate_result r{};
                      check(pg_optimal_weight(ns[k], grid, 9, &w, &r));
                      ReportRow row = weighted_row(ns[k], w);
                      row.extra = extra(ns[k], r.rate);
                      return row;
                    }),
                    extra_header);
}

Table relative_error_rows(const std::vector<int>& ns) {
  Table t;
  t.header = {"n", "rate_w0.9", "rate_w0.5", "relative_error"};
  const auto rows = parallel_map<std::vector<Cell>>(ns.size(), [&](std::size_t k) {
    pg_rate_result fast{}, slow{};
    double re = 0;
    check(pg_rate_weighted(ns[k], 0.9, &fast));
    check(pg_rate_weighted(ns[k], 0.5, &slow));
    check(pg_relative_error(ns[k], &re));
    return std::vector<Cell>{static_cast<long>(ns[k]), fast.rate, slow.rate, re};
  });
  t.rows.assign(rows.begin(), rows.end());
  return t;
}

Table cmd_reproduce(const std::string& target) {
  if (target == "table1") {
    return optimal_rows(parse_n_range("4:20"), {}, [](int, double) { return std::vector<Cell>{}; });
  }
  if (target == "table2") {
    struct Printed {
      int n;
      double rate;
      bool consistent;
    };
    const std::vector<Printed> printed = {
        {100, 0.009, true},  {200, 0.0022, true}, {300, 0.001, true}, {400, 0.0006, true},
        {500, 0.1, false},   {600, 0.002, false}, {700, 0.002, false}, {800, 0.001, false},
        {900, 0.001, false}, {1000, 0.0001, true}};
    std::vector<int> ns;
    for (const auto& p : printed) ns.push_back(p.n);
    return optimal_rows(ns, {"published_rate", "published_inconsistent"}, [&](int n, double) {
      for (const auto& p : printed) {
        if (p.n == n) return std::vector<Cell>{p.rate, !p.consistent};
      }
      return std::vector<Cell>{std::monostate{}, std::monostate{}};
    });
  }
  if (target == "fig2") return grid_sweep(parse_n_range("3:100"), {0.5});
  if (target == "fig3") return grid_sweep(parse_n_range("4:20"), parse_grid("0.05:0.95:0.05", "w"));
  if (target == "fig4") {
    return grid_sweep(parse_n_range("100:1000:100"), parse_grid("0.05:0.95:0.05", "w"));
  }
  if (target == "fig5") return relative_error_rows(parse_n_range("4:20"));
  if (target == "fig6") return relative_error_rows(parse_n_range("100:1000:10"));
  if (target == "fig7") {
    return failure_sweep({10, 20, 50, 100}, parse_grid("0:1:0.05", "p"));
  }
  throw CLI::ValidationError("unknown target " + target);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convergence rates of periodic gossip on a line of sensor nodes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pg_version()));
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write output to PATH instead of stdout");
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--numeric-max", numeric_max,
                    "Largest order cross-checked with the eigensolver")
        ->check(CLI::Range(0, 2000));
  };
  auto add_orders = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "Number of nodes")->check(CLI::Range(2, 1000000));
    sub->add_option("--n-range", o.n_range, "Node counts A:B (inclusive)");
  };
  auto add_weights = [&](CLI::App* sub) {
    sub->add_option("--w", o.w, "Gossip weight in (0,1)");
    sub->add_option("--w-grid", o.w_grid, "Weight grid A:B:STEP");
  };
  auto add_probabilities = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "Link failure probability in [0,1]");
    sub->add_option("--p-grid", o.p_grid, "Failure probability grid A:B:STEP");
  };

  auto* rate = app.add_subcommand("rate", "Closed-form and eigensolver rate at one point");
  add_orders(rate);
  add_weights(rate);
  add_common(rate);

  auto* spectrum = app.add_subcommand("spectrum", "Closed-form and numeric eigenvalues");
  add_orders(spectrum);
  spectrum->add_option("--w", o.w, "Gossip weight in (0,1)");
  spectrum->add_option("--p", o.p, "Link failure probability (averaging weight)");
  add_common(spectrum);

  auto* sweep_w = app.add_subcommand("sweep-weight", "Rate over a weight grid");
  add_orders(sweep_w);
  add_weights(sweep_w);
  add_common(sweep_w);

  auto* sweep_n = app.add_subcommand("sweep-n", "Rate over a range of node counts");
  add_orders(sweep_n);
  add_weights(sweep_n);
  add_common(sweep_n);

  auto* failure = app.add_subcommand("link-failure", "Averaging rate under link failures");
  add_orders(failure);
  add_probabilities(failure);
  add_common(failure);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo rate of the gossip process");
  add_orders(simulate);
  add_weights(simulate);
  add_probabilities(simulate);
  simulate->add_option("--seed", o.seed, "Random seed");
  simulate->add_option("--trials", o.trials, "Independent trials");
  simulate->add_option("--max-periods", o.max_periods, "Period cap per run")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--tolerance", o.tolerance, "Disagreement that counts as converged")
      ->check(CLI::PositiveNumber);
  add_common(simulate);

  auto* verify = app.add_subcommand("verify", "Closed form against the numeric oracles");
  verify->add_option("--scope", o.scope, "Which cross-checks to run")
      ->check(CLI::IsMember(verify_scopes));
  verify->add_option("--n-max", o.n_max, "Largest matrix order")->check(CLI::Range(3, 2000));
  add_common(verify);

  auto* reproduce = app.add_subcommand("reproduce", "Regenerate a table or figure data set");
  reproduce->add_option("target", o.target, "One of table1 table2 fig2 ... fig7")
      ->required()
      ->check(CLI::IsMember(targets));
  add_common(reproduce);

  CLI11_PARSE(app, argc, argv);

  try {
    Table t;
    bool ok = true;
    if (*rate) t = cmd_rate(o);
    if (*spectrum) t = cmd_spectrum(o);
    if (*sweep_w) t = cmd_sweep_weight(o);
    if (*sweep_n) t = cmd_sweep_n(o);
    if (*failure) t = cmd_link_failure(o);
    if (*simulate) t = cmd_simulate(o);
    if (*verify) ok = cmd_verify(o, t);
    if (*reproduce) t = cmd_reproduce(o.target);
    emit(t, o.format, o.out);
    if (!ok) {
      std::cerr << "verification failed\n";
      return 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
