#include "pgossip/matrix_builder.hpp"

#include <cmath>
#include <string>

#include "pgossip/error.hpp"

namespace pgossip {
namespace {

DenseMatrix round_product(int n, const std::vector<GossipPair>& round,
                          double w, double fail_prob) {
  DenseMatrix out = DenseMatrix::Identity(n, n);
  for (const GossipPair& pair : round) {
    DenseMatrix step = pair_update_matrix(n, pair, w).entries;
    if (fail_prob > 0.0) {
      step = fail_prob * DenseMatrix::Identity(n, n) + (1.0 - fail_prob) * step;
    }
    out = out * step;
  }
  return out;
}

}  // namespace

GossipMatrix pair_update_matrix(int n, GossipPair pair, double w) {
  require(n >= 2, ErrorCode::argument, "node count must be at least 2");
  require(pair.i >= 1 && pair.j == pair.i + 1 && pair.j <= n,
          ErrorCode::argument,
          "pair (" + std::to_string(pair.i) + "," + std::to_string(pair.j) +
              ") is not a path edge for n=" + std::to_string(n));
  require(std::isfinite(w), ErrorCode::argument, "weight must be finite");

  GossipMatrix m;
  m.entries = DenseMatrix::Identity(n, n);
  const int a = pair.i - 1;
  const int b = pair.j - 1;
  m.entries(a, a) = 1.0 - w;
  m.entries(b, b) = 1.0 - w;
  m.entries(a, b) = w;
  m.entries(b, a) = w;
  m.kind = w == 0.5 ? MatrixKind::average : MatrixKind::weighted;
  m.parameter = w;
  return m;
}

ScheduleSpec optimal_schedule(int n) {
  require(n >= 2, ErrorCode::argument, "schedule needs at least 2 nodes");
  ScheduleSpec s;
  for (int i = 2; i + 1 <= n; i += 2) s.e1.push_back({i, i + 1});
  for (int i = 1; i + 1 <= n; i += 2) s.e2.push_back({i, i + 1});
  s.period = 2;
  return s;
}

GossipMatrix primitive_gossip_matrix(int n, double w) {
  require(n >= 3, ErrorCode::argument,
          "primitive gossip matrix needs n >= 3, got " + std::to_string(n));
  const ScheduleSpec s = optimal_schedule(n);
  GossipMatrix m;
  m.entries = round_product(n, s.e2, w, 0.0) * round_product(n, s.e1, w, 0.0);
  m.kind = w == 0.5 ? MatrixKind::average : MatrixKind::weighted;
  m.parameter = w;
  return m;
}

GossipMatrix expected_failure_matrix(int n, double p) {
  require(n >= 3, ErrorCode::argument,
          "expected failure matrix needs n >= 3, got " + std::to_string(n));
  require(p >= 0.0 && p <= 1.0, ErrorCode::argument,
          "failure probability must lie in [0,1]");
  const ScheduleSpec s = optimal_schedule(n);
  GossipMatrix m;
  m.entries = round_product(n, s.e2, 0.5, p) * round_product(n, s.e1, 0.5, p);
  m.kind = MatrixKind::expected_failure;
  m.parameter = p;
  return m;
}

}  // namespace pgossip
