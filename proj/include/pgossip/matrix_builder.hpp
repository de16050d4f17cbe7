#pragma once

#include <Eigen/Dense>
#include <vector>

namespace pgossip {

using DenseMatrix = Eigen::MatrixXd;

/// An edge (i, i+1) of the path network. Indices are 1-based.
struct GossipPair {
  int i = 0;
  int j = 0;

  friend bool operator==(const GossipPair&, const GossipPair&) = default;
};

/// The two matchings of the path graph that make up one gossip period.
/// Round `e1` holds the edges (2,3), (4,5), ...; round `e2` holds
/// (1,2), (3,4), .... Per period the `e1` round runs first.
struct ScheduleSpec {
  std::vector<GossipPair> e1;
  std::vector<GossipPair> e2;
  int period = 2;
};

enum class MatrixKind { average, weighted, expected_failure };

/// A dense doubly stochastic matrix together with how it was built.
/// `parameter` is the gossip weight for `average`/`weighted` and the link
/// failure probability for `expected_failure`.
struct GossipMatrix {
  DenseMatrix entries;
  MatrixKind kind = MatrixKind::weighted;
  double parameter = 0.5;

  int order() const { return static_cast<int>(entries.rows()); }
};

/// Identity except for the 2x2 block [[1-w, w], [w, 1-w]] on rows/cols
/// {i, j}. w = 1/2 is plain averaging, w = 1 swaps the two values.
GossipMatrix pair_update_matrix(int n, GossipPair pair, double w);

ScheduleSpec optimal_schedule(int n);

/// One period of the weighted scheduled gossip: W = S(e2) * S(e1), where
/// S(E) is the product of the pair matrices of round E. Requires n >= 3.
GossipMatrix primitive_gossip_matrix(int n, double w);

/// Expected one-period matrix when each link independently fails (is
/// replaced by the identity) with probability p. Averaging weight is 1/2.
GossipMatrix expected_failure_matrix(int n, double p);

}  // namespace pgossip
