#pragma once

#include <span>
#include <vector>

#include "vulnk/graph.hpp"

namespace vulnk {

/// Default bound order: sweeps of the independence recurrence.
inline constexpr int kDefaultBoundOrder = 2;

/// Order-z bounds on every node's default probability.
///
/// Both tables iterate p(v) = 1 - (1 - p_s(v)) * prod_{x in N(v)} (1 - p(v|x) p(x))
/// for z sweeps, starting from p_s (lower) or from in-neighbours treated
/// as certainly defaulted (upper). The upper table is sound for every z.
/// The lower table is sound for z <= 2 only: at z >= 3 converging paths
/// share coins and the product over-counts (see the diamond fixture).
struct BoundTable {
  int z = kDefaultBoundOrder;
  std::vector<double> lower;
  std::vector<double> upper;
};

std::vector<double> lower_bounds(const UncertainGraph& g, int z);
std::vector<double> upper_bounds(const UncertainGraph& g, int z);
BoundTable compute_bounds(const UncertainGraph& g, int z = kDefaultBoundOrder);

/// Outcome of bound-based pruning for a top-k query.
struct CandidateReport {
  std::vector<NodeId> verified;    // proven top-k, ordered by lower bound desc
  std::vector<NodeId> candidates;  // B: still undecided, NodeId ascending
  std::vector<NodeId> pruned;      // proven outside the top-k
  double lower_threshold = 0.0;    // T_l: k-th largest lower bound
  double upper_threshold = 0.0;    // T_u: k-th largest upper bound

  std::size_t k_prime() const { return verified.size(); }
};

/// Nodes with p_l >= T_u are verified (at most k of them, by p_l desc then
/// NodeId); of the rest, nodes with p_u >= T_l form B and the others are
/// pruned. With `verify` off nothing is verified and only pruning applies.
CandidateReport reduce_candidates(const BoundTable& bounds, std::size_t k, bool verify = true);

/// k-th largest value (k is 1-based).
double kth_largest(std::span<const double> values, std::size_t k);

}  // namespace vulnk
