#include "vulnk/bounds.hpp"

#include <algorithm>
#include <functional>

#include "vulnk/error.hpp"
#include "vulnk/topk.hpp"

namespace vulnk {

namespace {

void check_order(int z) {
  if (z < 1) throw Error(ErrorCode::InvalidArguments, "bound order z must be >= 1");
}

// Written as p_s + (1 - p_s)(1 - prod) rather than 1 - (1 - p_s) prod so that
// an empty product returns p_s exactly; every step is monotone under
// rounding, which keeps p_s <= lower <= upper bit-for-bit.
double combine(const UncertainGraph& g, NodeId v, std::span<const double> in_prob) {
  double stay_clean = 1.0;
  for (const Arc& arc : g.in_arcs(v)) {
    stay_clean *= 1.0 - g.edge(arc.edge).prob * in_prob[arc.node];
  }
  const double ps = g.self_risk(v);
  return std::min(1.0, ps + (1.0 - ps) * (1.0 - stay_clean));
}

// Sweeps 2..z. A node is recomputed only when one of its in-neighbours
// changed in the previous sweep; each sweep reads only the previous table.
std::vector<double> sweep(const UncertainGraph& g, std::vector<double> values, int z) {
  const auto n = static_cast<std::int64_t>(g.node_count());
  std::vector<double> next(values.size());
  std::vector<std::uint8_t> changed(values.size(), 1);
  std::vector<std::uint8_t> next_changed(values.size(), 0);
  for (int round = 2; round <= z; ++round) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto v = static_cast<NodeId>(i);
      bool dirty = false;
      for (const Arc& arc : g.in_arcs(v)) {
        if (changed[arc.node]) {
          dirty = true;
          break;
        }
      }
      next[v] = dirty ? combine(g, v, values) : values[v];
      next_changed[v] = next[v] != values[v];
    }
    values.swap(next);
    changed.swap(next_changed);
  }
  return values;
}

}  // namespace

std::vector<double> lower_bounds(const UncertainGraph& g, int z) {
  check_order(z);
  return sweep(g, {g.self_risks().begin(), g.self_risks().end()}, z);
}

std::vector<double> upper_bounds(const UncertainGraph& g, int z) {
  check_order(z);
  const std::vector<double> certain(g.node_count(), 1.0);
  std::vector<double> first(g.node_count());
  for (NodeId v = 0; v < first.size(); ++v) first[v] = combine(g, v, certain);
  return sweep(g, std::move(first), z);
}

BoundTable compute_bounds(const UncertainGraph& g, int z) {
  return BoundTable{z, lower_bounds(g, z), upper_bounds(g, z)};
}

double kth_largest(std::span<const double> values, std::size_t k) {
  check_k(k, values.size());
  std::vector<double> copy(values.begin(), values.end());
  auto nth = copy.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(copy.begin(), nth, copy.end(), std::greater<>());
  return *nth;
}

CandidateReport reduce_candidates(const BoundTable& bounds, std::size_t k, bool verify) {
  const std::size_t n = bounds.lower.size();
  if (bounds.upper.size() != n) {
    throw Error(ErrorCode::InvalidArguments, "bound tables differ in size");
  }
  check_k(k, n);
  CandidateReport report;
  report.lower_threshold = kth_largest(bounds.lower, k);
  report.upper_threshold = kth_largest(bounds.upper, k);

  std::vector<std::uint8_t> is_verified(n, 0);
  if (verify) {
    std::vector<NodeId> proven;
    for (NodeId v = 0; v < n; ++v) {
      if (bounds.lower[v] >= report.upper_threshold) proven.push_back(v);
    }
    // Ties at T_u can admit more than k nodes; keep the k best.
    if (!proven.empty()) report.verified = top_by_score<double>(bounds.lower, k, proven);
    for (NodeId v : report.verified) is_verified[v] = 1;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (is_verified[v]) continue;
    if (bounds.upper[v] >= report.lower_threshold) {
      report.candidates.push_back(v);
    } else {
      report.pruned.push_back(v);
    }
  }
  return report;
}

}  // namespace vulnk
