#include "vulnk/reference.hpp"

#include <algorithm>

#include "vulnk/coins.hpp"
#include "vulnk/oracle.hpp"
#include "vulnk/reverse_sampler.hpp"

namespace vulnk::reference {

EstimateTable forward_counts(const UncertainGraph& g, std::uint64_t t, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  EstimateTable table{std::vector<std::uint64_t>(n, 0), t};
  std::vector<std::uint8_t> survives(g.edge_count());
  std::vector<std::uint8_t> active(n);
  std::vector<NodeId> queue;
  for (std::uint64_t i = 1; i <= t; ++i) {
    const WorldCoins coins(seed, i);
    for (EdgeId e = 0; e < g.edge_count(); ++e) survives[e] = coins.edge_survives(g, e);
    queue.clear();
    for (NodeId v = 0; v < n; ++v) {
      active[v] = coins.self_defaults(g, v);
      if (active[v]) queue.push_back(v);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const Arc& arc : g.out_arcs(queue[head])) {
        if (survives[arc.edge] && !active[arc.node]) {
          active[arc.node] = 1;
          queue.push_back(arc.node);
        }
      }
    }
    for (NodeId v = 0; v < n; ++v) table.counts[v] += active[v];
  }
  return table;
}

std::vector<std::uint64_t> reverse_counts(const ReversedGraph& gt,
                                          std::span<const NodeId> candidates, std::uint64_t t,
                                          std::uint64_t seed) {
  std::vector<std::uint64_t> counts(candidates.size(), 0);
  ReverseSampler sampler(gt);
  std::vector<std::uint8_t> hits(candidates.size());
  for (std::uint64_t i = 1; i <= t; ++i) {
    sampler.sample(WorldCoins(seed, i), candidates, hits);
    for (std::size_t c = 0; c < hits.size(); ++c) counts[c] += hits[c];
  }
  return counts;
}

BoundTable bounds(const UncertainGraph& g, int z) {
  const std::size_t n = g.node_count();
  auto eq1 = [&](NodeId v, const std::vector<double>& in) {
    double stay_clean = 1.0;
    for (const Arc& arc : g.in_arcs(v)) stay_clean *= 1.0 - g.edge(arc.edge).prob * in[arc.node];
    return std::min(1.0, g.self_risk(v) + (1.0 - g.self_risk(v)) * (1.0 - stay_clean));
  };
  std::vector<double> lower(g.self_risks().begin(), g.self_risks().end());
  std::vector<double> upper(n);
  const std::vector<double> ones(n, 1.0);
  for (NodeId v = 0; v < n; ++v) upper[v] = eq1(v, ones);
  for (int round = 2; round <= z; ++round) {
    std::vector<double> next_lower(n), next_upper(n);
    for (NodeId v = 0; v < n; ++v) {
      next_lower[v] = eq1(v, lower);
      next_upper[v] = eq1(v, upper);
    }
    lower.swap(next_lower);
    upper.swap(next_upper);
  }
  return BoundTable{z, std::move(lower), std::move(upper)};
}

std::vector<double> exact_default_probabilities(const UncertainGraph& g) {
  std::vector<double> p(g.node_count(), 0.0);
  for_each_world(g, [&](PossibleWorld, double prob, std::uint32_t defaulted) {
    for (NodeId v = 0; v < p.size(); ++v) {
      if ((defaulted >> v) & 1U) p[v] += prob;
    }
  });
  return p;
}

BottomKRun run_bottomk(const ReversedGraph& gt, std::span<const NodeId> candidates,
                       const SampleHashStream& stream, std::uint64_t seed, int bk,
                       std::size_t needed) {
  BottomKRun run;
  run.counts.assign(candidates.size(), 0);
  if (needed == 0 || candidates.empty()) return run;
  ReverseSampler sampler(gt);
  std::vector<std::uint8_t> hits(candidates.size());
  const auto order = stream.order();
  for (std::uint64_t pos = 0; pos < order.size(); ++pos) {
    sampler.sample(WorldCoins(seed, order[pos]), candidates, hits);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (hits[c] && ++run.counts[c] == static_cast<std::uint64_t>(bk) &&
          run.finished.size() < needed) {
        const double h = stream.hash(order[pos]);
        run.finished.push_back(
            FinishRecord{candidates[c], h, bottomk_estimate(bk, h, stream.size()), pos});
      }
    }
    run.processed = pos + 1;
    if (run.finished.size() >= needed) return run;
  }
  run.exhausted = true;
  return run;
}

}  // namespace vulnk::reference
