#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "vulnk/bottomk.hpp"
#include "vulnk/bounds.hpp"
#include "vulnk/coins.hpp"
#include "vulnk/forward_sampler.hpp"
#include "vulnk/graph.hpp"
#include "vulnk/reverse_sampler.hpp"

namespace vulnk::testing {

struct SmallGraphShape {
  std::size_t max_nodes = 8;
  std::size_t max_edges = 12;
  bool allow_cycles = true;
  // Fraction of probabilities snapped to exactly 0 or 1.
  double extreme_fraction = 0.1;
};

inline double draw_probability(std::mt19937_64& rng, double extreme_fraction) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double roll = unit(rng);
  if (roll < extreme_fraction / 2) return 0.0;
  if (roll < extreme_fraction) return 1.0;
  return unit(rng);
}

/// Random graph with 1..max_nodes nodes and up to max_edges distinct edges.
inline UncertainGraph random_small_graph(std::uint64_t seed, SmallGraphShape shape = {}) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 17);
  const std::size_t n = 1 + rng() % shape.max_nodes;
  const std::size_t pairs = shape.allow_cycles ? n * (n - 1) : n * (n - 1) / 2;
  const std::size_t m = std::min<std::size_t>(pairs, rng() % (shape.max_edges + 1));

  std::vector<double> ps(n);
  for (auto& p : ps) p = draw_probability(rng, shape.extreme_fraction);

  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<Edge> edges;
  while (edges.size() < m) {
    auto a = static_cast<NodeId>(rng() % n);
    auto b = static_cast<NodeId>(rng() % n);
    if (a == b) continue;
    if (!shape.allow_cycles && a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) continue;
    edges.push_back(Edge{a, b, draw_probability(rng, shape.extreme_fraction)});
  }
  return UncertainGraph({}, std::move(ps), std::move(edges));
}

/// Exact p(v) by listing every world and closing defaults under surviving
/// edges with repeated relaxation. Deliberately naive; only for n + m <= 20.
inline std::vector<double> brute_force_probabilities(const UncertainGraph& g) {
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();
  const std::uint64_t worlds = std::uint64_t{1} << (n + m);
  std::vector<double> p(n, 0.0);
  std::vector<bool> active(n);
  for (std::uint64_t w = 0; w < worlds; ++w) {
    double pw = 1.0;
    for (std::size_t v = 0; v < n; ++v) {
      const bool on = (w >> v) & 1;
      active[v] = on;
      pw *= on ? g.self_risk(static_cast<NodeId>(v)) : 1.0 - g.self_risk(static_cast<NodeId>(v));
    }
    for (std::size_t e = 0; e < m; ++e) {
      const bool on = (w >> (n + e)) & 1;
      pw *= on ? g.edge(static_cast<EdgeId>(e)).prob : 1.0 - g.edge(static_cast<EdgeId>(e)).prob;
    }
    if (pw == 0.0) continue;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t e = 0; e < m; ++e) {
        const Edge& edge = g.edge(static_cast<EdgeId>(e));
        if (((w >> (n + e)) & 1) && active[edge.src] && !active[edge.dst]) {
          active[edge.dst] = true;
          changed = true;
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (active[v]) p[v] += pw;
    }
  }
  return p;
}

struct Top1Expectation {
  NodeId node;
  bool sampled;  // false when bounds alone decided
};

/// What the bottom-k run must return for k = 1, recomputed independently:
/// replay the samples in hash order with forward sampling and take the
/// first candidate whose count reaches bk (lowest id within one sample),
/// falling back to the largest count when nobody finishes.
inline Top1Expectation expected_top1(const UncertainGraph& g, int z, int bk, std::uint64_t seed,
                                     const ApproxParams& params = {}) {
  const auto report = reduce_candidates(compute_bounds(g, z), 1);
  if (report.k_prime() == 1) return {report.verified[0], false};
  const auto& cand = report.candidates;
  if (cand.size() == 1) return {cand[0], false};
  const std::uint64_t t = reduced_sample_size(cand.size(), 1, 0, params);

  std::vector<std::pair<double, std::uint64_t>> order;
  for (std::uint64_t i = 1; i <= t; ++i) order.emplace_back(SampleHashStream::hash_of(seed, i), i);
  std::sort(order.begin(), order.end());

  std::vector<std::uint64_t> counts(g.node_count(), 0);
  ForwardSampler sampler(g);
  for (const auto& [h, index] : order) {
    std::vector<std::uint8_t> hit(g.node_count(), 0);
    for (NodeId v : sampler.sample(WorldCoins(seed, index))) hit[v] = 1;
    for (NodeId v : cand) {  // ascending ids
      if (hit[v] && ++counts[v] == static_cast<std::uint64_t>(bk)) return {v, true};
    }
  }
  NodeId best = cand[0];
  for (NodeId v : cand) {
    if (counts[v] > counts[best]) best = v;
  }
  return {best, true};
}

}  // namespace vulnk::testing
