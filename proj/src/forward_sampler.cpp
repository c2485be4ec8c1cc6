#include "vulnk/forward_sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "vulnk/error.hpp"

namespace vulnk {

ForwardSampler::ForwardSampler(const UncertainGraph& g) : g_(g), active_(g.node_count(), 0) {
  order_.reserve(g.node_count());
}

std::span<const NodeId> ForwardSampler::sample(const WorldCoins& coins) {
  for (NodeId v : order_) active_[v] = 0;
  order_.clear();

  const std::size_t n = g_.node_count();
  for (NodeId v = 0; v < n; ++v) {
    if (coins.self_defaults(g_, v)) {
      active_[v] = 1;
      order_.push_back(v);
    }
  }
  // order_ doubles as the BFS queue.
  for (std::size_t head = 0; head < order_.size(); ++head) {
    for (const Arc& arc : g_.out_arcs(order_[head])) {
      if (active_[arc.node]) continue;
      if (!coins.edge_survives(g_, arc.edge)) continue;
      active_[arc.node] = 1;
      order_.push_back(arc.node);
    }
  }
  return order_;
}

std::vector<NodeId> sample_world_forward(const UncertainGraph& g, const WorldCoins& coins) {
  ForwardSampler sampler(g);
  auto span = sampler.sample(coins);
  std::vector<NodeId> out(span.begin(), span.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> EstimateTable::estimates() const {
  std::vector<double> out(counts.size());
  for (NodeId v = 0; v < out.size(); ++v) out[v] = estimate(v);
  return out;
}

EstimateTable forward_counts(const UncertainGraph& g, std::uint64_t t, std::uint64_t seed) {
  EstimateTable table{std::vector<std::uint64_t>(g.node_count(), 0), t};
  const auto total = static_cast<std::int64_t>(t);
#pragma omp parallel
  {
    ForwardSampler sampler(g);
    std::vector<std::uint64_t> local(g.node_count(), 0);
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t i = 1; i <= total; ++i) {
      for (NodeId v : sampler.sample(WorldCoins(seed, static_cast<std::uint64_t>(i)))) ++local[v];
    }
#pragma omp critical(vulnk_forward_reduce)
    for (std::size_t v = 0; v < local.size(); ++v) table.counts[v] += local[v];
  }
  return table;
}

std::uint64_t basic_sample_size(std::size_t n, std::size_t k, const ApproxParams& params) {
  validate(params);
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::InvalidK, "sample size needs 1 <= k < n (k=" + std::to_string(k) +
                                         ", n=" + std::to_string(n) + ")");
  }
  const double pairs = static_cast<double>(k) * static_cast<double>(n - k);
  const double t = 2.0 / (params.eps * params.eps) * std::log(pairs / params.delta);
  return static_cast<std::uint64_t>(std::ceil(t));
}

namespace {

TopKResult rank_forward(const UncertainGraph& g, std::size_t k, std::uint64_t t,
                        std::uint64_t seed, Method method) {
  check_k(k, g.node_count());
  if (t < 1) throw Error(ErrorCode::InvalidArguments, "sample count must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const auto table = forward_counts(g, t, seed);
  TopKResult result;
  result.method = method;
  for (NodeId v : top_by_score<std::uint64_t>(table.counts, k)) {
    result.entries.push_back(RankedEntry{v, table.estimate(v), false, Estimator::Frequency});
  }
  result.info.k = k;
  result.info.seed = seed;
  result.info.samples_planned = t;
  result.info.samples_used = t;
  result.info.candidates = g.node_count();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

TopKResult estimate_topk_basic(const UncertainGraph& g, std::size_t k, std::uint64_t t,
                               std::uint64_t seed) {
  return rank_forward(g, k, t, seed, Method::N);
}

TopKResult sn_topk(const UncertainGraph& g, std::size_t k, const ApproxParams& params,
                   std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t t = basic_sample_size(g.node_count(), k, params);
  auto result = rank_forward(g, k, t, seed, Method::SN);
  result.info.params = params;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace vulnk
