#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vulnk/coins.hpp"
#include "vulnk/graph.hpp"
#include "vulnk/topk.hpp"

namespace vulnk {

/// Forward Monte-Carlo over possible worlds: flip every self-default coin,
/// then BFS along out-edges, flipping an edge coin only when its target is
/// still inactive. Buffers are reused across samples; one instance per
/// thread.
class ForwardSampler {
 public:
  explicit ForwardSampler(const UncertainGraph& g);

  /// Defaulted nodes of the world described by `coins`, in activation
  /// order. Valid until the next call.
  std::span<const NodeId> sample(const WorldCoins& coins);

 private:
  const UncertainGraph& g_;
  std::vector<std::uint8_t> active_;
  std::vector<NodeId> order_;
};

/// Defaulted nodes of one world, sorted ascending.
std::vector<NodeId> sample_world_forward(const UncertainGraph& g, const WorldCoins& coins);

/// Per-node default counters v^c over `samples` worlds.
struct EstimateTable {
  std::vector<std::uint64_t> counts;
  std::uint64_t samples = 0;

  double estimate(NodeId v) const {
    return samples == 0 ? 0.0 : static_cast<double>(counts[v]) / static_cast<double>(samples);
  }
  std::vector<double> estimates() const;
};

/// Counts over sample indices 1..t, OpenMP-parallel over samples. The
/// result is identical for any thread count.
EstimateTable forward_counts(const UncertainGraph& g, std::uint64_t t, std::uint64_t seed);

/// ceil((2/eps^2) * ln(k(n-k)/delta)): samples for an (eps,delta) top-k.
/// Requires 1 <= k < n.
std::uint64_t basic_sample_size(std::size_t n, std::size_t k, const ApproxParams& params);

/// Method N: top-k by forward-sampling estimates with a fixed sample count.
TopKResult estimate_topk_basic(const UncertainGraph& g, std::size_t k, std::uint64_t t,
                               std::uint64_t seed);

/// Method SN: as N, with t from basic_sample_size.
TopKResult sn_topk(const UncertainGraph& g, std::size_t k, const ApproxParams& params,
                   std::uint64_t seed);

}  // namespace vulnk
