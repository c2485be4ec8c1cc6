#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vulnk/bounds.hpp"
#include "vulnk/coins.hpp"
#include "vulnk/graph.hpp"
#include "vulnk/topk.hpp"

namespace vulnk {

/// Coin flips performed while materialising one reverse sample.
struct ReverseSampleStats {
  std::uint64_t node_coins = 0;
  std::uint64_t edge_coins = 0;
  std::uint64_t pops = 0;
};

/// Decides, for each candidate, whether it defaults in one sampled world,
/// by BFS over the reversed graph from the candidate. Node self-default and
/// edge-survival coins are flipped lazily and memoised for the whole
/// sample, so every coin is flipped at most once no matter how many
/// candidates reach it; a candidate found defaulting is remembered so that
/// later searches stop as soon as they reach it. Visited marks are per
/// candidate. One instance per thread.
class ReverseSampler {
 public:
  explicit ReverseSampler(const ReversedGraph& gt);

  /// hits[i] = 1 iff candidates[i] defaults in the world of `coins`.
  void sample(const WorldCoins& coins, std::span<const NodeId> candidates,
              std::span<std::uint8_t> hits);

  const ReverseSampleStats& last_stats() const { return stats_; }

 private:
  enum : std::uint8_t { Clean = 1, Defaulting = 2 };
  enum : std::uint8_t { Survived = 1, Blocked = 2 };

  bool search(const WorldCoins& coins, NodeId candidate);
  std::uint8_t node_state(NodeId v) const {
    return node_epoch_[v] == epoch_ ? node_state_[v] : std::uint8_t{0};
  }
  bool edge_survives(const WorldCoins& coins, EdgeId e);
  void next_epoch();
  void next_visit();

  const UncertainGraph& gt_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> node_epoch_;
  std::vector<std::uint8_t> node_state_;
  std::vector<std::uint32_t> edge_epoch_;
  std::vector<std::uint8_t> edge_state_;
  std::uint32_t visit_ = 0;
  std::vector<std::uint32_t> visited_;
  std::vector<NodeId> queue_;
  ReverseSampleStats stats_;
};

/// Default counts per candidate (indexed like `candidates`) over sample
/// indices 1..t, OpenMP-parallel over samples.
std::vector<std::uint64_t> reverse_counts(const ReversedGraph& gt,
                                          std::span<const NodeId> candidates, std::uint64_t t,
                                          std::uint64_t seed);

/// ceil((2/eps^2) * ln((k-k')(|B|-k+k')/delta)); 0 when k == k' or
/// |B| == k - k' since the answer is then fixed without sampling.
std::uint64_t reduced_sample_size(std::size_t candidate_count, std::size_t k,
                                  std::size_t k_prime, const ApproxParams& params);

/// Bounds, pruning and reverse sampling. With verification on this is
/// method BSR; off, only pruning applies (k' = 0) and it is method SR.
TopKResult bsr_topk(const UncertainGraph& g, std::size_t k, const ApproxParams& params, int z,
                    std::uint64_t seed, bool use_verification = true);

namespace detail {

/// Verified nodes first, reporting their lower bound.
void append_verified(TopKResult& result, const CandidateReport& report,
                     const BoundTable& bounds);

/// All of B accepted without sampling, ordered by lower bound.
void append_by_lower_bound(TopKResult& result, std::span<const NodeId> nodes,
                           const BoundTable& bounds);

}  // namespace detail

}  // namespace vulnk
