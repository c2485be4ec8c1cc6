#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vulnk/graph.hpp"
#include "vulnk/topk.hpp"

namespace vulnk {

class ReversedGraph;

inline constexpr int kDefaultBk = 16;

/// Bottom-k estimator (bk - 1) / (h * t), clamped to [0, 1]. Throws
/// InvalidBk for bk < 2.
double bottomk_estimate(int bk, double kth_hash, std::uint64_t t);

/// Expected relative error of the bottom-k estimator: sqrt(2 / (pi (bk - 2))).
double bottomk_expected_relative_error(int bk);

/// A hash in (0,1) for each of the t planned samples, and the sample
/// indices 1..t sorted by (hash, index). Hashes are pure functions of
/// (seed, index) and never require materialising a sample.
class SampleHashStream {
 public:
  SampleHashStream(std::uint64_t seed, std::uint64_t t);

  static double hash_of(std::uint64_t seed, std::uint64_t index);

  std::uint64_t size() const { return order_.size(); }
  double hash(std::uint64_t index) const { return hash_of(seed_, index); }
  /// Sample indices in processing order.
  std::span<const std::uint64_t> order() const { return order_; }

 private:
  std::uint64_t seed_;
  std::vector<std::uint64_t> order_;
};

/// A candidate whose counter reached bk.
struct FinishRecord {
  NodeId node;
  double kth_hash;         // hash of the sample that brought the counter to bk
  double estimate;         // bottomk_estimate(bk, kth_hash, t)
  std::uint64_t position;  // 0-based stream position of that sample
};

struct BottomKRun {
  std::vector<FinishRecord> finished;  // in finishing order
  std::vector<std::uint64_t> counts;   // per candidate, over the processed prefix
  std::uint64_t processed = 0;         // samples committed
  bool exhausted = false;              // stream ended before enough finishes
};

/// Walks the stream in hash order, materialising reverse samples over
/// `candidates` (NodeId ascending) and committing counters strictly in
/// stream order; stops right after the sample that completes the
/// `needed`-th finish. Samples may be materialised ahead in parallel but
/// are never committed past the stop point.
BottomKRun run_bottomk(const ReversedGraph& gt, std::span<const NodeId> candidates,
                       const SampleHashStream& stream, std::uint64_t seed, int bk,
                       std::size_t needed);

/// Method BSRBK: bounds and pruning as in BSR, t from the reduced sample
/// size, then early termination once k - k' candidates finish. Remaining
/// slots after an exhausted stream are filled by frequency.
TopKResult bsrbk_topk(const UncertainGraph& g, std::size_t k, const ApproxParams& params, int z,
                      int bk, std::uint64_t seed);

}  // namespace vulnk
