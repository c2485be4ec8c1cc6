#pragma once

// Straight-line serial versions of the parallel kernels. They take the
// simplest route to the same answer and exist so tests and kernel_bench
// can compare the OpenMP kernels against them.

#include <cstdint>
#include <span>
#include <vector>

#include "vulnk/bottomk.hpp"
#include "vulnk/bounds.hpp"
#include "vulnk/forward_sampler.hpp"
#include "vulnk/graph.hpp"

namespace vulnk::reference {

/// Flips every node and edge coin of each world up front, then BFS over
/// surviving edges.
EstimateTable forward_counts(const UncertainGraph& g, std::uint64_t t, std::uint64_t seed);

std::vector<std::uint64_t> reverse_counts(const ReversedGraph& gt,
                                          std::span<const NodeId> candidates, std::uint64_t t,
                                          std::uint64_t seed);

/// Recomputes every node on every sweep, no change tracking.
BoundTable bounds(const UncertainGraph& g, int z);

/// Sums p(W) * I_W(v) through for_each_world.
std::vector<double> exact_default_probabilities(const UncertainGraph& g);

/// One sample at a time, no prefetch.
BottomKRun run_bottomk(const ReversedGraph& gt, std::span<const NodeId> candidates,
                       const SampleHashStream& stream, std::uint64_t seed, int bk,
                       std::size_t needed);

}  // namespace vulnk::reference
