#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vulnk/graph.hpp"
#include "vulnk/topk.hpp"

namespace vulnk {

/// Largest n + m the exhaustive oracle accepts (2^24 possible worlds).
inline constexpr std::size_t kOracleBudget = 24;

/// One possible world: which nodes self-default and which edges survive,
/// as bit masks over NodeId and EdgeId.
struct PossibleWorld {
  std::uint32_t self_defaults;
  std::uint32_t surviving_edges;
};

/// Nodes defaulting in `world`: self-defaulted nodes plus everything they
/// reach over surviving edges.
std::uint32_t defaulted_in(const UncertainGraph& g, PossibleWorld world);

/// Visits all 2^(n+m) worlds serially with their probability p(W) and the
/// defaulted-node mask.
void for_each_world(const UncertainGraph& g,
                    const std::function<void(PossibleWorld, double, std::uint32_t)>& visit);

/// p(v) = sum_W p(W) * I_W(v), by exhaustive enumeration. Throws
/// BudgetExceeded when n + m > kOracleBudget.
std::vector<double> exact_default_probabilities(const UncertainGraph& g);

TopKResult exact_topk(const UncertainGraph& g, std::size_t k);

}  // namespace vulnk
