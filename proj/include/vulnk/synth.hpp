#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "vulnk/graph.hpp"

namespace vulnk {

enum class SynthKind {
  PowerLaw,   // directed Chung-Lu, skewed in- and out-degrees
  RandomDag,  // m distinct forward edges under a random node order
  Random,     // m distinct directed pairs, cycles allowed
  Chain,      // 0 -> 1 -> ... -> n-1
  Diamond,    // r -> x1 -> v, r -> x2 -> v
};

std::optional<SynthKind> parse_synth_kind(std::string_view text);
std::string_view to_string(SynthKind kind);

/// Deterministic topology from `seed`, probabilities from
/// assign_random_probabilities(seed). Throws InfeasibleShape when (n, m)
/// does not fit the kind.
UncertainGraph synth_graph(SynthKind kind, std::size_t n, std::size_t m, std::uint64_t seed);

/// Degree exponent of the power-law generator.
inline constexpr double kPowerLawExponent = 2.5;

namespace fixtures {

/// A -> B with every probability 0.2.
UncertainGraph example_chain();

/// r -> x1 -> v, r -> x2 -> v; p_s(r) = 0.5, other p_s = 0; p(x|r) = 1,
/// p(v|x) = 0.5. Exact p(v) = 0.375, while three independence sweeps give
/// 0.4375.
UncertainGraph diamond_witness();

/// Five nodes, six edges, shaped like the toy guarantee network.
UncertainGraph toy_guarantee_network(double p = 0.2);

}  // namespace fixtures

}  // namespace vulnk
