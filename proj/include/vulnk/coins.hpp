#pragma once

#include <cstdint>

#include "vulnk/graph.hpp"

namespace vulnk {

// Counter-based randomness. Every random quantity in the library is a pure
// function of (seed, stream, counter, entity), so results do not depend on
// evaluation order or thread count, and two traversals of the same world
// (forward and reverse) see identical coins.

/// splitmix64 finaliser: a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

enum class Stream : std::uint64_t {
  NodeCoin = 1,
  EdgeCoin = 2,
  SampleHash = 3,
  AssignNode = 4,
  AssignEdge = 5,
  Synth = 6,
  Trial = 7,
};

constexpr std::uint64_t derive_key(std::uint64_t seed, Stream stream,
                                   std::uint64_t counter) noexcept {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = mix64(h ^ (static_cast<std::uint64_t>(stream) * 0x9e3779b97f4a7c15ULL));
  return mix64(h ^ counter);
}

constexpr std::uint64_t keyed_bits(std::uint64_t key, std::uint64_t id) noexcept {
  return mix64(key ^ mix64(id + 0x9e3779b97f4a7c15ULL));
}

/// 53-bit uniform value in [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// 53-bit uniform value strictly inside (0, 1).
constexpr double to_open_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

inline double unit_coin(std::uint64_t seed, Stream stream, std::uint64_t counter,
                        std::uint64_t id) noexcept {
  return to_unit(keyed_bits(derive_key(seed, stream, counter), id));
}

/// The coin source for one possible world: sample `index` under `seed`.
/// A node self-defaults iff node(v) < p_s(v); an edge survives iff
/// edge(e) < p(dst|src). With coins on [0,1) the strict comparison makes
/// p = 0 never fire and p = 1 always fire.
class WorldCoins {
 public:
  WorldCoins(std::uint64_t seed, std::uint64_t sample_index) noexcept
      : seed_(seed),
        index_(sample_index),
        node_key_(derive_key(seed, Stream::NodeCoin, sample_index)),
        edge_key_(derive_key(seed, Stream::EdgeCoin, sample_index)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t sample_index() const noexcept { return index_; }

  double node(NodeId v) const noexcept { return to_unit(keyed_bits(node_key_, v)); }
  double edge(EdgeId e) const noexcept { return to_unit(keyed_bits(edge_key_, e)); }

  bool self_defaults(const UncertainGraph& g, NodeId v) const noexcept {
    return node(v) < g.self_risk(v);
  }
  bool edge_survives(const UncertainGraph& g, EdgeId e) const noexcept {
    return edge(e) < g.edge(e).prob;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t node_key_;
  std::uint64_t edge_key_;
};

}  // namespace vulnk
