#include "vulnk/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "vulnk/coins.hpp"
#include "vulnk/error.hpp"

namespace vulnk {

namespace {

// Sequential draws from the Synth stream; counter = draw number.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : key_(derive_key(seed, Stream::Synth, 0)) {}

  double unit() { return to_unit(keyed_bits(key_, next_++)); }

  std::size_t below(std::size_t bound) {
    return std::min(bound - 1, static_cast<std::size_t>(unit() * static_cast<double>(bound)));
  }

 private:
  std::uint64_t key_;
  std::uint64_t next_ = 0;
};

std::vector<NodeId> permutation(std::size_t n, Draws& draws) {
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[draws.below(i)]);
  return perm;
}

std::uint64_t pair_key(NodeId a, NodeId b) { return (std::uint64_t{a} << 32) | b; }

[[noreturn]] void infeasible(SynthKind kind, std::size_t n, std::size_t m) {
  throw Error(ErrorCode::InfeasibleShape, std::string(to_string(kind)) + " with n=" +
                                              std::to_string(n) + ", m=" + std::to_string(m));
}

UncertainGraph topology(std::size_t n, std::vector<Edge> edges) {
  return UncertainGraph({}, std::vector<double>(n, 0.0), std::move(edges));
}

// Picks m distinct pairs from `pool_size` candidate pairs given by
// pair_at(index); dense requests enumerate, sparse ones reject duplicates.
template <typename PairAt>
std::vector<Edge> distinct_pairs(std::size_t pool_size, std::size_t m, Draws& draws,
                                 PairAt&& pair_at) {
  std::vector<Edge> edges;
  edges.reserve(m);
  if (pool_size <= 4 * m) {
    std::vector<std::size_t> idx(pool_size);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < m; ++i) {
      std::swap(idx[i], idx[i + draws.below(pool_size - i)]);
      edges.push_back(pair_at(idx[i]));
    }
    return edges;
  }
  std::unordered_set<std::size_t> used;
  while (edges.size() < m) {
    const std::size_t i = draws.below(pool_size);
    if (used.insert(i).second) edges.push_back(pair_at(i));
  }
  return edges;
}

std::vector<Edge> power_law_edges(std::size_t n, std::size_t m, Draws& draws) {
  // Expected degree of the rank-r node is proportional to (r+1)^(-1/(gamma-1)).
  const double alpha = 1.0 / (kPowerLawExponent - 1.0);
  std::vector<double> cumulative(n);
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    total += std::pow(static_cast<double>(r + 1), -alpha);
    cumulative[r] = total;
  }
  const auto out_rank = permutation(n, draws);
  const auto in_rank = permutation(n, draws);
  auto pick = [&](const std::vector<NodeId>& rank_to_node) {
    const double u = draws.unit() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto r = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        it - cumulative.begin(), static_cast<std::ptrdiff_t>(n - 1)));
    return rank_to_node[r];
  };

  std::vector<Edge> edges;
  edges.reserve(m);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  const std::size_t max_attempts = 64 * m + 1024;
  for (std::size_t attempt = 0; edges.size() < m; ++attempt) {
    if (attempt == max_attempts) return {};
    const NodeId src = pick(out_rank);
    const NodeId dst = pick(in_rank);
    if (src == dst || !seen.insert(pair_key(src, dst)).second) continue;
    edges.push_back(Edge{src, dst, 0.0});
  }
  return edges;
}

}  // namespace

std::optional<SynthKind> parse_synth_kind(std::string_view text) {
  for (auto kind : {SynthKind::PowerLaw, SynthKind::RandomDag, SynthKind::Random,
                    SynthKind::Chain, SynthKind::Diamond}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::PowerLaw: return "power-law";
    case SynthKind::RandomDag: return "random-dag";
    case SynthKind::Random: return "random";
    case SynthKind::Chain: return "chain";
    case SynthKind::Diamond: return "diamond";
  }
  return "?";
}

UncertainGraph synth_graph(SynthKind kind, std::size_t n, std::size_t m, std::uint64_t seed) {
  Draws draws(seed);
  std::vector<Edge> edges;
  switch (kind) {
    case SynthKind::Chain:
      if (n < 1 || m != n - 1) infeasible(kind, n, m);
      for (NodeId v = 0; v + 1 < n; ++v) edges.push_back(Edge{v, v + 1, 0.0});
      break;
    case SynthKind::Diamond:
      if (n != 4 || m != 4) infeasible(kind, n, m);
      edges = {{0, 1, 0.0}, {0, 2, 0.0}, {1, 3, 0.0}, {2, 3, 0.0}};
      break;
    case SynthKind::RandomDag: {
      if (n < 1 || m > n * (n - 1) / 2) infeasible(kind, n, m);
      const auto order = permutation(n, draws);
      // Pair index -> (i, j) with i < j in the random order.
      std::vector<std::size_t> row_start(n, 0);
      for (std::size_t i = 1; i < n; ++i) row_start[i] = row_start[i - 1] + (n - i);
      edges = distinct_pairs(n * (n - 1) / 2, m, draws, [&](std::size_t idx) {
        auto it = std::upper_bound(row_start.begin(), row_start.end(), idx);
        const std::size_t i = static_cast<std::size_t>(it - row_start.begin()) - 1;
        const std::size_t j = i + 1 + (idx - row_start[i]);
        return Edge{order[i], order[j], 0.0};
      });
      break;
    }
    case SynthKind::Random:
      if (n < 1 || m > n * (n - 1)) infeasible(kind, n, m);
      edges = distinct_pairs(n * (n - 1), m, draws, [&](std::size_t idx) {
        const auto src = static_cast<NodeId>(idx / (n - 1));
        auto dst = static_cast<NodeId>(idx % (n - 1));
        if (dst >= src) ++dst;
        return Edge{src, dst, 0.0};
      });
      break;
    case SynthKind::PowerLaw:
      if (n < 2 || m > n * (n - 1) / 2) infeasible(kind, n, m);
      edges = power_law_edges(n, m, draws);
      if (edges.size() != m) infeasible(kind, n, m);
      break;
  }
  return assign_random_probabilities(topology(n, std::move(edges)), seed);
}

namespace fixtures {

UncertainGraph example_chain() {
  return UncertainGraph({"A", "B"}, {0.2, 0.2}, {Edge{0, 1, 0.2}});
}

UncertainGraph diamond_witness() {
  return UncertainGraph({"r", "x1", "x2", "v"}, {0.5, 0.0, 0.0, 0.0},
                        {Edge{0, 1, 1.0}, Edge{0, 2, 1.0}, Edge{1, 3, 0.5}, Edge{2, 3, 0.5}});
}

UncertainGraph toy_guarantee_network(double p) {
  return UncertainGraph({"A", "B", "C", "D", "E"}, std::vector<double>(5, p),
                        {Edge{0, 1, p}, Edge{0, 2, p}, Edge{1, 3, p}, Edge{2, 3, p},
                         Edge{3, 4, p}, Edge{2, 4, p}});
}

}  // namespace fixtures

}  // namespace vulnk
