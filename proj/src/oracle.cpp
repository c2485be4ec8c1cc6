#include "vulnk/oracle.hpp"

#include <algorithm>
#include <chrono>

#include "vulnk/error.hpp"

namespace vulnk {

namespace {

void check_budget(const UncertainGraph& g) {
  if (g.node_count() + g.edge_count() > kOracleBudget) {
    throw Error(ErrorCode::BudgetExceeded,
                "oracle enumerates 2^(n+m) worlds; n+m=" +
                    std::to_string(g.node_count() + g.edge_count()) + " exceeds " +
                    std::to_string(kOracleBudget));
  }
}

// The world index packs node bits [0, n) and edge bits [n, n+m). Its
// probability factorises into a low-bit table times a high-bit table,
// which keeps both tables at most 2^12 entries.
class WorldProbabilities {
 public:
  explicit WorldProbabilities(const UncertainGraph& g) {
    std::vector<double> bit_prob;
    for (double p : g.self_risks()) bit_prob.push_back(p);
    for (const auto& e : g.edges()) bit_prob.push_back(e.prob);
    bits_ = static_cast<unsigned>(bit_prob.size());
    low_bits_ = bits_ / 2;
    low_ = table(bit_prob, 0, low_bits_);
    high_ = table(bit_prob, low_bits_, bits_);
  }

  std::uint64_t world_count() const { return std::uint64_t{1} << bits_; }

  double operator()(std::uint64_t w) const {
    return low_[w & ((std::uint64_t{1} << low_bits_) - 1)] * high_[w >> low_bits_];
  }

 private:
  static std::vector<double> table(const std::vector<double>& p, unsigned from, unsigned to) {
    std::vector<double> t(std::size_t{1} << (to - from), 1.0);
    for (std::size_t x = 0; x < t.size(); ++x) {
      double prod = 1.0;
      for (unsigned b = from; b < to; ++b) {
        prod *= (x >> (b - from)) & 1U ? p[b] : 1.0 - p[b];
      }
      t[x] = prod;
    }
    return t;
  }

  unsigned bits_ = 0;
  unsigned low_bits_ = 0;
  std::vector<double> low_;
  std::vector<double> high_;
};

PossibleWorld unpack(std::uint64_t w, std::size_t n) {
  const std::uint64_t node_mask = (std::uint64_t{1} << n) - 1;
  return PossibleWorld{static_cast<std::uint32_t>(w & node_mask),
                       static_cast<std::uint32_t>(w >> n)};
}

}  // namespace

std::uint32_t defaulted_in(const UncertainGraph& g, PossibleWorld world) {
  std::uint32_t active = world.self_defaults;
  bool changed = true;
  while (changed) {
    changed = false;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!((world.surviving_edges >> e) & 1U)) continue;
      const auto& edge = g.edge(e);
      if (((active >> edge.src) & 1U) && !((active >> edge.dst) & 1U)) {
        active |= std::uint32_t{1} << edge.dst;
        changed = true;
      }
    }
  }
  return active;
}

void for_each_world(const UncertainGraph& g,
                    const std::function<void(PossibleWorld, double, std::uint32_t)>& visit) {
  check_budget(g);
  const WorldProbabilities prob(g);
  for (std::uint64_t w = 0; w < prob.world_count(); ++w) {
    const auto world = unpack(w, g.node_count());
    visit(world, prob(w), defaulted_in(g, world));
  }
}

std::vector<double> exact_default_probabilities(const UncertainGraph& g) {
  check_budget(g);
  const std::size_t n = g.node_count();
  const WorldProbabilities prob(g);
  const std::uint64_t worlds = prob.world_count();

  // Fixed chunking, reduced in chunk order: the sum does not depend on the
  // thread count.
  const std::int64_t chunks = static_cast<std::int64_t>(std::min<std::uint64_t>(worlds, 1024));
  const std::uint64_t per_chunk = (worlds + chunks - 1) / chunks;
  std::vector<double> partial(static_cast<std::size_t>(chunks) * n, 0.0);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < chunks; ++c) {
    double* acc = partial.data() + static_cast<std::size_t>(c) * n;
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * per_chunk;
    const std::uint64_t end = std::min(worlds, begin + per_chunk);
    for (std::uint64_t w = begin; w < end; ++w) {
      const double p = prob(w);
      std::uint32_t mask = defaulted_in(g, unpack(w, n));
      while (mask) {
        const int v = __builtin_ctz(mask);
        acc[v] += p;
        mask &= mask - 1;
      }
    }
  }

  std::vector<double> result(n, 0.0);
  for (std::int64_t c = 0; c < chunks; ++c) {
    for (std::size_t v = 0; v < n; ++v) result[v] += partial[static_cast<std::size_t>(c) * n + v];
  }
  return result;
}

TopKResult exact_topk(const UncertainGraph& g, std::size_t k) {
  check_k(k, g.node_count());
  const auto start = std::chrono::steady_clock::now();
  const auto p = exact_default_probabilities(g);
  TopKResult result;
  result.method = Method::Oracle;
  for (NodeId v : top_by_score<double>(p, k)) {
    result.entries.push_back(RankedEntry{v, p[v], false, Estimator::Exact});
  }
  result.info.k = k;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace vulnk
