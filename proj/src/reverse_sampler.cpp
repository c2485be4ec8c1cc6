#include "vulnk/reverse_sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "vulnk/error.hpp"

namespace vulnk {

ReverseSampler::ReverseSampler(const ReversedGraph& gt)
    : gt_(gt.graph()),
      node_epoch_(gt.node_count(), 0),
      node_state_(gt.node_count(), 0),
      edge_epoch_(gt.edge_count(), 0),
      edge_state_(gt.edge_count(), 0),
      visited_(gt.node_count(), 0) {
  queue_.reserve(gt.node_count());
}

void ReverseSampler::next_epoch() {
  if (++epoch_ == 0) {
    std::fill(node_epoch_.begin(), node_epoch_.end(), 0);
    std::fill(edge_epoch_.begin(), edge_epoch_.end(), 0);
    epoch_ = 1;
  }
}

void ReverseSampler::next_visit() {
  if (++visit_ == 0) {
    std::fill(visited_.begin(), visited_.end(), 0);
    visit_ = 1;
  }
}

bool ReverseSampler::edge_survives(const WorldCoins& coins, EdgeId e) {
  if (edge_epoch_[e] != epoch_) {
    edge_epoch_[e] = epoch_;
    edge_state_[e] = coins.edge_survives(gt_, e) ? Survived : Blocked;
    ++stats_.edge_coins;
  }
  return edge_state_[e] == Survived;
}

bool ReverseSampler::search(const WorldCoins& coins, NodeId candidate) {
  next_visit();
  queue_.clear();
  queue_.push_back(candidate);
  visited_[candidate] = visit_;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const NodeId u = queue_[head];
    ++stats_.pops;
    const auto state = node_state(u);
    if (state == Defaulting) return true;
    if (state == 0) {
      node_epoch_[u] = epoch_;
      ++stats_.node_coins;
      if (coins.self_defaults(gt_, u)) {
        node_state_[u] = Defaulting;
        return true;
      }
      node_state_[u] = Clean;
    }
    // Out-arcs of the reversed graph are the original in-edges of u.
    for (const Arc& arc : gt_.out_arcs(u)) {
      if (visited_[arc.node] == visit_) continue;
      if (!edge_survives(coins, arc.edge)) continue;
      visited_[arc.node] = visit_;
      queue_.push_back(arc.node);
    }
  }
  return false;
}

void ReverseSampler::sample(const WorldCoins& coins, std::span<const NodeId> candidates,
                            std::span<std::uint8_t> hits) {
  next_epoch();
  stats_ = {};
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const NodeId v = candidates[i];
    const bool hit = search(coins, v);
    hits[i] = hit ? 1 : 0;
    if (hit) {
      node_epoch_[v] = epoch_;
      node_state_[v] = Defaulting;
    }
  }
}

std::vector<std::uint64_t> reverse_counts(const ReversedGraph& gt,
                                          std::span<const NodeId> candidates, std::uint64_t t,
                                          std::uint64_t seed) {
  std::vector<std::uint64_t> counts(candidates.size(), 0);
  const auto total = static_cast<std::int64_t>(t);
#pragma omp parallel
  {
    ReverseSampler sampler(gt);
    std::vector<std::uint8_t> hits(candidates.size());
    std::vector<std::uint64_t> local(candidates.size(), 0);
#pragma omp for schedule(dynamic, 8) nowait
    for (std::int64_t i = 1; i <= total; ++i) {
      sampler.sample(WorldCoins(seed, static_cast<std::uint64_t>(i)), candidates, hits);
      for (std::size_t c = 0; c < hits.size(); ++c) local[c] += hits[c];
    }
#pragma omp critical(vulnk_reverse_reduce)
    for (std::size_t c = 0; c < local.size(); ++c) counts[c] += local[c];
  }
  return counts;
}

std::uint64_t reduced_sample_size(std::size_t candidate_count, std::size_t k,
                                  std::size_t k_prime, const ApproxParams& params) {
  validate(params);
  if (k_prime > k) {
    throw Error(ErrorCode::InvalidArguments, "k' exceeds k");
  }
  const std::size_t remaining = k - k_prime;
  if (candidate_count < remaining) {
    throw Error(ErrorCode::InvalidArguments,
                "candidate set smaller than k - k' (" + std::to_string(candidate_count) + " < " +
                    std::to_string(remaining) + ")");
  }
  if (remaining == 0 || candidate_count == remaining) return 0;
  const double pairs =
      static_cast<double>(remaining) * static_cast<double>(candidate_count - remaining);
  const double t = 2.0 / (params.eps * params.eps) * std::log(pairs / params.delta);
  return static_cast<std::uint64_t>(std::ceil(t));
}

namespace detail {

void append_verified(TopKResult& result, const CandidateReport& report,
                     const BoundTable& bounds) {
  for (NodeId v : report.verified) {
    result.entries.push_back(RankedEntry{v, bounds.lower[v], true, Estimator::LowerBound});
  }
}

void append_by_lower_bound(TopKResult& result, std::span<const NodeId> nodes,
                           const BoundTable& bounds) {
  if (nodes.empty()) return;
  for (NodeId v : top_by_score<double>(bounds.lower, nodes.size(), nodes)) {
    result.entries.push_back(RankedEntry{v, bounds.lower[v], false, Estimator::LowerBound});
  }
}

}  // namespace detail

TopKResult bsr_topk(const UncertainGraph& g, std::size_t k, const ApproxParams& params, int z,
                    std::uint64_t seed, bool use_verification) {
  check_k(k, g.node_count());
  validate(params);
  const auto start = std::chrono::steady_clock::now();

  const auto bounds = compute_bounds(g, z);
  const auto report = reduce_candidates(bounds, k, use_verification);
  const std::size_t need = k - report.k_prime();
  const std::uint64_t t = reduced_sample_size(report.candidates.size(), k, report.k_prime(), params);

  TopKResult result;
  result.method = use_verification ? Method::BSR : Method::SR;
  detail::append_verified(result, report, bounds);
  if (need > 0 && t == 0) {
    detail::append_by_lower_bound(result, report.candidates, bounds);
  } else if (need > 0) {
    const ReversedGraph gt(g);
    const auto counts = reverse_counts(gt, report.candidates, t, seed);
    // Rank candidates through a full-length score table so ties fall back
    // to NodeId.
    std::vector<std::uint64_t> score(g.node_count(), 0);
    for (std::size_t i = 0; i < counts.size(); ++i) score[report.candidates[i]] = counts[i];
    for (NodeId v : top_by_score<std::uint64_t>(score, need, report.candidates)) {
      result.entries.push_back(RankedEntry{
          v, static_cast<double>(score[v]) / static_cast<double>(t), false, Estimator::Frequency});
    }
  }

  result.info.k = k;
  result.info.params = params;
  result.info.z = z;
  result.info.seed = seed;
  result.info.samples_planned = t;
  result.info.samples_used = need > 0 ? t : 0;
  result.info.candidates = report.candidates.size();
  result.info.verified = report.k_prime();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace vulnk
