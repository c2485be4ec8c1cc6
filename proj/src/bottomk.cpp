#include "vulnk/bottomk.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "vulnk/bounds.hpp"
#include "vulnk/coins.hpp"
#include "vulnk/error.hpp"
#include "vulnk/reverse_sampler.hpp"

namespace vulnk {

namespace {

void check_bk(int bk) {
  if (bk < 2) throw Error(ErrorCode::InvalidBk, "bk must be >= 2, got " + std::to_string(bk));
}

}  // namespace

double bottomk_estimate(int bk, double kth_hash, std::uint64_t t) {
  check_bk(bk);
  if (t < 1) throw Error(ErrorCode::InvalidArguments, "t must be >= 1");
  if (!(kth_hash > 0.0 && kth_hash <= 1.0)) {
    throw Error(ErrorCode::InvalidArguments, "hash must lie in (0,1]");
  }
  const double est = static_cast<double>(bk - 1) / (kth_hash * static_cast<double>(t));
  return std::clamp(est, 0.0, 1.0);
}

double bottomk_expected_relative_error(int bk) {
  if (bk < 3) throw Error(ErrorCode::InvalidBk, "relative error is defined for bk >= 3");
  return std::sqrt(2.0 / (std::numbers::pi * static_cast<double>(bk - 2)));
}

double SampleHashStream::hash_of(std::uint64_t seed, std::uint64_t index) {
  return to_open_unit(keyed_bits(derive_key(seed, Stream::SampleHash, 0), index));
}

SampleHashStream::SampleHashStream(std::uint64_t seed, std::uint64_t t) : seed_(seed) {
  std::vector<std::pair<double, std::uint64_t>> keyed;
  keyed.reserve(t);
  for (std::uint64_t i = 1; i <= t; ++i) keyed.emplace_back(hash_of(seed, i), i);
  std::sort(keyed.begin(), keyed.end());
  order_.reserve(t);
  for (const auto& [h, i] : keyed) order_.push_back(i);
}

BottomKRun run_bottomk(const ReversedGraph& gt, std::span<const NodeId> candidates,
                       const SampleHashStream& stream, std::uint64_t seed, int bk,
                       std::size_t needed) {
  check_bk(bk);
  BottomKRun run;
  run.counts.assign(candidates.size(), 0);
  if (needed == 0 || candidates.empty()) return run;

  const int threads = omp_get_max_threads();
  const std::size_t batch = threads > 1 ? static_cast<std::size_t>(threads) * 4 : 1;
  std::vector<ReverseSampler> samplers;
  samplers.reserve(static_cast<std::size_t>(threads));
  for (int i = 0; i < threads; ++i) samplers.emplace_back(gt);
  std::vector<std::uint8_t> hits(batch * candidates.size());
  std::vector<std::uint8_t> finished(candidates.size(), 0);
  const auto order = stream.order();
  const std::uint64_t t = stream.size();

  for (std::uint64_t base = 0; base < t; base += batch) {
    const auto width = static_cast<std::int64_t>(std::min<std::uint64_t>(batch, t - base));
#pragma omp parallel for schedule(static, 1) if (width > 1)
    for (std::int64_t j = 0; j < width; ++j) {
      auto& sampler = samplers[static_cast<std::size_t>(omp_get_thread_num())];
      std::span<std::uint8_t> row(hits.data() + static_cast<std::size_t>(j) * candidates.size(),
                                  candidates.size());
      sampler.sample(WorldCoins(seed, order[base + static_cast<std::uint64_t>(j)]), candidates,
                     row);
    }
    for (std::int64_t j = 0; j < width; ++j) {
      const std::uint64_t position = base + static_cast<std::uint64_t>(j);
      const std::uint8_t* row = hits.data() + static_cast<std::size_t>(j) * candidates.size();
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (!row[c]) continue;
        if (++run.counts[c] == static_cast<std::uint64_t>(bk) && !finished[c] &&
            run.finished.size() < needed) {
          finished[c] = 1;
          const double h = stream.hash(order[position]);
          run.finished.push_back(
              FinishRecord{candidates[c], h, bottomk_estimate(bk, h, t), position});
        }
      }
      run.processed = position + 1;
      if (run.finished.size() >= needed) return run;
    }
  }
  run.exhausted = true;
  return run;
}

TopKResult bsrbk_topk(const UncertainGraph& g, std::size_t k, const ApproxParams& params, int z,
                      int bk, std::uint64_t seed) {
  check_k(k, g.node_count());
  validate(params);
  check_bk(bk);
  const auto start = std::chrono::steady_clock::now();

  const auto bounds = compute_bounds(g, z);
  const auto report = reduce_candidates(bounds, k, true);
  const std::size_t need = k - report.k_prime();
  const std::uint64_t t = reduced_sample_size(report.candidates.size(), k, report.k_prime(), params);

  TopKResult result;
  result.method = Method::BSRBK;
  detail::append_verified(result, report, bounds);
  std::uint64_t used = 0;
  if (need > 0 && t == 0) {
    detail::append_by_lower_bound(result, report.candidates, bounds);
  } else if (need > 0) {
    const ReversedGraph gt(g);
    const SampleHashStream stream(seed, t);
    const auto run = run_bottomk(gt, report.candidates, stream, seed, bk, need);
    used = run.processed;
    std::vector<std::uint8_t> taken(g.node_count(), 0);
    for (const auto& f : run.finished) {
      result.entries.push_back(RankedEntry{f.node, f.estimate, false, Estimator::BottomK});
      taken[f.node] = 1;
    }
    if (run.finished.size() < need) {
      std::vector<std::uint64_t> score(g.node_count(), 0);
      std::vector<NodeId> rest;
      for (std::size_t i = 0; i < report.candidates.size(); ++i) {
        const NodeId v = report.candidates[i];
        score[v] = run.counts[i];
        if (!taken[v]) rest.push_back(v);
      }
      for (NodeId v : top_by_score<std::uint64_t>(score, need - run.finished.size(), rest)) {
        result.entries.push_back(RankedEntry{
            v, static_cast<double>(score[v]) / static_cast<double>(t), false,
            Estimator::Frequency});
      }
    }
  }

  result.info.k = k;
  result.info.params = params;
  result.info.z = z;
  result.info.bk = bk;
  result.info.seed = seed;
  result.info.samples_planned = t;
  result.info.samples_used = used;
  result.info.candidates = report.candidates.size();
  result.info.verified = report.k_prime();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace vulnk
