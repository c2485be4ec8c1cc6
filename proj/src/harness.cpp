#include "vulnk/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <unordered_set>

#include "vulnk/coins.hpp"
#include "vulnk/error.hpp"
#include "vulnk/forward_sampler.hpp"
#include "vulnk/oracle.hpp"
#include "vulnk/reverse_sampler.hpp"

namespace vulnk {

GroundTruth GroundTruth::truncated(std::size_t k) const {
  check_k(k, ranking.size());
  GroundTruth out = *this;
  out.ranking.resize(k);
  out.probability.resize(k);
  return out;
}

GroundTruth ground_truth(const UncertainGraph& g, std::size_t k, std::uint64_t samples,
                         std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::InvalidArguments, "ground truth needs samples >= 1");
  if (k == 0) k = g.node_count();
  check_k(k, g.node_count());
  const auto table = forward_counts(g, samples, seed);
  GroundTruth truth;
  truth.samples = samples;
  truth.seed = seed;
  truth.ranking = top_by_score<std::uint64_t>(table.counts, k);
  for (NodeId v : truth.ranking) truth.probability.push_back(table.estimate(v));
  return truth;
}

double precision_at_k(std::span<const NodeId> pred, std::span<const NodeId> truth) {
  if (pred.size() != truth.size() || truth.empty()) {
    throw Error(ErrorCode::MismatchedK, "prediction has " + std::to_string(pred.size()) +
                                            " nodes, truth has " + std::to_string(truth.size()));
  }
  const std::unordered_set<NodeId> truth_set(truth.begin(), truth.end());
  const auto hits = std::count_if(pred.begin(), pred.end(),
                                  [&](NodeId v) { return truth_set.count(v) > 0; });
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double precision_at_k(const TopKResult& pred, const GroundTruth& truth) {
  const auto nodes = pred.nodes();
  return precision_at_k(nodes, truth.ranking);
}

TopKResult run_method(const UncertainGraph& g, Method method, std::size_t k,
                      const MethodConfig& config, std::uint64_t seed) {
  switch (method) {
    case Method::N: return estimate_topk_basic(g, k, config.fixed_samples, seed);
    case Method::SN: return sn_topk(g, k, config.params, seed);
    case Method::SR: return bsr_topk(g, k, config.params, config.z, seed, false);
    case Method::BSR: return bsr_topk(g, k, config.params, config.z, seed, true);
    case Method::BSRBK: return bsrbk_topk(g, k, config.params, config.z, config.bk, seed);
    case Method::Oracle: return exact_topk(g, k);
  }
  throw Error(ErrorCode::InvalidArguments, "unknown method");
}

std::size_t parse_k(std::string_view text, std::size_t n) {
  const bool percent = !text.empty() && text.back() == '%';
  if (percent) text.remove_suffix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !(value > 0.0)) {
    throw Error(ErrorCode::InvalidK, "cannot parse k from '" + std::string(text) + "'");
  }
  std::size_t k = 0;
  if (percent) {
    k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(value / 100.0 * static_cast<double>(n))));
  } else {
    if (value != std::floor(value)) {
      throw Error(ErrorCode::InvalidK, "k must be an integer or a percentage");
    }
    k = static_cast<std::size_t>(value);
  }
  check_k(k, n);
  return k;
}

std::uint64_t truth_seed_for(std::uint64_t seed) { return mix64(seed ^ 0x7275746874727574ULL); }

std::vector<std::size_t> percent_sweep(std::size_t n) {
  std::vector<std::size_t> ks;
  for (int pct = 1; pct <= 10; ++pct) {
    const auto k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(pct / 100.0 * static_cast<double>(n))));
    if (k <= n && (ks.empty() || ks.back() != k)) ks.push_back(k);
  }
  return ks;
}

std::vector<BenchRow> bench(const UncertainGraph& g, std::span<const std::size_t> ks,
                            std::span<const Method> methods, const BenchOptions& options,
                            std::uint64_t seed) {
  if (ks.empty() || methods.empty()) return {};
  const std::size_t max_k = *std::max_element(ks.begin(), ks.end());
  const auto truth = ground_truth(g, max_k, options.truth_samples, truth_seed_for(seed));
  std::vector<BenchRow> rows;
  for (std::size_t k : ks) {
    const auto truth_k = truth.truncated(k);
    for (Method method : methods) {
      if (options.warmup) (void)run_method(g, method, k, options.config, seed);
      const auto result = run_method(g, method, k, options.config, seed);
      rows.push_back(BenchRow{method, k, result.info.samples_planned, result.info.samples_used,
                              result.info.candidates, result.info.verified, result.wall_seconds,
                              precision_at_k(result, truth_k)});
    }
  }
  return rows;
}

namespace {

template <typename Row>
void write_rows(std::span<const BenchRow> rows, std::ostream& out, char sep, Row&& header) {
  out << header;
  for (const auto& r : rows) {
    out << to_string(r.method) << sep << r.k << sep << r.samples_planned << sep << r.samples_used
        << sep << r.candidates << sep << r.verified << sep << format_double(r.wall_seconds) << sep
        << format_double(r.precision) << '\n';
  }
}

}  // namespace

void write_bench_tsv(std::span<const BenchRow> rows, std::ostream& out) {
  write_rows(rows, out, '\t',
             "method\tk\tt_planned\tt_used\tcandidates\tverified\twall_seconds\tprecision\n");
}

void write_bench_csv(std::span<const BenchRow> rows, std::ostream& out) {
  write_rows(rows, out, ',',
             "method,k,t_planned,t_used,candidates,verified,wall_seconds,precision\n");
}

}  // namespace vulnk
