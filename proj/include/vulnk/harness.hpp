#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vulnk/bottomk.hpp"
#include "vulnk/bounds.hpp"
#include "vulnk/graph.hpp"
#include "vulnk/topk.hpp"

namespace vulnk {

inline constexpr std::uint64_t kGroundTruthSamples = 20000;

/// Reference ranking from a large fixed-sample forward run.
struct GroundTruth {
  std::vector<NodeId> ranking;       // descending probability, NodeId tie-break
  std::vector<double> probability;   // aligned with ranking
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  std::size_t k() const { return ranking.size(); }
  /// P^k: probability of the rank-k node.
  double kth_probability() const { return probability.back(); }
  GroundTruth truncated(std::size_t k) const;
};

/// Top-k by forward sampling with `samples` worlds; k = 0 keeps all nodes.
GroundTruth ground_truth(const UncertainGraph& g, std::size_t k,
                         std::uint64_t samples = kGroundTruthSamples, std::uint64_t seed = 0);

/// |pred ∩ truth| / k. Throws MismatchedK if the sizes differ.
double precision_at_k(std::span<const NodeId> pred, std::span<const NodeId> truth);
double precision_at_k(const TopKResult& pred, const GroundTruth& truth);

/// Knobs shared by every method in a comparison.
struct MethodConfig {
  ApproxParams params{};
  int z = kDefaultBoundOrder;
  int bk = kDefaultBk;
  std::uint64_t fixed_samples = kGroundTruthSamples;  // method N
};

TopKResult run_method(const UncertainGraph& g, Method method, std::size_t k,
                      const MethodConfig& config, std::uint64_t seed);

/// "25" -> 25; "5%" -> round(0.05 n), at least 1. Result is checked
/// against 1 <= k <= n.
std::size_t parse_k(std::string_view text, std::size_t n);

/// Seed used for the ground-truth run of a benchmark with method seed
/// `seed`; distinct so truth and method N do not share worlds.
std::uint64_t truth_seed_for(std::uint64_t seed);

struct BenchRow {
  Method method;
  std::size_t k;
  std::uint64_t samples_planned;
  std::uint64_t samples_used;
  std::size_t candidates;
  std::size_t verified;
  double wall_seconds;
  double precision;
};

struct BenchOptions {
  MethodConfig config{};
  std::uint64_t truth_samples = kGroundTruthSamples;
  bool warmup = true;
};

/// Runs every method for every k with the same seed. Timings exclude one
/// untimed warm-up run per (method, k) when options.warmup is set.
std::vector<BenchRow> bench(const UncertainGraph& g, std::span<const std::size_t> ks,
                            std::span<const Method> methods, const BenchOptions& options,
                            std::uint64_t seed);

/// k = 1%..10% of n, deduplicated.
std::vector<std::size_t> percent_sweep(std::size_t n);

void write_bench_tsv(std::span<const BenchRow> rows, std::ostream& out);
void write_bench_csv(std::span<const BenchRow> rows, std::ostream& out);

// ---- result files ----

/// One parsed row of a top-k TSV file.
struct ResultRow {
  std::size_t rank;
  std::string node;
  double estimate;
  bool verified;
  Estimator estimator;
};

/// `# key=value` provenance lines, a column header, then
/// rank<TAB>node<TAB>estimate<TAB>verified<TAB>estimator rows. Contains
/// no timing, so identical runs give identical bytes.
void write_topk_tsv(const TopKResult& result, const UncertainGraph& g, std::ostream& out,
                    std::string_view note = {});
std::vector<ResultRow> read_topk_tsv(std::istream& in);

/// Ground truth in the same TSV layout, estimator "frequency".
void write_truth_tsv(const GroundTruth& truth, const UncertainGraph& g, std::ostream& out);

/// node<TAB>p_l<TAB>p_u per node.
void write_bounds_tsv(const BoundTable& bounds, const UncertainGraph& g, std::ostream& out);

/// Precision of the node set in `pred` against `truth`.
double precision_at_k(std::span<const ResultRow> pred, std::span<const ResultRow> truth);

}  // namespace vulnk
