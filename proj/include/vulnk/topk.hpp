#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "vulnk/graph.hpp"

namespace vulnk {

enum class Method { N, SN, SR, BSR, BSRBK, Oracle };

/// Which computation produced a reported estimate.
enum class Estimator {
  Exact,       // possible-world enumeration
  Frequency,   // v^c / t
  BottomK,     // (bk - 1) / (h^bk * t)
  LowerBound,  // bound-verified or rank-fixed without sampling; reports p_l
};

std::string_view to_string(Method m);
std::string_view to_string(Estimator e);
std::optional<Method> parse_method(std::string_view text);
std::optional<Estimator> parse_estimator(std::string_view text);

/// (epsilon, delta) of the approximation guarantee; both strictly in (0,1).
struct ApproxParams {
  double eps = 0.3;
  double delta = 0.1;
};

void validate(const ApproxParams& params);

struct RankedEntry {
  NodeId node;
  double estimate;
  bool verified;
  Estimator estimator;
};

/// Provenance for a TopKResult. Fields that do not apply to a method stay 0.
struct RunInfo {
  std::size_t k = 0;
  ApproxParams params{};
  int z = 0;
  int bk = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples_planned = 0;
  std::uint64_t samples_used = 0;
  std::size_t candidates = 0;
  std::size_t verified = 0;
};

struct TopKResult {
  Method method = Method::N;
  std::vector<RankedEntry> entries;
  RunInfo info;
  double wall_seconds = 0.0;

  std::vector<NodeId> nodes() const;
};

/// Indices of the k largest scores, ordered by score descending then
/// NodeId ascending. `pool` restricts the selection; empty means all nodes.
template <typename Score>
std::vector<NodeId> top_by_score(std::span<const Score> scores, std::size_t k,
                                 std::span<const NodeId> pool = {});

extern template std::vector<NodeId> top_by_score<double>(std::span<const double>,
                                                          std::size_t,
                                                          std::span<const NodeId>);
extern template std::vector<NodeId> top_by_score<std::uint64_t>(
    std::span<const std::uint64_t>, std::size_t, std::span<const NodeId>);

/// Throws InvalidK unless 1 <= k <= n.
void check_k(std::size_t k, std::size_t n);

}  // namespace vulnk
