#include "vulnk/topk.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <string>

#include "vulnk/error.hpp"

namespace vulnk {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::N: return "N";
    case Method::SN: return "SN";
    case Method::SR: return "SR";
    case Method::BSR: return "BSR";
    case Method::BSRBK: return "BSRBK";
    case Method::Oracle: return "ORACLE";
  }
  return "?";
}

std::string_view to_string(Estimator e) {
  switch (e) {
    case Estimator::Exact: return "exact";
    case Estimator::Frequency: return "frequency";
    case Estimator::BottomK: return "bottomk";
    case Estimator::LowerBound: return "lower-bound";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "n") return Method::N;
  if (lower == "sn") return Method::SN;
  if (lower == "sr") return Method::SR;
  if (lower == "bsr") return Method::BSR;
  if (lower == "bsrbk") return Method::BSRBK;
  if (lower == "oracle") return Method::Oracle;
  return std::nullopt;
}

std::optional<Estimator> parse_estimator(std::string_view text) {
  for (auto e : {Estimator::Exact, Estimator::Frequency, Estimator::BottomK,
                 Estimator::LowerBound}) {
    if (to_string(e) == text) return e;
  }
  return std::nullopt;
}

void validate(const ApproxParams& params) {
  if (!(params.eps > 0.0 && params.eps < 1.0)) {
    throw Error(ErrorCode::InvalidArguments,
                "eps must lie in (0,1), got " + std::to_string(params.eps));
  }
  if (!(params.delta > 0.0 && params.delta < 1.0)) {
    throw Error(ErrorCode::InvalidArguments,
                "delta must lie in (0,1), got " + std::to_string(params.delta));
  }
}

std::vector<NodeId> TopKResult::nodes() const {
  std::vector<NodeId> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.node);
  return out;
}

template <typename Score>
std::vector<NodeId> top_by_score(std::span<const Score> scores, std::size_t k,
                                 std::span<const NodeId> pool) {
  std::vector<NodeId> ids;
  if (pool.empty()) {
    ids.resize(scores.size());
    std::iota(ids.begin(), ids.end(), NodeId{0});
  } else {
    ids.assign(pool.begin(), pool.end());
  }
  k = std::min(k, ids.size());
  auto better = [&](NodeId a, NodeId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end(),
                    better);
  ids.resize(k);
  return ids;
}

template std::vector<NodeId> top_by_score<double>(std::span<const double>, std::size_t,
                                                   std::span<const NodeId>);
template std::vector<NodeId> top_by_score<std::uint64_t>(std::span<const std::uint64_t>,
                                                          std::size_t,
                                                          std::span<const NodeId>);

void check_k(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) {
    throw Error(ErrorCode::InvalidK,
                "k must satisfy 1 <= k <= n (k=" + std::to_string(k) +
                    ", n=" + std::to_string(n) + ")");
  }
}

}  // namespace vulnk
