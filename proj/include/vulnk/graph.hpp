#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vulnk {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  NodeId src;
  NodeId dst;
  double prob;  // diffusion probability p(dst | src)

  friend bool operator==(const Edge&, const Edge&) = default;
};

// One adjacency entry: the node on the other end plus the id of the edge
// that connects them. Edge ids index UncertainGraph::edges().
struct Arc {
  NodeId node;
  EdgeId edge;
};

/// Directed graph with a self-risk probability per node and a diffusion
/// probability per edge. Immutable once built; CSR indexes in both
/// directions. Construction validates every invariant and throws
/// vulnk::Error on violation.
class UncertainGraph {
 public:
  UncertainGraph() = default;

  /// Labels may be empty, in which case decimal ids are used.
  UncertainGraph(std::vector<std::string> labels, std::vector<double> self_risk,
                 std::vector<Edge> edges);

  std::size_t node_count() const { return self_risk_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  double self_risk(NodeId v) const { return self_risk_[v]; }
  std::span<const double> self_risks() const { return self_risk_; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Arc> out_arcs(NodeId v) const {
    return {out_arcs_.data() + out_offsets_[v], out_arcs_.data() + out_offsets_[v + 1]};
  }
  /// N(v): the in-neighbours whose defaults can propagate into v.
  std::span<const Arc> in_arcs(NodeId v) const {
    return {in_arcs_.data() + in_offsets_[v], in_arcs_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(NodeId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

  const std::string& label(NodeId v) const { return labels_[v]; }
  std::span<const std::string> labels() const { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;

  /// Same topology and labels with new probability tables.
  UncertainGraph with_probabilities(std::vector<double> self_risk,
                                    std::vector<double> edge_probs) const;

  friend bool operator==(const UncertainGraph& a, const UncertainGraph& b) {
    return a.labels_ == b.labels_ && a.self_risk_ == b.self_risk_ && a.edges_ == b.edges_;
  }

 private:
  void build_indexes();

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> by_label_;
  std::vector<double> self_risk_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<Arc> out_arcs_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<Arc> in_arcs_;
};

/// Edge-transposed view of a graph. Edge ids are preserved, so edge e of the
/// reversed graph is edge e of the original pointing the other way; coins
/// keyed by edge id therefore describe the same world on both sides.
class ReversedGraph {
 public:
  explicit ReversedGraph(const UncertainGraph& original);

  const UncertainGraph& graph() const { return transposed_; }
  std::size_t node_count() const { return transposed_.node_count(); }
  std::size_t edge_count() const { return transposed_.edge_count(); }

 private:
  UncertainGraph transposed_;
};

UncertainGraph transpose(const UncertainGraph& g);
ReversedGraph reverse(const UncertainGraph& g);
/// Undoes reverse(): recovers the original orientation.
UncertainGraph reverse(const ReversedGraph& gt);

/// Node lines: `label<TAB>p_self`. Edge lines: `src<TAB>dst<TAB>p_diff`.
/// Blank lines and lines starting with '#' are skipped.
UncertainGraph parse_graph(std::istream& nodes, std::istream& edges);
UncertainGraph load_graph(const std::string& nodes_path, const std::string& edges_path);

/// Inverse of parse_graph. Probabilities are written in shortest
/// round-trip form so re-parsing reproduces identical doubles.
void write_graph(const UncertainGraph& g, std::ostream& nodes, std::ostream& edges);
void save_graph(const UncertainGraph& g, const std::string& nodes_path,
                const std::string& edges_path);

/// Independent uniform [0,1) draws for every self-risk and diffusion
/// probability, a pure function of (seed, entity).
UncertainGraph assign_random_probabilities(const UncertainGraph& g, std::uint64_t seed);

std::string format_double(double x);

}  // namespace vulnk
