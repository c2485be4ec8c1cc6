#include "vulnk/graph.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_set>

#include "vulnk/coins.hpp"
#include "vulnk/error.hpp"

namespace vulnk {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void check_label(const std::string& label) {
  if (label.empty() || label.front() == '#' ||
      label.find_first_of("\t\r\n") != std::string::npos) {
    throw Error(ErrorCode::MalformedLine, "invalid node label '" + label + "'");
  }
}

std::uint64_t edge_key(NodeId src, NodeId dst) {
  return (static_cast<std::uint64_t>(src) << 32) | dst;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

double parse_probability(std::string_view text, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::MalformedLine, where + ": bad number '" + std::string(text) + "'");
  }
  if (!is_probability(value)) {
    throw Error(ErrorCode::ProbabilityOutOfRange,
                where + ": probability " + std::string(text) + " outside [0,1]");
  }
  return value;
}

// Calls fn(fields, location) for every data line.
template <typename Fn>
void for_each_record(std::istream& in, const char* file_kind, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    fn(split_tabs(line), std::string(file_kind) + " line " + std::to_string(line_no));
  }
}

}  // namespace

UncertainGraph::UncertainGraph(std::vector<std::string> labels, std::vector<double> self_risk,
                               std::vector<Edge> edges)
    : labels_(std::move(labels)), self_risk_(std::move(self_risk)), edges_(std::move(edges)) {
  const std::size_t n = self_risk_.size();
  if (n >= std::numeric_limits<NodeId>::max() || edges_.size() >= std::numeric_limits<EdgeId>::max()) {
    throw Error(ErrorCode::InvalidArguments, "graph too large for 32-bit ids");
  }
  if (labels_.empty()) {
    labels_.reserve(n);
    for (std::size_t v = 0; v < n; ++v) labels_.push_back(std::to_string(v));
  }
  if (labels_.size() != n) {
    throw Error(ErrorCode::InvalidArguments, "label count does not match node count");
  }
  by_label_.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    check_label(labels_[v]);
    if (!by_label_.emplace(labels_[v], v).second) {
      throw Error(ErrorCode::DuplicateLabel, "node label '" + labels_[v] + "' repeated");
    }
    if (!is_probability(self_risk_[v])) {
      throw Error(ErrorCode::ProbabilityOutOfRange,
                  "self-risk of '" + labels_[v] + "' outside [0,1]");
    }
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (e.src >= n || e.dst >= n) {
      throw Error(ErrorCode::UnknownLabel, "edge endpoint out of range");
    }
    if (e.src == e.dst) {
      throw Error(ErrorCode::SelfEdge, "self-edge on '" + labels_[e.src] + "'");
    }
    if (!is_probability(e.prob)) {
      throw Error(ErrorCode::ProbabilityOutOfRange, "diffusion probability of '" +
                                                        labels_[e.src] + "'->'" +
                                                        labels_[e.dst] + "' outside [0,1]");
    }
    if (!seen.insert(edge_key(e.src, e.dst)).second) {
      throw Error(ErrorCode::DuplicateEdge,
                  "edge '" + labels_[e.src] + "'->'" + labels_[e.dst] + "' repeated");
    }
  }
  build_indexes();
}

void UncertainGraph::build_indexes() {
  const std::size_t n = self_risk_.size();
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++out_offsets_[e.src + 1];
    ++in_offsets_[e.dst + 1];
  }
  for (std::size_t v = 0; v < n; ++v) {
    out_offsets_[v + 1] += out_offsets_[v];
    in_offsets_[v + 1] += in_offsets_[v];
  }
  out_arcs_.resize(edges_.size());
  in_arcs_.resize(edges_.size());
  std::vector<std::size_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  // Edge-id order inside each adjacency list keeps traversal deterministic.
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    out_arcs_[out_fill[e.src]++] = Arc{e.dst, id};
    in_arcs_[in_fill[e.dst]++] = Arc{e.src, id};
  }
}

std::optional<NodeId> UncertainGraph::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

UncertainGraph UncertainGraph::with_probabilities(std::vector<double> self_risk,
                                                  std::vector<double> edge_probs) const {
  if (self_risk.size() != node_count() || edge_probs.size() != edge_count()) {
    throw Error(ErrorCode::InvalidArguments, "probability table sizes do not match graph");
  }
  std::vector<Edge> edges = edges_;
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].prob = edge_probs[i];
  return UncertainGraph(labels_, std::move(self_risk), std::move(edges));
}

UncertainGraph transpose(const UncertainGraph& g) {
  std::vector<Edge> flipped(g.edges().begin(), g.edges().end());
  for (auto& e : flipped) std::swap(e.src, e.dst);
  return UncertainGraph({g.labels().begin(), g.labels().end()},
                        {g.self_risks().begin(), g.self_risks().end()}, std::move(flipped));
}

ReversedGraph::ReversedGraph(const UncertainGraph& original) : transposed_(transpose(original)) {}

ReversedGraph reverse(const UncertainGraph& g) { return ReversedGraph(g); }

UncertainGraph reverse(const ReversedGraph& gt) { return transpose(gt.graph()); }

UncertainGraph parse_graph(std::istream& nodes, std::istream& edges) {
  std::vector<std::string> labels;
  std::vector<double> self_risk;
  std::unordered_map<std::string, NodeId> ids;
  for_each_record(nodes, "nodes", [&](const auto& fields, const std::string& where) {
    if (fields.size() != 2) {
      throw Error(ErrorCode::MalformedLine, where + ": expected label<TAB>p_self");
    }
    std::string label(fields[0]);
    if (!ids.emplace(label, static_cast<NodeId>(labels.size())).second) {
      throw Error(ErrorCode::DuplicateLabel, where + ": node '" + label + "' repeated");
    }
    self_risk.push_back(parse_probability(fields[1], where));
    labels.push_back(std::move(label));
  });

  std::vector<Edge> edge_list;
  std::unordered_set<std::uint64_t> seen;
  for_each_record(edges, "edges", [&](const auto& fields, const std::string& where) {
    if (fields.size() != 3) {
      throw Error(ErrorCode::MalformedLine, where + ": expected src<TAB>dst<TAB>p_diff");
    }
    auto lookup = [&](std::string_view label) {
      auto it = ids.find(std::string(label));
      if (it == ids.end()) {
        throw Error(ErrorCode::UnknownLabel, where + ": unknown node '" + std::string(label) + "'");
      }
      return it->second;
    };
    const NodeId src = lookup(fields[0]);
    const NodeId dst = lookup(fields[1]);
    const double p = parse_probability(fields[2], where);
    if (src == dst) {
      throw Error(ErrorCode::SelfEdge, where + ": self-edge on '" + std::string(fields[0]) + "'");
    }
    if (!seen.insert(edge_key(src, dst)).second) {
      throw Error(ErrorCode::DuplicateEdge, where + ": edge repeated");
    }
    edge_list.push_back(Edge{src, dst, p});
  });
  return UncertainGraph(std::move(labels), std::move(self_risk), std::move(edge_list));
}

UncertainGraph load_graph(const std::string& nodes_path, const std::string& edges_path) {
  std::ifstream nodes(nodes_path);
  if (!nodes) throw Error(ErrorCode::InvalidArguments, "cannot open " + nodes_path);
  std::ifstream edges(edges_path);
  if (!edges) throw Error(ErrorCode::InvalidArguments, "cannot open " + edges_path);
  return parse_graph(nodes, edges);
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void write_graph(const UncertainGraph& g, std::ostream& nodes, std::ostream& edges) {
  nodes << "# label\tp_self\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    nodes << g.label(v) << '\t' << format_double(g.self_risk(v)) << '\n';
  }
  edges << "# src\tdst\tp_diff\n";
  for (const auto& e : g.edges()) {
    edges << g.label(e.src) << '\t' << g.label(e.dst) << '\t' << format_double(e.prob) << '\n';
  }
}

void save_graph(const UncertainGraph& g, const std::string& nodes_path,
                const std::string& edges_path) {
  std::ofstream nodes(nodes_path);
  if (!nodes) throw Error(ErrorCode::InvalidArguments, "cannot write " + nodes_path);
  std::ofstream edges(edges_path);
  if (!edges) throw Error(ErrorCode::InvalidArguments, "cannot write " + edges_path);
  write_graph(g, nodes, edges);
}

UncertainGraph assign_random_probabilities(const UncertainGraph& g, std::uint64_t seed) {
  const auto node_key = derive_key(seed, Stream::AssignNode, 0);
  const auto edge_key_base = derive_key(seed, Stream::AssignEdge, 0);
  std::vector<double> self_risk(g.node_count());
  for (NodeId v = 0; v < self_risk.size(); ++v) self_risk[v] = to_unit(keyed_bits(node_key, v));
  std::vector<double> probs(g.edge_count());
  for (EdgeId e = 0; e < probs.size(); ++e) probs[e] = to_unit(keyed_bits(edge_key_base, e));
  return g.with_probabilities(std::move(self_risk), std::move(probs));
}

}  // namespace vulnk
