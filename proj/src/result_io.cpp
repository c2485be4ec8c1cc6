#include <charconv>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "vulnk/error.hpp"
#include "vulnk/harness.hpp"

namespace vulnk {

namespace {

constexpr std::string_view kColumns = "rank\tnode\testimate\tverified\testimator";

void write_rows(std::span<const RankedEntry> entries, const UncertainGraph& g,
                std::ostream& out) {
  out << kColumns << '\n';
  std::size_t rank = 0;
  for (const auto& e : entries) {
    out << ++rank << '\t' << g.label(e.node) << '\t' << format_double(e.estimate) << '\t'
        << (e.verified ? 1 : 0) << '\t' << to_string(e.estimator) << '\n';
  }
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::MalformedLine, "result line " + std::to_string(line_no) +
                                              ": bad number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void write_topk_tsv(const TopKResult& result, const UncertainGraph& g, std::ostream& out,
                    std::string_view note) {
  const auto& info = result.info;
  if (!note.empty()) out << "# " << note << '\n';
  out << "# method=" << to_string(result.method) << " k=" << info.k << " seed=" << info.seed
      << '\n';
  out << "# eps=" << format_double(info.params.eps)
      << " delta=" << format_double(info.params.delta) << " z=" << info.z << " bk=" << info.bk
      << '\n';
  out << "# t_planned=" << info.samples_planned << " t_used=" << info.samples_used
      << " candidates=" << info.candidates << " verified=" << info.verified << '\n';
  write_rows(result.entries, g, out);
}

void write_truth_tsv(const GroundTruth& truth, const UncertainGraph& g, std::ostream& out) {
  out << "# ground-truth samples=" << truth.samples << " seed=" << truth.seed
      << " k=" << truth.k() << '\n';
  std::vector<RankedEntry> entries;
  for (std::size_t i = 0; i < truth.ranking.size(); ++i) {
    entries.push_back(RankedEntry{truth.ranking[i], truth.probability[i], false,
                                  Estimator::Frequency});
  }
  write_rows(entries, g, out);
}

void write_bounds_tsv(const BoundTable& bounds, const UncertainGraph& g, std::ostream& out) {
  out << "# z=" << bounds.z << '\n';
  out << "node\tp_l\tp_u\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << g.label(v) << '\t' << format_double(bounds.lower[v]) << '\t'
        << format_double(bounds.upper[v]) << '\n';
  }
}

std::vector<ResultRow> read_topk_tsv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#' || line == kColumns) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (auto tab = rest.find('\t'); tab != std::string_view::npos; tab = rest.find('\t')) {
      fields.push_back(rest.substr(0, tab));
      rest.remove_prefix(tab + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 5) {
      throw Error(ErrorCode::MalformedLine,
                  "result line " + std::to_string(line_no) + ": expected 5 columns");
    }
    const auto estimator = parse_estimator(fields[4]);
    if (!estimator || (fields[3] != "0" && fields[3] != "1")) {
      throw Error(ErrorCode::MalformedLine, "result line " + std::to_string(line_no));
    }
    rows.push_back(ResultRow{parse_number<std::size_t>(fields[0], line_no), std::string(fields[1]),
                             parse_number<double>(fields[2], line_no), fields[3] == "1",
                             *estimator});
  }
  return rows;
}

double precision_at_k(std::span<const ResultRow> pred, std::span<const ResultRow> truth) {
  if (pred.size() != truth.size() || truth.empty()) {
    throw Error(ErrorCode::MismatchedK, "prediction has " + std::to_string(pred.size()) +
                                            " rows, truth has " + std::to_string(truth.size()));
  }
  std::unordered_set<std::string> truth_set;
  for (const auto& r : truth) truth_set.insert(r.node);
  std::size_t hits = 0;
  for (const auto& r : pred) hits += truth_set.count(r.node);
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace vulnk
