// vulnk: top-k vulnerable node detection on uncertain graphs.

#include <omp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>

#include "vulnk/bounds.hpp"
#include "vulnk/error.hpp"
#include "vulnk/harness.hpp"
#include "vulnk/oracle.hpp"
#include "vulnk/synth.hpp"

namespace {

using namespace vulnk;

struct GraphArgs {
  std::string nodes;
  std::string edges;
};

void add_graph_options(CLI::App* cmd, GraphArgs& args) {
  cmd->add_option("--nodes", args.nodes, "node TSV: label<TAB>p_self")->required();
  cmd->add_option("--edges", args.edges, "edge TSV: src<TAB>dst<TAB>p_diff")->required();
}

// Writes to `path`, or stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw Error(ErrorCode::InvalidArguments, "cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

Method method_from(const std::string& text) {
  auto m = parse_method(text);
  if (!m) throw Error(ErrorCode::InvalidArguments, "unknown method '" + text + "'");
  return *m;
}

std::vector<ResultRow> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArguments, "cannot open " + path);
  return read_topk_tsv(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top-k vulnerable nodes in uncertain graphs"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP worker threads (0 = runtime default)");

  GraphArgs graph_args;
  std::string out_path;
  std::uint64_t seed = 1;
  MethodConfig config;

  auto* topk = app.add_subcommand("topk", "run one detection method");
  std::string method_text = "bsrbk";
  std::string k_text;
  add_graph_options(topk, graph_args);
  topk->add_option("--method", method_text, "n | sn | sr | bsr | bsrbk")->capture_default_str();
  topk->add_option("--k", k_text, "result size: integer or percentage of n, e.g. 5%")->required();
  topk->add_option("--eps", config.params.eps)->capture_default_str();
  topk->add_option("--delta", config.params.delta)->capture_default_str();
  topk->add_option("--z", config.z, "bound order")->capture_default_str();
  topk->add_option("--bk", config.bk, "bottom-k threshold")->capture_default_str();
  topk->add_option("--samples", config.fixed_samples, "fixed sample count for method n")
      ->capture_default_str();
  topk->add_option("--seed", seed)->capture_default_str();
  topk->add_option("--out", out_path, "output TSV (default stdout)");

  auto* oracle = app.add_subcommand("oracle", "exact top-k by possible-world enumeration");
  std::string oracle_k;
  add_graph_options(oracle, graph_args);
  oracle->add_option("--k", oracle_k, "result size (default: all nodes)");
  oracle->add_option("--out", out_path);

  auto* truth = app.add_subcommand("truth", "fixed-sample ground truth ranking");
  std::string truth_k;
  std::uint64_t truth_samples = kGroundTruthSamples;
  add_graph_options(truth, graph_args);
  truth->add_option("--samples", truth_samples)->capture_default_str();
  truth->add_option("--k", truth_k, "result size (default: all nodes)");
  truth->add_option("--seed", seed)->capture_default_str();
  truth->add_option("--out", out_path);

  auto* bounds = app.add_subcommand("bounds", "lower/upper default-probability bounds");
  int bound_order = kDefaultBoundOrder;
  add_graph_options(bounds, graph_args);
  bounds->add_option("--z", bound_order)->capture_default_str();
  bounds->add_option("--out", out_path);

  auto* eval = app.add_subcommand("eval", "precision@k of a result against a truth file");
  std::string pred_path, truth_path;
  eval->add_option("--pred", pred_path)->required();
  eval->add_option("--truth", truth_path)->required();
  eval->add_option("--out", out_path);

  auto* synth = app.add_subcommand("synth", "generate a synthetic uncertain graph");
  std::string kind_text;
  std::size_t synth_n = 0, synth_m = 0;
  synth->add_option("--kind", kind_text, "power-law | random-dag | random | chain | diamond")
      ->required();
  synth->add_option("--n", synth_n)->required();
  synth->add_option("--m", synth_m)->required();
  synth->add_option("--seed", seed)->capture_default_str();
  synth->add_option("--nodes", graph_args.nodes, "node TSV to write")->required();
  synth->add_option("--edges", graph_args.edges, "edge TSV to write")->required();

  auto* benchcmd = app.add_subcommand("bench", "compare methods: time, samples, precision");
  std::vector<std::string> bench_k;
  std::vector<std::string> bench_methods{"n", "sn", "sr", "bsr", "bsrbk"};
  std::string csv_path;
  BenchOptions bench_options;
  bool no_warmup = false;
  add_graph_options(benchcmd, graph_args);
  benchcmd->add_option("--k", bench_k, "k values (integers/percentages); default 1%..10% of n");
  benchcmd->add_option("--methods", bench_methods)->delimiter(',')->capture_default_str();
  benchcmd->add_option("--eps", config.params.eps)->capture_default_str();
  benchcmd->add_option("--delta", config.params.delta)->capture_default_str();
  benchcmd->add_option("--z", config.z)->capture_default_str();
  benchcmd->add_option("--bk", config.bk)->capture_default_str();
  benchcmd->add_option("--samples", config.fixed_samples, "fixed samples for method n")
      ->capture_default_str();
  benchcmd->add_option("--truth-samples", bench_options.truth_samples)->capture_default_str();
  benchcmd->add_option("--seed", seed)->capture_default_str();
  benchcmd->add_flag("--no-warmup", no_warmup, "skip the untimed warm-up run");
  benchcmd->add_option("--out", out_path, "TSV report (default stdout)");
  benchcmd->add_option("--csv", csv_path, "plot-ready CSV report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (threads > 0) omp_set_num_threads(threads);

    if (*topk) {
      const auto g = load_graph(graph_args.nodes, graph_args.edges);
      const auto k = parse_k(k_text, g.node_count());
      const auto result = run_method(g, method_from(method_text), k, config, seed);
      Output out(out_path);
      write_topk_tsv(result, g, out.stream());
    } else if (*oracle) {
      const auto g = load_graph(graph_args.nodes, graph_args.edges);
      const auto k = oracle_k.empty() ? g.node_count() : parse_k(oracle_k, g.node_count());
      Output out(out_path);
      write_topk_tsv(exact_topk(g, k), g, out.stream());
    } else if (*truth) {
      const auto g = load_graph(graph_args.nodes, graph_args.edges);
      const auto k = truth_k.empty() ? g.node_count() : parse_k(truth_k, g.node_count());
      Output out(out_path);
      write_truth_tsv(ground_truth(g, k, truth_samples, seed), g, out.stream());
    } else if (*bounds) {
      const auto g = load_graph(graph_args.nodes, graph_args.edges);
      Output out(out_path);
      write_bounds_tsv(compute_bounds(g, bound_order), g, out.stream());
    } else if (*eval) {
      const auto pred = read_rows(pred_path);
      const auto reference = read_rows(truth_path);
      Output out(out_path);
      out.stream() << "k\t" << reference.size() << "\nprecision\t"
                   << format_double(precision_at_k(pred, reference)) << '\n';
    } else if (*synth) {
      const auto kind = parse_synth_kind(kind_text);
      if (!kind) throw Error(ErrorCode::InvalidArguments, "unknown kind '" + kind_text + "'");
      save_graph(synth_graph(*kind, synth_n, synth_m, seed), graph_args.nodes, graph_args.edges);
    } else if (*benchcmd) {
      const auto g = load_graph(graph_args.nodes, graph_args.edges);
      std::vector<std::size_t> ks;
      for (const auto& text : bench_k) ks.push_back(parse_k(text, g.node_count()));
      if (ks.empty()) ks = percent_sweep(g.node_count());
      std::vector<Method> methods;
      for (const auto& text : bench_methods) methods.push_back(method_from(text));
      bench_options.config = config;
      bench_options.warmup = !no_warmup;
      const auto rows = bench(g, ks, methods, bench_options, seed);
      Output out(out_path);
      write_bench_tsv(rows, out.stream());
      if (!csv_path.empty()) {
        Output csv(csv_path);
        write_bench_csv(rows, csv.stream());
      }
    }
  } catch (const Error& e) {
    std::cerr << "vulnk: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "vulnk: internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
