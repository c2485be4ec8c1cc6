#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "support.hpp"
#include "vulnk/error.hpp"
#include "vulnk/harness.hpp"
#include "vulnk/oracle.hpp"
#include "vulnk/synth.hpp"

using namespace vulnk;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected vulnk::Error");
  return ErrorCode::InvalidArguments;
}

}  // namespace

TEST_CASE("precision at k") {
  const std::vector<NodeId> truth{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK(precision_at_k(truth, truth) == 1.0);
  const std::vector<NodeId> disjoint{10, 11, 12, 13, 14, 15, 16, 17, 18, 19};
  CHECK(precision_at_k(disjoint, truth) == 0.0);
  const std::vector<NodeId> nine{9, 8, 7, 6, 5, 4, 3, 2, 1, 42};
  CHECK(precision_at_k(nine, truth) == doctest::Approx(0.9));
  const std::vector<NodeId> short_pred{0, 1};
  CHECK(code_of([&] { precision_at_k(short_pred, truth); }) == ErrorCode::MismatchedK);
}

TEST_CASE("parse_k") {
  CHECK(parse_k("25", 100) == 25);
  CHECK(parse_k("5%", 2000) == 100);
  CHECK(parse_k("1%", 50) == 1);    // 0.5 rounds to 1
  CHECK(parse_k("0.1%", 10) == 1);  // floor of 1
  CHECK(parse_k("100%", 7) == 7);
  CHECK(code_of([] { parse_k("0", 10); }) == ErrorCode::InvalidK);
  CHECK(code_of([] { parse_k("11", 10); }) == ErrorCode::InvalidK);
  CHECK(code_of([] { parse_k("2.5", 10); }) == ErrorCode::InvalidK);
  CHECK(code_of([] { parse_k("x", 10); }) == ErrorCode::InvalidK);
  CHECK(code_of([] { parse_k("", 10); }) == ErrorCode::InvalidK);
  CHECK(code_of([] { parse_k("-5%", 10); }) == ErrorCode::InvalidK);
}

TEST_CASE("ground truth on the chain") {
  const auto truth = ground_truth(fixtures::example_chain(), 2, 20000, 4);
  CHECK(truth.ranking == std::vector<NodeId>{1, 0});
  CHECK(std::abs(truth.probability[0] - 0.232) <= 0.01);
  CHECK(std::abs(truth.probability[1] - 0.2) <= 0.01);
  CHECK(truth.kth_probability() == truth.probability[1]);
  CHECK(truth.truncated(1).ranking == std::vector<NodeId>{1});
}

TEST_CASE("single-sample truth is binary") {
  const auto g = synth_graph(SynthKind::PowerLaw, 200, 600, 3);
  const auto truth = ground_truth(g, 0, 1, 9);
  CHECK(truth.k() == 200);
  for (double p : truth.probability) CHECK((p == 0.0 || p == 1.0));
  CHECK_THROWS_AS(ground_truth(g, 5, 0, 9), Error);
}

TEST_CASE("truth matches the oracle when gaps are wide") {
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto g = testing::random_small_graph(seed);
    const auto exact = exact_topk(g, g.node_count());
    const auto truth = ground_truth(g, 0, 20000, seed);
    bool wide = true;
    for (std::size_t i = 1; i < exact.entries.size(); ++i) {
      wide = wide && exact.entries[i - 1].estimate - exact.entries[i].estimate > 0.02;
    }
    if (!wide) continue;
    ++compared;
    CHECK(truth.ranking == exact.nodes());
  }
  CHECK(compared >= 5);
}

TEST_CASE("synthetic shapes") {
  const auto chain = synth_graph(SynthKind::Chain, 2, 1, 1);
  CHECK(chain.edge_count() == 1);
  CHECK(chain.edge(0).src == 0);
  CHECK(chain.edge(0).dst == 1);

  const auto diamond = synth_graph(SynthKind::Diamond, 4, 4, 1);
  const auto fixture = fixtures::diamond_witness();
  for (EdgeId e = 0; e < 4; ++e) {
    CHECK(diamond.edge(e).src == fixture.edge(e).src);
    CHECK(diamond.edge(e).dst == fixture.edge(e).dst);
  }

  CHECK(synth_graph(SynthKind::PowerLaw, 300, 900, 5) ==
        synth_graph(SynthKind::PowerLaw, 300, 900, 5));

  const auto dag = synth_graph(SynthKind::RandomDag, 50, 400, 6);
  CHECK(dag.edge_count() == 400);

  CHECK(code_of([] { synth_graph(SynthKind::Chain, 5, 5, 1); }) == ErrorCode::InfeasibleShape);
  CHECK(code_of([] { synth_graph(SynthKind::Diamond, 5, 4, 1); }) == ErrorCode::InfeasibleShape);
  CHECK(code_of([] { synth_graph(SynthKind::RandomDag, 4, 7, 1); }) == ErrorCode::InfeasibleShape);
  CHECK(code_of([] { synth_graph(SynthKind::PowerLaw, 4, 7, 1); }) == ErrorCode::InfeasibleShape);
  CHECK(parse_synth_kind("power-law") == SynthKind::PowerLaw);
  CHECK_FALSE(parse_synth_kind("grid").has_value());
}

TEST_CASE("power-law graph at P2P scale is degree-skewed") {
  const auto g = synth_graph(SynthKind::PowerLaw, 50000, 150000, 1);
  CHECK(g.node_count() == 50000);
  CHECK(g.edge_count() == 150000);
  std::size_t max_in = 0, max_out = 0, isolated = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    max_in = std::max(max_in, g.in_degree(v));
    max_out = std::max(max_out, g.out_degree(v));
    isolated += g.in_degree(v) + g.out_degree(v) == 0;
  }
  // Mean degree is 3; hubs should be orders of magnitude above it.
  CHECK(max_in > 300);
  CHECK(max_out > 300);
  CHECK(isolated < 25000);
}

TEST_CASE("bench rows") {
  const auto g = synth_graph(SynthKind::PowerLaw, 300, 900, 8);
  BenchOptions options;
  options.truth_samples = 2000;
  options.config.fixed_samples = 500;
  options.warmup = false;
  const std::vector<std::size_t> one_k{15};
  const std::vector<Method> single{Method::BSRBK};
  const auto rows = bench(g, one_k, single, options, 3);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].method == Method::BSRBK);
  CHECK(rows[0].k == 15);
  CHECK(rows[0].precision >= 0.0);
  CHECK(rows[0].precision <= 1.0);

  const auto ks = percent_sweep(300);
  CHECK(ks == std::vector<std::size_t>{3, 6, 9, 12, 15, 18, 21, 24, 27, 30});
  const std::vector<Method> ladder{Method::N, Method::SN, Method::SR, Method::BSR, Method::BSRBK};
  const auto all = bench(g, ks, ladder, options, 3);
  CHECK(all.size() == ks.size() * ladder.size());

  std::ostringstream tsv, csv;
  write_bench_tsv(all, tsv);
  write_bench_csv(all, csv);
  const std::string text = tsv.str();
  const auto lines = std::count(text.begin(), text.end(), '\n');
  CHECK(lines == static_cast<long>(all.size() + 1));
  CHECK(csv.str().rfind("method,k,", 0) == 0);
}

TEST_CASE("result TSV round-trip and determinism") {
  const auto g = synth_graph(SynthKind::PowerLaw, 400, 1200, 10);
  MethodConfig config;
  config.fixed_samples = 300;
  for (Method m : {Method::N, Method::SN, Method::SR, Method::BSR, Method::BSRBK}) {
    const auto a = run_method(g, m, 20, config, 6);
    const auto b = run_method(g, m, 20, config, 6);
    std::ostringstream sa, sb;
    write_topk_tsv(a, g, sa);
    write_topk_tsv(b, g, sb);
    CHECK(sa.str() == sb.str());

    std::istringstream in(sa.str());
    const auto rows = read_topk_tsv(in);
    REQUIRE(rows.size() == 20);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].rank == i + 1);
      CHECK(rows[i].node == g.label(a.entries[i].node));
      CHECK(rows[i].estimate == a.entries[i].estimate);
      CHECK(rows[i].verified == a.entries[i].verified);
      CHECK(rows[i].estimator == a.entries[i].estimator);
    }
    CHECK(precision_at_k(rows, rows) == 1.0);
  }
}

TEST_CASE("malformed result file") {
  std::istringstream bad("1\tA\t0.5\t1\n");
  CHECK(code_of([&] { read_topk_tsv(bad); }) == ErrorCode::MalformedLine);
  std::istringstream bad_tag("1\tA\t0.5\t1\tguess\n");
  CHECK(code_of([&] { read_topk_tsv(bad_tag); }) == ErrorCode::MalformedLine);
}

TEST_CASE("method names") {
  CHECK(parse_method("BSRBK") == Method::BSRBK);
  CHECK(parse_method("sn") == Method::SN);
  CHECK_FALSE(parse_method("magic").has_value());
  CHECK(to_string(Method::SR) == "SR");
  for (Estimator e : {Estimator::Exact, Estimator::Frequency, Estimator::BottomK,
                      Estimator::LowerBound}) {
    CHECK(parse_estimator(to_string(e)) == e);
  }
}
