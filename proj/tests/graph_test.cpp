#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "vulnk/error.hpp"
#include "vulnk/graph.hpp"
#include "vulnk/synth.hpp"

using namespace vulnk;

namespace {

UncertainGraph parse(const std::string& nodes, const std::string& edges) {
  std::istringstream n(nodes), e(edges);
  return parse_graph(n, e);
}

template <typename Fn>
ErrorCode error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected vulnk::Error");
  return ErrorCode::InvalidArguments;
}

}  // namespace

TEST_CASE("parse two-node chain") {
  const auto g = parse("A\t0.2\nB\t0.2\n", "A\tB\t0.2\n");
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.self_risk(0) == 0.2);
  CHECK(g.label(1) == "B");
  CHECK(g.edge(0) == Edge{0, 1, 0.2});
  CHECK(g.find("B") == NodeId{1});
  CHECK_FALSE(g.find("C").has_value());
}

TEST_CASE("single node, empty edge file") {
  const auto g = parse("only\t0.7\n", "");
  CHECK(g.node_count() == 1);
  CHECK(g.edge_count() == 0);
  CHECK(g.in_arcs(0).empty());
}

TEST_CASE("comments, blank lines and CRLF are tolerated") {
  const auto g = parse("# header\n\nA\t0.5\r\nB\t1\r\n", "# e\nA\tB\t0\r\n");
  CHECK(g.node_count() == 2);
  CHECK(g.self_risk(1) == 1.0);
  CHECK(g.edge(0).prob == 0.0);
}

TEST_CASE("node order in the file defines ids") {
  const auto g = parse("z\t0.1\na\t0.2\nm\t0.3\n", "");
  CHECK(g.label(0) == "z");
  CHECK(g.label(2) == "m");
}

TEST_CASE("parse errors") {
  CHECK(error_of([] { parse("A\t0.2\nB\t0.2\n", "A\tB\t1.3\n"); }) ==
        ErrorCode::ProbabilityOutOfRange);
  CHECK(error_of([] { parse("A\t-0.1\n", ""); }) == ErrorCode::ProbabilityOutOfRange);
  CHECK(error_of([] { parse("A\t0.2\n", "A\tC\t0.2\n"); }) == ErrorCode::UnknownLabel);
  CHECK(error_of([] { parse("A\t0.2\nB\t0.2\n", "A\tB\t0.2\nA\tB\t0.3\n"); }) ==
        ErrorCode::DuplicateEdge);
  CHECK(error_of([] { parse("A\t0.2\n", "A\tA\t0.2\n"); }) == ErrorCode::SelfEdge);
  CHECK(error_of([] { parse("A\t0.2\nA\t0.3\n", ""); }) == ErrorCode::DuplicateLabel);
  CHECK(error_of([] { parse("A\t0.2\t9\n", ""); }) == ErrorCode::MalformedLine);
  CHECK(error_of([] { parse("A\tabc\n", ""); }) == ErrorCode::MalformedLine);
  CHECK(error_of([] { parse("A\t0.2x\n", ""); }) == ErrorCode::MalformedLine);
  CHECK(error_of([] { parse("A\t0.2\nB\t0.2\n", "A\tB\n"); }) == ErrorCode::MalformedLine);
}

TEST_CASE("opposite edges are distinct, not duplicates") {
  const auto g = parse("A\t0.2\nB\t0.2\n", "A\tB\t0.2\nB\tA\t0.4\n");
  CHECK(g.edge_count() == 2);
}

TEST_CASE("constructor validates like the parser") {
  CHECK(error_of([] { UncertainGraph({}, {0.5, 2.0}, {}); }) == ErrorCode::ProbabilityOutOfRange);
  CHECK(error_of([] { UncertainGraph({}, {0.5}, {Edge{0, 1, 0.5}}); }) ==
        ErrorCode::UnknownLabel);
}

TEST_CASE("reverse of a single edge") {
  const auto gt = reverse(fixtures::example_chain());
  REQUIRE(gt.edge_count() == 1);
  CHECK(gt.graph().edge(0) == Edge{1, 0, 0.2});
  CHECK(gt.graph().self_risk(0) == 0.2);
}

TEST_CASE("reverse is an involution") {
  const auto g = fixtures::toy_guarantee_network();
  CHECK(reverse(reverse(g)) == g);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto r = testing::random_small_graph(seed);
    CHECK(reverse(reverse(r)) == r);
  }
}

TEST_CASE("reversed in-degree equals original out-degree") {
  const auto g = fixtures::toy_guarantee_network();
  const auto gt = reverse(g);
  CHECK(gt.node_count() == 5);
  CHECK(gt.edge_count() == 6);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    CHECK(gt.graph().in_degree(v) == g.out_degree(v));
    CHECK(gt.graph().out_degree(v) == g.in_degree(v));
  }
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    const auto r = testing::random_small_graph(seed);
    const auto rt = reverse(r);
    for (NodeId v = 0; v < r.node_count(); ++v) CHECK(rt.graph().in_degree(v) == r.out_degree(v));
  }
}

TEST_CASE("in_arcs enumerates exactly the in-neighbours") {
  const auto g = fixtures::toy_guarantee_network();
  const auto d = *g.find("D");
  std::vector<std::string> names;
  for (const Arc& arc : g.in_arcs(d)) {
    names.push_back(g.label(arc.node));
    CHECK(g.edge(arc.edge).dst == d);
    CHECK(g.edge(arc.edge).src == arc.node);
  }
  CHECK(names == std::vector<std::string>{"B", "C"});
}

TEST_CASE("write then parse round-trips bit-exactly") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto g = assign_random_probabilities(testing::random_small_graph(seed), seed);
    std::ostringstream nodes, edges;
    write_graph(g, nodes, edges);
    const auto back = parse(nodes.str(), edges.str());
    CHECK(back == g);
    std::ostringstream nodes2, edges2;
    write_graph(back, nodes2, edges2);
    CHECK(nodes2.str() == nodes.str());
    CHECK(edges2.str() == edges.str());
  }
}

TEST_CASE("assign_random_probabilities is deterministic and seed-sensitive") {
  const auto topo = synth_graph(SynthKind::Random, 200, 800, 3);
  const auto a = assign_random_probabilities(topo, 42);
  const auto b = assign_random_probabilities(topo, 42);
  const auto c = assign_random_probabilities(topo, 43);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  for (NodeId v = 0; v < a.node_count(); ++v) {
    CHECK(a.self_risk(v) >= 0.0);
    CHECK(a.self_risk(v) < 1.0);
  }
}

TEST_CASE("assigned probabilities average one half") {
  const auto topo = synth_graph(SynthKind::Random, 20000, 80000, 5);
  const auto g = assign_random_probabilities(topo, 11);
  double sum = 0.0;
  for (double p : g.self_risks()) sum += p;
  for (const Edge& e : g.edges()) sum += e.prob;
  const double mean = sum / static_cast<double>(g.node_count() + g.edge_count());
  CHECK(g.node_count() + g.edge_count() == 100000);
  CHECK(mean >= 0.49);
  CHECK(mean <= 0.51);
}
