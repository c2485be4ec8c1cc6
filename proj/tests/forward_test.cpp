#include <doctest.h>
#include <omp.h>

#include <cmath>

#include "support.hpp"
#include "vulnk/coins.hpp"
#include "vulnk/error.hpp"
#include "vulnk/forward_sampler.hpp"
#include "vulnk/oracle.hpp"
#include "vulnk/synth.hpp"

using namespace vulnk;

namespace {

// Independent closed form, evaluated with long double.
std::uint64_t hand_eq3(double n, double k, double eps, double delta) {
  return static_cast<std::uint64_t>(
      std::ceil(2.0L / (eps * eps) * std::log((k * (n - k)) / static_cast<long double>(delta))));
}

}  // namespace

TEST_CASE("coins are uniform-looking and reproducible") {
  const WorldCoins a(9, 3), b(9, 3), c(9, 4);
  CHECK(a.node(5) == b.node(5));
  CHECK(a.edge(5) == b.edge(5));
  CHECK(a.node(5) != c.node(5));
  CHECK(a.node(5) != a.edge(5));
  double sum = 0.0;
  for (NodeId v = 0; v < 100000; ++v) {
    const double x = a.node(v);
    CHECK_FALSE((x < 0.0 || x >= 1.0));
    sum += x;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < 0.005);
}

TEST_CASE("extreme self-risks") {
  const auto topo = synth_graph(SynthKind::Random, 30, 90, 2);
  std::vector<double> pe(topo.edge_count(), 0.7);
  const auto all_on = topo.with_probabilities(std::vector<double>(30, 1.0), pe);
  const auto all_off = topo.with_probabilities(std::vector<double>(30, 0.0), pe);
  for (std::uint64_t i = 1; i <= 50; ++i) {
    CHECK(sample_world_forward(all_on, WorldCoins(1, i)).size() == 30);
    CHECK(sample_world_forward(all_off, WorldCoins(1, i)).empty());
  }
}

TEST_CASE("chain frequency of B") {
  const auto g = fixtures::example_chain();
  const auto table = forward_counts(g, 100000, 12345);
  // 0.232 +- 4 sigma at 1e5 samples.
  CHECK(std::abs(table.estimate(1) - 0.232) <= 0.006);
  CHECK(std::abs(table.estimate(0) - 0.2) <= 0.006);
}

TEST_CASE("counters stay within [0, t]") {
  const auto g = synth_graph(SynthKind::PowerLaw, 300, 900, 4);
  const auto table = forward_counts(g, 200, 1);
  CHECK(table.samples == 200);
  for (auto c : table.counts) CHECK(c <= 200);
}

TEST_CASE("basic sample size") {
  const ApproxParams params{0.3, 0.1};
  CHECK(hand_eq3(100, 10, 0.3, 0.1) == 203);
  CHECK(basic_sample_size(100, 10, params) == 203);
  CHECK(hand_eq3(2, 1, 0.3, 0.1) == 52);
  CHECK(basic_sample_size(2, 1, params) == 52);
  CHECK_THROWS_AS(basic_sample_size(10, 10, params), Error);
  CHECK_THROWS_AS(basic_sample_size(10, 0, params), Error);
  CHECK_THROWS_AS(basic_sample_size(10, 2, ApproxParams{0.0, 0.1}), Error);
  CHECK_THROWS_AS(basic_sample_size(10, 2, ApproxParams{0.3, 1.0}), Error);
}

TEST_CASE("zero self-risk ties resolve to the smallest ids") {
  const auto topo = synth_graph(SynthKind::Random, 10, 20, 1);
  const auto g = topo.with_probabilities(std::vector<double>(10, 0.0),
                                         std::vector<double>(20, 0.9));
  const auto r = estimate_topk_basic(g, 3, 100, 5);
  CHECK(r.nodes() == std::vector<NodeId>{0, 1, 2});
  for (const auto& e : r.entries) CHECK(e.estimate == 0.0);
}

TEST_CASE("chain top-1 with 50000 samples is B") {
  const auto r = estimate_topk_basic(fixtures::example_chain(), 1, 50000, 77);
  CHECK(r.nodes() == std::vector<NodeId>{1});
  CHECK(r.method == Method::N);
  CHECK(r.info.samples_used == 50000);
}

TEST_CASE("SN is N with the formula's sample count") {
  const auto g = synth_graph(SynthKind::PowerLaw, 400, 1200, 8);
  const ApproxParams params{};
  const auto t = basic_sample_size(g.node_count(), 20, params);
  const auto sn = sn_topk(g, 20, params, 3);
  const auto n = estimate_topk_basic(g, 20, t, 3);
  CHECK(sn.info.samples_used == t);
  CHECK(sn.nodes() == n.nodes());
  CHECK(sn.method == Method::SN);
}

TEST_CASE("estimates do not depend on the thread count") {
  const auto g = synth_graph(SynthKind::PowerLaw, 2000, 6000, 21);
  omp_set_num_threads(1);
  const auto one = forward_counts(g, 500, 9);
  omp_set_num_threads(4);
  const auto four = forward_counts(g, 500, 9);
  omp_set_num_threads(3);
  const auto three = forward_counts(g, 500, 9);
  CHECK(one.counts == four.counts);
  CHECK(one.counts == three.counts);
}

TEST_CASE("unbiased against the oracle") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = testing::random_small_graph(seed);
    const auto exact = exact_default_probabilities(g);
    const auto table = forward_counts(g, 50000, seed);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      CHECK(std::abs(table.estimate(v) - exact[v]) <= 0.015);
    }
  }
}

TEST_CASE("pairwise misordering rate respects the Hoeffding bound") {
  // Two isolated nodes 0.3 apart; the sign of the count difference errs
  // with probability at most exp(-t eps^2 / 2).
  const UncertainGraph g({}, {0.55, 0.25}, {});
  const double eps = 0.3;
  const std::uint64_t t = 20;
  const int trials = 600;
  int wrong = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const auto table = forward_counts(g, t, 1000 + static_cast<std::uint64_t>(trial));
    if (table.counts[0] <= table.counts[1]) ++wrong;
  }
  const double bound = std::exp(-static_cast<double>(t) * eps * eps / 2.0);
  const double slack = 4.0 * std::sqrt(bound * (1 - bound) / trials);
  CHECK(static_cast<double>(wrong) / trials <= bound + slack);
}
