#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "imdiff/heuristics.hpp"
#include "imdiff/oracle.hpp"
#include "test_util.hpp"

using namespace imdiff;

namespace {

Objective exact_objective(const Graph& g) {
  return [&g](const std::vector<int>& s) {
    return s.empty() ? 0.0 : oracle::exact_sigma(g, s);
  };
}

}  // namespace

TEST_CASE("greedy_select: trivial budgets and example graph") {
  Graph g = testutil::example_graph();
  SelectorConfig cfg;
  SeedSet empty = greedy_select(g, 0, {}, exact_objective(g), cfg);
  CHECK(empty.members.empty());
  CHECK(empty.budget == 0);
  SeedSet one = greedy_select(g, 1, {}, exact_objective(g), cfg);
  CHECK(one.members == std::vector<int>{g.node_by_label("B")});
  SeedSet two = greedy_select(g, 2, {}, exact_objective(g), cfg);
  CHECK(two.members[0] == g.node_by_label("B"));
  CHECK(two.members[1] == g.node_by_label("A"));
}

TEST_CASE("greedy_select: partial seeds are respected and excluded") {
  Graph g = testutil::example_graph();
  int a = g.node_by_label("A"), b = g.node_by_label("B");
  SelectorConfig cfg;
  SeedSet s = greedy_select(g, 1, {a, b}, exact_objective(g), cfg);
  REQUIRE(s.members.size() == 1);
  CHECK(s.members[0] != a);
  CHECK(s.members[0] != b);
  // with A,B fixed the marginal winner is C or D (equal exact gains) -> smaller id
  CHECK(s.members[0] == g.node_by_label("C"));
}

TEST_CASE("greedy_select: lazy CELF matches exhaustive on an exact objective") {
  for (std::uint64_t gs = 0; gs < 8; ++gs) {
    Graph g = testutil::random_graph(7, 12, 8000 + gs);
    SelectorConfig lazy, full;
    lazy.lazy = true;
    full.lazy = false;
    SeedSet a = greedy_select(g, 3, {}, exact_objective(g), lazy);
    SeedSet b = greedy_select(g, 3, {}, exact_objective(g), full);
    CHECK(a.members == b.members);
  }
}

TEST_CASE("greedy_select: MC objective is deterministic per seed") {
  Graph g = testutil::random_graph(12, 30, 17);
  SelectorConfig cfg;
  cfg.mc_samples = 500;
  cfg.master_seed = 5;
  SeedSet a = greedy_select(g, 3, {}, make_spread_objective(g, cfg), cfg);
  SeedSet b = greedy_select(g, 3, {}, make_spread_objective(g, cfg), cfg);
  CHECK(a.members == b.members);
}

TEST_CASE("greedy matches the exact argmax on small graphs") {
  for (std::uint64_t gs = 0; gs < 6; ++gs) {
    Graph g = testutil::random_graph(6, 9, 9000 + gs);
    SelectorConfig cfg;
    SeedSet greedy = greedy_select(g, 1, {}, exact_objective(g), cfg);
    double best = -1.0;
    int arg = -1;
    for (int v = 0; v < g.node_count(); ++v) {
      double val = oracle::exact_sigma(g, {v});
      if (val > best + 1e-12) {
        best = val;
        arg = v;
      }
    }
    CHECK(greedy.members[0] == arg);
  }
}

TEST_CASE("gdd scores on the example graph") {
  Graph g = testutil::example_graph();
  int a = g.node_by_label("A"), b = g.node_by_label("B"), c = g.node_by_label("C"),
      d = g.node_by_label("D");
  std::vector<double> fresh = gdd_scores(g, {});
  CHECK(fresh[a] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fresh[b] == doctest::Approx(2.7).epsilon(1e-12));
  CHECK(fresh[c] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fresh[d] == doctest::Approx(1.0).epsilon(1e-12));
  // partial {A}: B is discounted by (1-0.5) -> 0.5 * 2.7 = 1.35
  std::vector<double> after_a = gdd_scores(g, {a});
  CHECK(after_a[b] == doctest::Approx(1.35).epsilon(1e-12));
  CHECK(after_a[c] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gdd_select on the example graph") {
  Graph g = testutil::example_graph();
  int a = g.node_by_label("A"), b = g.node_by_label("B");
  SeedSet one = gdd_select(g, 1, {});
  CHECK(one.members == std::vector<int>{b});
  // after B: A's score drops to 1 + 0.5*(1-1) -- its only out-neighbor is selected
  SeedSet two = gdd_select(g, 2, {});
  CHECK(two.members[0] == b);
  SeedSet with_partial = gdd_select(g, 1, {a});
  CHECK(with_partial.members == std::vector<int>{b});
}

TEST_CASE("gdd_select: ties break to the smallest node id") {
  Graph g = Graph::from_edges(4, {{0, 2, 0.5}, {1, 3, 0.5}});
  SeedSet s = gdd_select(g, 1, {});
  CHECK(s.members == std::vector<int>{0});
}

TEST_CASE("gdd_select honours boundary probabilities") {
  // residual of the example after removing {A,B} with frontier {B}
  Graph g = testutil::example_graph();
  int a = g.node_by_label("A"), b = g.node_by_label("B");
  ResidualGraph r = residual_graph(g, {a, b}, {b});
  // C is discounted by (1-0.8)=0.2, D by (1-0.9)=0.1 -> D scores lower, C wins? no:
  // scores: C = 0.2*1 = 0.2, D = 0.1*1 = 0.1 -> pick C (matches the exact oracle)
  SeedSet s = gdd_select(r.graph, 1, {}, r.boundary);
  REQUIRE(s.members.size() == 1);
  CHECK(r.to_original[s.members[0]] == g.node_by_label("C"));
  std::vector<double> sc = gdd_scores(r.graph, {}, r.boundary);
  CHECK(sc[r.to_residual[g.node_by_label("C")]] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(sc[r.to_residual[g.node_by_label("D")]] == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("gdd_select matches a fresh rescore at every pick") {
  for (std::uint64_t gs = 0; gs < 8; ++gs) {
    Graph g = testutil::random_graph(10, 30, 10000 + gs);
    int k = std::min(4, g.node_count());
    SeedSet fast = gdd_select(g, k, {});
    // reference: recompute scores from scratch after each pick
    std::vector<int> picked;
    for (int i = 0; i < k; ++i) {
      std::vector<double> sc = gdd_scores(g, picked);
      int best = -1;
      for (int v = 0; v < g.node_count(); ++v) {
        if (std::find(picked.begin(), picked.end(), v) != picked.end()) continue;
        if (best < 0 || sc[v] > sc[best] + 1e-12) best = v;
      }
      picked.push_back(best);
    }
    CHECK(fast.members == picked);
  }
}

TEST_CASE("weighted_degree_select: example graph and ties") {
  Graph g = testutil::example_graph();
  SeedSet one = weighted_degree_select(g, 1);
  CHECK(one.members == std::vector<int>{g.node_by_label("B")});  // 0.8+0.9 beats 0.5
  SeedSet two = weighted_degree_select(g, 2);
  CHECK(two.members[1] == g.node_by_label("A"));
  Graph tie = Graph::from_edges(4, {{0, 2, 0.5}, {1, 3, 0.5}});
  CHECK(weighted_degree_select(tie, 1).members == std::vector<int>{0});
}

TEST_CASE("gdd with empty partial equals weighted degree at k=1") {
  int matches = 0;
  const int total = 50;
  for (std::uint64_t gs = 0; gs < total; ++gs) {
    Graph g = testutil::random_graph(9, 25, 11000 + gs);
    if (gdd_select(g, 1, {}).members == weighted_degree_select(g, 1).members) ++matches;
  }
  CHECK(matches == total);
}

TEST_CASE("selector error paths") {
  Graph g = testutil::example_graph();
  SelectorConfig cfg;
  CHECK_THROWS_AS(greedy_select(g, -1, {}, exact_objective(g), cfg), std::invalid_argument);
  CHECK_THROWS_AS(greedy_select(g, 5, {}, exact_objective(g), cfg), std::invalid_argument);
  CHECK_THROWS_AS(greedy_select(g, 1, {99}, exact_objective(g), cfg), std::invalid_argument);
  CHECK_THROWS_AS(gdd_select(g, 5, {}), std::invalid_argument);
  CHECK_THROWS_AS(weighted_degree_select(g, 5), std::invalid_argument);
}
