#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "imdiff/crossentropy.hpp"
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

TEST_CASE("ce_select: finds B for k=1 on the example graph") {
  Graph g = testutil::example_graph();
  CeParams params;
  params.master_seed = 3;
  CeResult res = ce_select(g, 1, exact_objective(g), params);
  CHECK(res.best.members == std::vector<int>{g.node_by_label("B")});
  CHECK(res.best_value == doctest::Approx(2.7).epsilon(1e-12));
  CHECK(res.iterations >= 1);
}

TEST_CASE("ce_select: k = n returns the full node set") {
  Graph g = testutil::example_graph();
  CeParams params;
  CeResult res = ce_select(g, g.node_count(), exact_objective(g), params);
  std::vector<int> sorted = res.best.members;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3});
  CHECK(res.best_value == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("ce_select: one-hot initial distribution is a fixed point") {
  Graph g = testutil::example_graph();
  CeParams params;
  params.master_seed = 9;
  params.initial_node_probs = std::vector<double>{1.0, 0.0, 0.0, 0.0};
  params.max_iterations = 10;
  CeResult res = ce_select(g, 1, exact_objective(g), params);
  CHECK(res.best.members == std::vector<int>{0});
  CHECK(res.node_probs[0] == doctest::Approx(1.0).epsilon(1e-9));
  for (int v = 1; v < 4; ++v) CHECK(res.node_probs[v] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("ce_select: final node probabilities stay inside [0,1]") {
  Graph g = testutil::random_graph(10, 30, 12);
  CeParams params;
  params.master_seed = 21;
  params.max_iterations = 15;
  CeResult res = ce_select(g, 3, exact_objective(g), params);
  for (double p : res.node_probs) {
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  CHECK(static_cast<int>(res.best.members.size()) == 3);
}

TEST_CASE("ce_select: negative objective values are rejected") {
  Graph g = testutil::example_graph();
  CeParams params;
  Objective bad = [](const std::vector<int>&) { return -1.0; };
  CHECK_THROWS_AS(ce_select(g, 1, bad, params), std::invalid_argument);
}

TEST_CASE("ce_select: trajectory is invariant to positive rescaling") {
  Graph g = testutil::random_graph(8, 20, 14);
  CeParams params;
  params.master_seed = 4;
  params.max_iterations = 12;
  Objective base = exact_objective(g);
  Objective scaled = [&base](const std::vector<int>& s) { return 1000.0 * base(s); };
  CeResult a = ce_select(g, 2, base, params);
  CeResult b = ce_select(g, 2, scaled, params);
  CHECK(a.best.members == b.best.members);
  CHECK(a.iterations == b.iterations);
  REQUIRE(a.node_probs.size() == b.node_probs.size());
  for (std::size_t i = 0; i < a.node_probs.size(); ++i)
    CHECK(a.node_probs[i] == doctest::Approx(b.node_probs[i]).epsilon(1e-9));
}

TEST_CASE("ce_select: matches exhaustive optimum on small graphs") {
  int hits = 0;
  const int total = 8;
  for (std::uint64_t gs = 0; gs < total; ++gs) {
    Graph g = testutil::random_graph(6, 10, 13000 + gs);
    CeParams params;
    params.master_seed = 100 + gs;
    CeResult res = ce_select(g, 2, exact_objective(g), params);
    double best = -1.0;
    for (int u = 0; u < g.node_count(); ++u)
      for (int v = u + 1; v < g.node_count(); ++v)
        best = std::max(best, oracle::exact_sigma(g, {u, v}));
    if (std::abs(res.best_value - best) < 1e-9) ++hits;
  }
  CHECK(hits >= total - 1);  // stochastic search, allow one miss
}

TEST_CASE("ce_joint_optimize: recovers the oracle dyad within 5% on small graphs") {
  int hits = 0;
  const int total = 5;
  for (std::uint64_t gs = 0; gs < total; ++gs) {
    Graph g = testutil::random_graph(6, 9, 14000 + gs);
    const int k = 2, D = 2;
    JointObjective obj = [&](int k1, int d, const std::vector<int>& s1) {
      return oracle::exact_two_phase(g, s1, k - k1, d, oracle::SecondPhasePolicy::GDD).value;
    };
    double best = -1.0;
    for (int k1 = 1; k1 <= k; ++k1)
      for (int d = 1; d <= D; ++d)
        for (int u = 0; u < g.node_count(); ++u) {
          if (k1 == 1) {
            best = std::max(best, obj(1, d, {u}));
          } else {
            for (int v = u + 1; v < g.node_count(); ++v)
              best = std::max(best, obj(2, d, {u, v}));
          }
        }
    CeParams params;
    params.master_seed = 200 + gs;
    JointResult res = ce_joint_optimize(g, k, D, obj, params);
    CHECK(res.k1 >= 1);
    CHECK(res.k1 <= k);
    CHECK(res.d >= 1);
    CHECK(res.d <= D);
    CHECK(static_cast<int>(res.s1.members.size()) == res.k1);
    if (res.value >= 0.95 * best) ++hits;
  }
  CHECK(hits >= total - 1);
}

TEST_CASE("ce_joint_optimize: D=1 forces d=1") {
  Graph g = testutil::example_graph();
  JointObjective obj = [&](int k1, int d, const std::vector<int>& s1) {
    return oracle::exact_two_phase(g, s1, 2 - k1, d, oracle::SecondPhasePolicy::GDD).value;
  };
  CeParams params;
  params.master_seed = 8;
  JointResult res = ce_joint_optimize(g, 2, 1, obj, params);
  CHECK(res.d == 1);
}

TEST_CASE("ce parameter validation") {
  Graph g = testutil::example_graph();
  CeParams params;
  CHECK(ce_select(g, 0, exact_objective(g), params).best.members.empty());
  CHECK_THROWS_AS(ce_select(g, 9, exact_objective(g), params), std::invalid_argument);
  CHECK_THROWS_AS(ce_select(g, -1, exact_objective(g), params), std::invalid_argument);
  CeParams bad_init;
  bad_init.initial_node_probs = std::vector<double>{0.5, 0.5};  // wrong length
  CHECK_THROWS_AS(ce_select(g, 1, exact_objective(g), bad_init), std::invalid_argument);
}
