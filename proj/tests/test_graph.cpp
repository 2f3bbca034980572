#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "imdiff/graph.hpp"
#include "test_util.hpp"

using namespace imdiff;

TEST_CASE("edge list loading: example graph with given weights") {
  Graph g = testutil::example_graph();
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 3);
  int a = g.node_by_label("A"), b = g.node_by_label("B");
  CHECK(a == 0);
  CHECK(b == 1);
  bool found = false;
  for (const Edge& e : g.edges())
    if (e.src == a && e.dst == b) {
      CHECK(e.prob == doctest::Approx(0.5));
      found = true;
    }
  CHECK(found);
}

TEST_CASE("edge list loading: empty input") {
  std::istringstream in("");
  Graph g = load_edge_list(in, false, WeightModel::given());
  CHECK(g.node_count() == 0);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("edge list loading: uniform weight model fills missing probs") {
  std::istringstream in("A B\nB C\n");
  Graph g = load_edge_list(in, false, WeightModel::uniform(0.1));
  REQUIRE(g.edge_count() == 2);
  for (const Edge& e : g.edges()) CHECK(e.prob == doctest::Approx(0.1));
}

TEST_CASE("edge list loading: undirected input doubles edges") {
  std::istringstream in("A B 0.5\n");
  Graph g = load_edge_list(in, true, WeightModel::given());
  CHECK(g.edge_count() == 2);
  CHECK(g.in_degree(g.node_by_label("A")) == 1);
}

TEST_CASE("edge list loading: errors name the line") {
  std::istringstream bad_tokens("A B 0.5\nA\n");
  CHECK_THROWS_WITH_AS(load_edge_list(bad_tokens, false, WeightModel::given()),
                       doctest::Contains("line 2"), std::runtime_error);
  std::istringstream bad_prob("A B 1.5\n");
  CHECK_THROWS_AS(load_edge_list(bad_prob, false, WeightModel::given()), std::runtime_error);
  std::istringstream non_numeric("A B 0.5\nB C x\n");
  CHECK_THROWS_AS(load_edge_list(non_numeric, false, WeightModel::given()),
                  std::runtime_error);
  std::istringstream dup("A B 0.5\nA B 0.7\n");
  CHECK_THROWS_AS(load_edge_list(dup, false, WeightModel::given()), std::invalid_argument);
  std::istringstream self_loop("A A 0.5\n");
  CHECK_THROWS_AS(load_edge_list(self_loop, false, WeightModel::given()),
                  std::runtime_error);
  std::istringstream missing_p("A B\n");
  CHECK_THROWS_AS(load_edge_list(missing_p, false, WeightModel::given()),
                  std::runtime_error);
}

TEST_CASE("edge list loading: header line tolerated") {
  std::istringstream in("source target weight\nA B 0.5\n");
  Graph g = load_edge_list(in, false, WeightModel::given());
  CHECK(g.node_count() == 2);
}

TEST_CASE("weighted cascade: probs are 1/in-degree") {
  std::istringstream in("A C\nB C\nC D\n");
  Graph g = load_edge_list(in, false, WeightModel::weighted_cascade());
  int c = g.node_by_label("C"), d = g.node_by_label("D");
  for (int e : g.in_edges(c)) CHECK(g.edge(e).prob == doctest::Approx(0.5));
  for (int e : g.in_edges(d)) CHECK(g.edge(e).prob == doctest::Approx(1.0));
}

TEST_CASE("weighted cascade: star with in-degree 4 and exact normalization") {
  std::vector<Edge> edges;
  for (int u = 1; u <= 4; ++u) edges.push_back({u, 0, 0.3});
  Graph g = assign_weighted_cascade(Graph::from_edges(5, edges));
  double sum = 0.0;
  for (int e : g.in_edges(0)) {
    CHECK(g.edge(e).prob == doctest::Approx(0.25));
    sum += g.edge(e).prob;
  }
  CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("weighted cascade: incoming probs sum to one at every node") {
  Graph g = assign_weighted_cascade(testutil::random_graph(12, 40, 99));
  for (int v = 0; v < g.node_count(); ++v) {
    if (g.in_degree(v) == 0) continue;
    double sum = 0.0;
    for (int e : g.in_edges(v)) sum += g.edge(e).prob;
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("trivalency: support, determinism, frequencies") {
  std::vector<Edge> edges;
  int n = 200;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < 15; ++v)
      if (u != v) edges.push_back({u, v, 0.0});
  Graph base = Graph::from_edges(n, edges);
  REQUIRE(base.edge_count() >= 2985);
  Graph g1 = assign_trivalency(base, 77);
  Graph g2 = assign_trivalency(base, 77);
  int counts[3] = {0, 0, 0};
  for (int e = 0; e < g1.edge_count(); ++e) {
    double p = g1.edge(e).prob;
    CHECK(g1.edge(e).prob == g2.edge(e).prob);
    if (p == 0.1)
      ++counts[0];
    else if (p == 0.01)
      ++counts[1];
    else if (p == 0.001)
      ++counts[2];
    else
      FAIL("prob outside the trivalency support");
  }
  // binomial: mean m/3, sd sqrt(m*(1/3)*(2/3)); each bucket within 5 sd
  double m = g1.edge_count();
  double sd = std::sqrt(m * (1.0 / 3.0) * (2.0 / 3.0));
  for (int c : counts) CHECK(std::abs(c - m / 3.0) < 5.0 * sd);
  Graph g3 = assign_trivalency(base, 78);
  bool any_diff = false;
  for (int e = 0; e < g1.edge_count(); ++e) any_diff |= g1.edge(e).prob != g3.edge(e).prob;
  CHECK(any_diff);
}

TEST_CASE("residual graph: identity, worked example, full removal") {
  Graph g = testutil::example_graph();
  SUBCASE("empty removal is the identity") {
    ResidualGraph r = residual_graph(g, {}, {});
    CHECK(r.graph.node_count() == 4);
    CHECK(r.graph.edge_count() == 3);
    for (const auto& b : r.boundary) CHECK(b.empty());
  }
  SUBCASE("removing A keeps BC and BD") {
    ResidualGraph r = residual_graph(g, {g.node_by_label("A")}, {});
    CHECK(r.graph.node_count() == 3);
    CHECK(r.graph.edge_count() == 2);
    for (const auto& b : r.boundary) CHECK(b.empty());
  }
  SUBCASE("removing A and B with frontier B exposes boundary probs") {
    int a = g.node_by_label("A"), b = g.node_by_label("B");
    ResidualGraph r = residual_graph(g, {a, b}, {b});
    CHECK(r.graph.node_count() == 2);
    CHECK(r.graph.edge_count() == 0);
    int c = r.to_residual[g.node_by_label("C")];
    int d = r.to_residual[g.node_by_label("D")];
    REQUIRE(r.boundary[c].size() == 1);
    REQUIRE(r.boundary[d].size() == 1);
    CHECK(r.boundary[c][0] == doctest::Approx(0.8));
    CHECK(r.boundary[d][0] == doctest::Approx(0.9));
  }
  SUBCASE("removing everything leaves the empty graph") {
    ResidualGraph r = residual_graph(g, {0, 1, 2, 3}, {});
    CHECK(r.graph.node_count() == 0);
  }
  SUBCASE("unknown node is rejected") {
    CHECK_THROWS_AS(residual_graph(g, {17}, {}), std::invalid_argument);
    CHECK_THROWS_AS(residual_graph(g, {0}, {1}), std::invalid_argument);
  }
}

TEST_CASE("adjacency indexes are mutually consistent and degrees sum to edge count") {
  Graph g = testutil::random_graph(10, 30, 5);
  int in_sum = 0, out_sum = 0;
  for (int v = 0; v < g.node_count(); ++v) {
    in_sum += g.in_degree(v);
    out_sum += g.out_degree(v);
    for (int e : g.out_edges(v)) CHECK(g.edge(e).src == v);
    for (int e : g.in_edges(v)) CHECK(g.edge(e).dst == v);
  }
  CHECK(in_sum == g.edge_count());
  CHECK(out_sum == g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    auto& outs = g.out_edges(ed.src);
    auto& ins = g.in_edges(ed.dst);
    CHECK(std::count(outs.begin(), outs.end(), e) == 1);
    CHECK(std::count(ins.begin(), ins.end(), e) == 1);
  }
}

TEST_CASE("edge list round-trip reproduces the graph") {
  std::istringstream in("A B 0.5\nB C 0.8\nB D 0.9\nD A 0.25\n");
  Graph g = load_edge_list(in, false, WeightModel::given());
  std::ostringstream text;
  write_edge_list(g, text);
  std::istringstream back(text.str());
  Graph g2 = load_edge_list(back, false, WeightModel::given());
  REQUIRE(g2.node_count() == g.node_count());
  REQUIRE(g2.edge_count() == g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    CHECK(g.edge(e).src == g2.edge(e).src);
    CHECK(g.edge(e).dst == g2.edge(e).dst);
    CHECK(g.edge(e).prob == g2.edge(e).prob);
  }
  for (int v = 0; v < g.node_count(); ++v) CHECK(g.label(v) == g2.label(v));
}
