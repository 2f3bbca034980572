#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "imdiff/cascade.hpp"
#include "imdiff/graph.hpp"

namespace imdiff::oracle {

struct OracleLimits {
  int max_edges = 24;               // 2^m worlds enumerated
  long long max_subsets = 1000000;  // C(n,k) guard for exhaustive seed search
};

// All 2^m live graphs of g; index is the edge bitmask.
struct WorldDistribution {
  const Graph* graph = nullptr;
  std::vector<double> probs;

  LiveGraph world(std::uint64_t mask) const { return live_graph_from_mask(*graph, mask); }
};

WorldDistribution enumerate_worlds(const Graph& g, const OracleLimits& limits = {});

// sigma(S) = sum over worlds of p(X) * |reachable from S in X|
double exact_sigma(const Graph& g, const std::vector<int>& seeds,
                   const OracleLimits& limits = {});

// Decay-weighted spread, exactly: per world, activation times are the
// deterministic layered evolution of the schedule; value is sum of delta^t.
double exact_decay_sigma(const Graph& g, const SeedSchedule& schedule, double delta,
                         const OracleLimits& limits = {});

// Deterministic evolution of one world: activation time per node, -1 inactive.
std::vector<int> evolve_world(const Graph& g, std::uint64_t mask,
                              const SeedSchedule& schedule);

enum class SecondPhasePolicy { Optimal, Greedy, GDD };

struct YGroupReport {
  std::vector<int> active;    // A^Y, sorted
  std::vector<int> frontier;  // R^Y, sorted
  double prob = 0.0;
  std::vector<int> chosen_s2;
  double conditional_value = 0.0;  // expected newly activated nodes beyond A^Y
  bool truncated = false;          // k2 exceeded the residual node count
};

struct TwoPhaseExact {
  double value = 0.0;
  double value_second_form = 0.0;  // sum_X p(X) sigma^X(S1 u S2(Y(X))); asserted equal
  std::vector<YGroupReport> groups;
  bool any_truncated = false;
};

// Exact two-phase objective: worlds are grouped by the observation Y after d
// steps from s1; per group the second seed set is chosen by `policy` and the
// conditional expected spread is computed exactly. With k2=0 this equals
// exact_sigma(g, s1).
TwoPhaseExact exact_two_phase(const Graph& g, const std::vector<int>& s1, int k2, int d,
                              SecondPhasePolicy policy, const OracleLimits& limits = {});

// Exhaustive argmax over all k1-subsets; ties broken by the lexicographically
// smallest id sequence.
std::pair<std::vector<int>, double> exact_optimal_s1(const Graph& g, int k1, int k2,
                                                     int d, SecondPhasePolicy policy,
                                                     const OracleLimits& limits = {});

}  // namespace imdiff::oracle
