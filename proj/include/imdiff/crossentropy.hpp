#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "imdiff/heuristics.hpp"

namespace imdiff {

struct CeParams {
  int sample_size_min = 0;  // 0 -> 10*k
  int sample_size_max = 0;  // 0 -> 100*k
  double elite_fraction = 0.1;
  double smoothing = 0.7;
  int max_iterations = 100;
  int stall_limit = 5;
  std::uint64_t master_seed = 0;
  // optional starting inclusion weights (tests pin degenerate distributions)
  std::optional<std::vector<double>> initial_node_probs;
};

struct CeResult {
  SeedSet best;
  double best_value = 0.0;
  int iterations = 0;
  std::vector<double> node_probs;  // final distribution
};

// Cross-entropy over fixed-size seed sets with the weighted update rule: each
// node's new weight is the value-weighted inclusion frequency over all samples
// of the iteration, smoothed into the old weight. The sample size adapts:
// grows when the elite threshold stops improving, shrinks otherwise (FACE).
// Objective values must be non-negative; the update depends only on their
// ratios, so any positive rescaling leaves the trajectory unchanged.
CeResult ce_select(const Graph& g, int k, const Objective& objective, CeParams params);

using JointObjective = std::function<double(int k1, int d, const std::vector<int>& s1)>;

struct JointResult {
  int k1 = 0;
  int d = 0;
  SeedSet s1;
  double value = 0.0;
  int iterations = 0;
};

// Joint optimization over (k1, d, S1): k1 from {1..k}, d from {1..D}, S1 of
// size k1, all three components carried by one product distribution and
// updated by the same weighted rule. Objective evaluations are cached per
// (k1, d, S1).
JointResult ce_joint_optimize(const Graph& g, int k, int D, const JointObjective& objective,
                              CeParams params);

}  // namespace imdiff
