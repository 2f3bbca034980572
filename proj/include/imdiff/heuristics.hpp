#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "imdiff/graph.hpp"

namespace imdiff {

struct SeedSet {
  std::vector<int> members;  // selection order
  int budget = 0;
};

struct SelectorConfig {
  int mc_samples = 1000;
  std::uint64_t master_seed = 0;
  bool lazy = true;
};

// Evaluates a full seed set (partial members included by the caller).
using Objective = std::function<double(const std::vector<int>&)>;

// Spread objective with common random numbers: every set is scored on the same
// sample streams, so marginal comparisons within a greedy iteration share noise.
Objective make_spread_objective(const Graph& g, const SelectorConfig& config);
Objective make_decay_objective(const Graph& g, double delta, const SelectorConfig& config);

// Greedy marginal-gain selection on top of `objective`, seeded with `partial`
// (partial members are excluded from candidacy and do not consume k). The lazy
// variant is CELF: stale upper bounds in a priority queue, re-checked before
// acceptance. Ties break to the smallest node id.
SeedSet greedy_select(const Graph& g, int k, const std::vector<int>& partial,
                      const Objective& objective, const SelectorConfig& config);

// Generalized degree discount: score(v) = prod over selected in-neighbors x of
// (1-p_xv) * (1 + sum over unselected out-neighbors y of p_vy). `boundary`
// optionally adds external in-probabilities per node (frontier of a residual
// graph), folded into the discount product.
SeedSet gdd_select(const Graph& g, int k, const std::vector<int>& partial,
                   const std::vector<std::vector<double>>& boundary = {});

// GDD scores of every node against the given selected set (diagnostics/tests).
std::vector<double> gdd_scores(const Graph& g, const std::vector<int>& selected,
                               const std::vector<std::vector<double>>& boundary = {});

// top-k by weighted out-degree, ties to the smallest id
SeedSet weighted_degree_select(const Graph& g, int k);

}  // namespace imdiff
