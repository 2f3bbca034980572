#pragma once

#include <cstdint>
#include <vector>

#include "imdiff/twophase.hpp"

namespace imdiff {

struct SweepRow {
  int k1 = 0, k2 = 0, d = 0;
  double delta = 1.0;
  double mean = 0.0;       // decay-weighted spread; equals plain spread at delta=1
  double std_error = 0.0;
  double wall_time_s = 0.0;
};

// Budget-split sweep: for each k1 in the grid (k2 = k - k1) and each delta,
// the two-phase spread over `reps` replications. Phase-1 selection happens
// once per k1 and is shared across deltas.
std::vector<SweepRow> sweep_split(const Graph& g, int k, const std::vector<int>& k1_grid,
                                  const std::vector<double>& deltas, int d,
                                  Phase1Alg phase1, Phase2Alg phase2, PlanMode mode,
                                  std::size_t reps, const SelectorConfig& config,
                                  std::uint64_t master);

struct ProgressionCurve {
  int k1 = 0, d = 0;
  std::vector<double> mean_cumulative;  // index = time step
};

// Diffusion progression curves for a list of (k1, d) pairs at total budget k.
std::vector<ProgressionCurve> progression(const Graph& g, int k,
                                          const std::vector<std::pair<int, int>>& pairs,
                                          Phase1Alg phase1, Phase2Alg phase2, PlanMode mode,
                                          std::size_t reps, const SelectorConfig& config,
                                          std::uint64_t master);

}  // namespace imdiff
