#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "imdiff/graph.hpp"

namespace imdiff {

// One Bernoulli sample of the edge set: a deterministic world.
struct LiveGraph {
  const Graph* base = nullptr;
  std::vector<char> alive;  // one entry per base edge
};

LiveGraph sample_live_graph(const Graph& g, std::uint64_t sample_seed);
// world from an explicit bitmask over edge indices (oracle / tests)
LiveGraph live_graph_from_mask(const Graph& g, std::uint64_t mask);

struct ReachResult {
  int count = 0;
  std::vector<int> reached;  // sorted
};
ReachResult reach(const LiveGraph& lg, const std::vector<int>& seeds);

// (time, seeds) injections; times strictly increasing, seed sets disjoint.
struct SeedSchedule {
  std::vector<std::pair<int, std::vector<int>>> entries;

  static SeedSchedule at_time_zero(std::vector<int> seeds) {
    SeedSchedule s;
    s.entries.emplace_back(0, std::move(seeds));
    return s;
  }
  void validate(int node_count) const;
};

// Observed diffusion at some time: activation time per node (-1 inactive),
// the active set A and the frontier R (nodes activated exactly at `clock`).
struct DiffusionState {
  std::vector<int> activation_time;
  int clock = 0;

  std::vector<int> active_set() const;
  std::vector<int> frontier() const;
  int active_count() const;
};

inline constexpr int kUntilExhaustion = std::numeric_limits<int>::max();

// Standard IC: a node activated at t makes one attempt per inactive
// out-neighbor at t+1. Edge outcomes are lazy coins keyed on (run_seed, edge),
// so the implied live graph is fixed per run and an edge is never re-rolled.
// With a finite `until` the clock always advances to `until` (quiet steps
// included) so later phases keep the global timeline.
DiffusionState simulate(const Graph& g, const SeedSchedule& schedule, int until,
                        std::uint64_t run_seed);

// Resume from `state` with extra_seeds activated at state.clock. Must use the
// run_seed of the original run for consistent edge outcomes.
DiffusionState continue_simulation(const Graph& g, DiffusionState state,
                                   const std::vector<int>& extra_seeds, int until,
                                   std::uint64_t run_seed);

struct SpreadEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  bool degenerate = false;  // single sample, std_error not meaningful
};

SpreadEstimate summarize_samples(const std::vector<double>& values);

// Monte Carlo spread: mean final active count over n_samples runs, sample i on
// stream (master_seed, i). Deterministic regardless of worker count.
SpreadEstimate estimate_spread(const Graph& g, const SeedSchedule& schedule,
                               std::size_t n_samples, std::uint64_t master_seed);

// Decay-weighted spread: per run sum of delta^t over activation times t
// (0^0 = 1, so time-0 seeds always count). delta=1 reduces to estimate_spread.
SpreadEstimate estimate_decay_spread(const Graph& g, const SeedSchedule& schedule,
                                     double delta, std::size_t n_samples,
                                     std::uint64_t master_seed);

// Serial reference path: materializes the live graph up front and walks it in
// time layers. Must match the lazy OpenMP path bit for bit.
DiffusionState simulate_ref(const Graph& g, const SeedSchedule& schedule, int until,
                            std::uint64_t run_seed);
SpreadEstimate estimate_spread_ref(const Graph& g, const SeedSchedule& schedule,
                                   std::size_t n_samples, std::uint64_t master_seed);

}  // namespace imdiff
