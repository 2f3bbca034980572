#pragma once

#include <cstdint>
#include <vector>

#include "imdiff/cascade.hpp"
#include "imdiff/graph.hpp"
#include "imdiff/heuristics.hpp"

namespace imdiff {

enum class Phase1Alg { Greedy, GDD, WeightedDegree, CrossEntropy };
enum class Phase2Alg { Greedy, GDD, WeightedDegree };
enum class PlanMode { Farsighted, Myopic };

struct TwoPhasePlan {
  int k = 0;   // total budget
  int k1 = 0;
  int k2 = 0;
  int d = 1;
  double delta = 1.0;
  Phase1Alg phase1_alg = Phase1Alg::Greedy;
  Phase2Alg phase2_alg = Phase2Alg::GDD;
  PlanMode mode = PlanMode::Myopic;

  void validate() const;
};

struct HConfig {
  std::size_t n_samples = 1000;
  std::uint64_t master_seed = 0;
  // sample count of the inner spread estimates driving the per-Y greedy
  // second-phase selection (Phase2Alg::Greedy only)
  int greedy_inner_samples = 1000;
  double delta = 1.0;
};

// Monte Carlo estimate of the two-phase objective for a fixed first-phase set:
// per sample, run IC to time d, select k2 seeds on the residual graph with the
// frontier as external partial seeds, continue to exhaustion. Second-phase
// selections are cached per distinct observation (A^Y, R^Y). delta < 1 weights
// each activation by delta^t (phase-2 seeds count delta^d).
SpreadEstimate estimate_second_phase(const Graph& g, const std::vector<int>& s1, int k2,
                                     int d, Phase2Alg alg, const HConfig& config);

// h: GDD second phase; f: greedy second phase
SpreadEstimate estimate_h(const Graph& g, const std::vector<int>& s1, int k2, int d,
                          std::size_t n_samples, std::uint64_t master_seed);
SpreadEstimate estimate_f(const Graph& g, const std::vector<int>& s1, int k2, int d,
                          std::size_t n_samples, std::uint64_t master_seed);

// Phase-1 selection. Farsighted maximizes the two-phase estimate (h-style, with
// the plan's phase-2 algorithm); myopic maximizes plain sigma.
SeedSet select_phase1(const Graph& g, const TwoPhasePlan& plan, const SelectorConfig& config);

// Phase-2 selection on the observed state: residual graph with the frontier as
// external partial seeds; returns k2 nodes outside the active set.
SeedSet select_phase2(const Graph& g, const DiffusionState& observed, int k2,
                      Phase2Alg alg, const SelectorConfig& config);

struct TwoPhaseOutcome {
  SeedSet s1, s2;
  DiffusionState observed;     // state at time d
  DiffusionState final_state;  // at exhaustion
  int final_count = 0;
  double decay_value = 0.0;
  std::vector<int> timeline;  // newly activated per time step
};

// One realized end-to-end run of the two-phase algorithm.
TwoPhaseOutcome run_two_phase(const Graph& g, const TwoPhasePlan& plan,
                              const SelectorConfig& config, std::uint64_t live_seed);

struct ReplicationResult {
  SeedSet s1;
  SpreadEstimate spread;
  SpreadEstimate decay;
  std::vector<double> mean_cumulative;  // mean cumulative activations per time step
};

// Phase-1 selection once, then `reps` realized runs on streams (master, i).
// fixed_s1 (when given) skips selection.
ReplicationResult replicate_two_phase(const Graph& g, const TwoPhasePlan& plan,
                                      const SelectorConfig& config, std::size_t reps,
                                      std::uint64_t master,
                                      const SeedSet* fixed_s1 = nullptr);

struct AgreementPair {
  std::vector<int> s, t;
  double f_s, f_t, h_s, h_t;
  bool confident;  // |f(S)-f(T)| > 2 * joint std error
  bool agree;
  double ratio_gap;
};

struct AgreementReport {
  std::vector<AgreementPair> pairs;
  int n_confident = 0;
  double agreement_rate = 0.0;  // over confident pairs
  double median_ratio_gap = 0.0;
};

// Rank/ratio agreement between the greedy (f) and GDD (h) second-phase
// surrogates over random same-size seed-set pairs.
AgreementReport agreement_diagnostics(const Graph& g, int set_size, int k2, int d,
                                      int n_pairs, const HConfig& config,
                                      std::uint64_t pair_seed);

}  // namespace imdiff
