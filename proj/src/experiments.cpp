#include "imdiff/experiments.hpp"

#include <chrono>
#include <stdexcept>

namespace imdiff {

std::vector<SweepRow> sweep_split(const Graph& g, int k, const std::vector<int>& k1_grid,
                                  const std::vector<double>& deltas, int d,
                                  Phase1Alg phase1, Phase2Alg phase2, PlanMode mode,
                                  std::size_t reps, const SelectorConfig& config,
                                  std::uint64_t master) {
  if (deltas.empty() || k1_grid.empty())
    throw std::invalid_argument("sweep_split: empty grid");
  std::vector<SweepRow> rows;
  for (int k1 : k1_grid) {
    TwoPhasePlan plan;
    plan.k = k;
    plan.k1 = k1;
    plan.k2 = k - k1;
    plan.d = d;
    plan.phase1_alg = phase1;
    plan.phase2_alg = phase2;
    plan.mode = mode;
    plan.validate();
    SeedSet s1 = select_phase1(g, plan, config);
    for (double delta : deltas) {
      plan.delta = delta;
      auto t0 = std::chrono::steady_clock::now();
      ReplicationResult r = replicate_two_phase(g, plan, config, reps, master, &s1);
      auto t1 = std::chrono::steady_clock::now();
      SweepRow row;
      row.k1 = k1;
      row.k2 = plan.k2;
      row.d = d;
      row.delta = delta;
      row.mean = r.decay.mean;
      row.std_error = r.decay.std_error;
      row.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<ProgressionCurve> progression(const Graph& g, int k,
                                          const std::vector<std::pair<int, int>>& pairs,
                                          Phase1Alg phase1, Phase2Alg phase2, PlanMode mode,
                                          std::size_t reps, const SelectorConfig& config,
                                          std::uint64_t master) {
  std::vector<ProgressionCurve> out;
  for (auto [k1, d] : pairs) {
    TwoPhasePlan plan;
    plan.k = k;
    plan.k1 = k1;
    plan.k2 = k - k1;
    plan.d = d;
    plan.phase1_alg = phase1;
    plan.phase2_alg = phase2;
    plan.mode = mode;
    plan.validate();
    ReplicationResult r = replicate_two_phase(g, plan, config, reps, master);
    ProgressionCurve curve;
    curve.k1 = k1;
    curve.d = d;
    curve.mean_cumulative = r.mean_cumulative;
    out.push_back(std::move(curve));
  }
  return out;
}

}  // namespace imdiff
