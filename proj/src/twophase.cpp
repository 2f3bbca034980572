#include "imdiff/twophase.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "imdiff/crossentropy.hpp"
#include "imdiff/rng.hpp"

namespace imdiff {

void TwoPhasePlan::validate() const {
  if (k1 < 1) throw std::invalid_argument("plan: k1 must be >= 1");
  if (k2 < 0) throw std::invalid_argument("plan: negative k2");
  if (k1 + k2 > k) throw std::invalid_argument("plan: k1 + k2 exceeds the budget k");
  if (d < 1) throw std::invalid_argument("plan: d must be >= 1");
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("plan: delta outside [0,1]");
}

namespace {

// Residual graph plus a virtual source standing in for the frontier: parallel
// boundary edges into a node collapse to prob 1 - prod(1-p).
struct Phase2Space {
  ResidualGraph res;
  Graph augmented;   // residual + virtual source (id = residual node count)
  bool has_source = false;
};

Phase2Space make_phase2_space(const Graph& g, const std::vector<int>& active,
                              const std::vector<int>& frontier) {
  Phase2Space sp;
  sp.res = residual_graph(g, active, frontier);
  int nres = sp.res.graph.node_count();
  std::vector<Edge> edges = sp.res.graph.edges();
  for (int w = 0; w < nres; ++w) {
    if (sp.res.boundary[w].empty()) continue;
    double stay = 1.0;
    for (double p : sp.res.boundary[w]) stay *= 1.0 - p;
    edges.push_back({nres, w, 1.0 - stay});
    sp.has_source = true;
  }
  sp.augmented = Graph::from_edges(nres + (sp.has_source ? 1 : 0), std::move(edges));
  return sp;
}

std::vector<int> pick_s2(const Graph& g, const std::vector<int>& active,
                         const std::vector<int>& frontier, int k2, Phase2Alg alg,
                         int inner_samples, std::uint64_t inner_seed) {
  Phase2Space sp = make_phase2_space(g, active, frontier);
  int nres = sp.res.graph.node_count();
  int k2_eff = std::min(k2, nres);
  std::vector<int> chosen;
  if (k2_eff == 0) return chosen;
  switch (alg) {
    case Phase2Alg::GDD:
      chosen = gdd_select(sp.res.graph, k2_eff, {}, sp.res.boundary).members;
      break;
    case Phase2Alg::WeightedDegree:
      chosen = weighted_degree_select(sp.res.graph, k2_eff).members;
      break;
    case Phase2Alg::Greedy: {
      SelectorConfig cfg;
      cfg.mc_samples = inner_samples;
      cfg.master_seed = inner_seed;
      Objective obj = make_spread_objective(sp.augmented, cfg);
      std::vector<int> partial;
      if (sp.has_source) partial.push_back(nres);  // source fires, never a candidate
      chosen = greedy_select(sp.augmented, k2_eff, partial, obj, cfg).members;
      break;
    }
  }
  for (int& v : chosen) v = sp.res.to_original[v];
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

using YKey = std::pair<std::vector<int>, std::vector<int>>;

double decay_value_of(const DiffusionState& st, double delta) {
  double v = 0.0;
  for (int t : st.activation_time)
    if (t >= 0) v += std::pow(delta, static_cast<double>(t));
  return v;
}

}  // namespace

SpreadEstimate estimate_second_phase(const Graph& g, const std::vector<int>& s1, int k2,
                                     int d, Phase2Alg alg, const HConfig& config) {
  if (s1.empty()) throw std::invalid_argument("estimate_second_phase: empty s1");
  if (k2 < 0 || d < 0) throw std::invalid_argument("estimate_second_phase: negative k2 or d");
  if (config.n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
  SeedSchedule phase1 = SeedSchedule::at_time_zero(s1);
  phase1.validate(g.node_count());

  std::map<YKey, std::vector<int>> s2_cache;
  std::uint64_t inner_seed = rng::mix(config.master_seed, 0x5eedf00dull);
  std::vector<double> vals(config.n_samples);

#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(config.n_samples); ++i) {
    std::uint64_t run_seed = rng::substream(config.master_seed, i);
    DiffusionState st = simulate(g, phase1, d, run_seed);
    std::vector<int> s2;
    if (k2 > 0) {
      YKey key{st.active_set(), st.frontier()};
#pragma omp critical(imdiff_s2_cache)
      {
        auto it = s2_cache.find(key);
        if (it != s2_cache.end()) {
          s2 = it->second;
        } else {
          s2 = pick_s2(g, key.first, key.second, k2, alg, config.greedy_inner_samples,
                       inner_seed);
          s2_cache.emplace(std::move(key), s2);
        }
      }
    }
    DiffusionState fin = continue_simulation(g, st, s2, kUntilExhaustion, run_seed);
    vals[i] = config.delta == 1.0 ? static_cast<double>(fin.active_count())
                                  : decay_value_of(fin, config.delta);
  }
  return summarize_samples(vals);
}

SpreadEstimate estimate_h(const Graph& g, const std::vector<int>& s1, int k2, int d,
                          std::size_t n_samples, std::uint64_t master_seed) {
  HConfig cfg;
  cfg.n_samples = n_samples;
  cfg.master_seed = master_seed;
  return estimate_second_phase(g, s1, k2, d, Phase2Alg::GDD, cfg);
}

SpreadEstimate estimate_f(const Graph& g, const std::vector<int>& s1, int k2, int d,
                          std::size_t n_samples, std::uint64_t master_seed) {
  HConfig cfg;
  cfg.n_samples = n_samples;
  cfg.master_seed = master_seed;
  return estimate_second_phase(g, s1, k2, d, Phase2Alg::Greedy, cfg);
}

SeedSet select_phase1(const Graph& g, const TwoPhasePlan& plan, const SelectorConfig& config) {
  plan.validate();

  Objective objective;
  if (plan.mode == PlanMode::Farsighted && plan.k2 > 0) {
    HConfig hcfg;
    hcfg.n_samples = static_cast<std::size_t>(config.mc_samples);
    hcfg.master_seed = config.master_seed;
    hcfg.delta = plan.delta;
    const Graph* gp = &g;
    int k2 = plan.k2, d = plan.d;
    Phase2Alg p2 = plan.phase2_alg;
    objective = [gp, k2, d, p2, hcfg](const std::vector<int>& seeds) -> double {
      if (seeds.empty()) return 0.0;
      return estimate_second_phase(*gp, seeds, k2, d, p2, hcfg).mean;
    };
  } else {
    // myopic: plain expected spread, regardless of any decay weighting applied
    // to the reported outcome
    objective = make_spread_objective(g, config);
  }

  switch (plan.phase1_alg) {
    case Phase1Alg::GDD:
      return gdd_select(g, plan.k1, {});
    case Phase1Alg::WeightedDegree:
      return weighted_degree_select(g, plan.k1);
    case Phase1Alg::Greedy:
      return greedy_select(g, plan.k1, {}, objective, config);
    case Phase1Alg::CrossEntropy: {
      CeParams params;
      params.master_seed = config.master_seed;
      return ce_select(g, plan.k1, objective, params).best;
    }
  }
  throw std::logic_error("unreachable");
}

SeedSet select_phase2(const Graph& g, const DiffusionState& observed, int k2,
                      Phase2Alg alg, const SelectorConfig& config) {
  std::vector<int> active = observed.active_set();
  if (k2 > g.node_count() - static_cast<int>(active.size()))
    throw std::invalid_argument("select_phase2: k2 exceeds the residual node count");
  SeedSet s;
  s.budget = k2;
  s.members = pick_s2(g, active, observed.frontier(), k2, alg, config.mc_samples,
                      rng::mix(config.master_seed, 0x5eedf00dull));
  return s;
}

TwoPhaseOutcome run_two_phase(const Graph& g, const TwoPhasePlan& plan,
                              const SelectorConfig& config, std::uint64_t live_seed) {
  plan.validate();
  TwoPhaseOutcome out;
  out.s1 = select_phase1(g, plan, config);
  out.observed = simulate(g, SeedSchedule::at_time_zero(out.s1.members), plan.d, live_seed);
  out.s2.budget = plan.k2;
  out.s2.members = pick_s2(g, out.observed.active_set(), out.observed.frontier(), plan.k2,
                           plan.phase2_alg, config.mc_samples,
                           rng::mix(config.master_seed, 0x5eedf00dull));
  out.final_state =
      continue_simulation(g, out.observed, out.s2.members, kUntilExhaustion, live_seed);
  out.final_count = out.final_state.active_count();
  out.decay_value = decay_value_of(out.final_state, plan.delta);
  int max_t = 0;
  for (int t : out.final_state.activation_time) max_t = std::max(max_t, t);
  out.timeline.assign(max_t + 1, 0);
  for (int t : out.final_state.activation_time)
    if (t >= 0) ++out.timeline[t];
  return out;
}

ReplicationResult replicate_two_phase(const Graph& g, const TwoPhasePlan& plan,
                                      const SelectorConfig& config, std::size_t reps,
                                      std::uint64_t master, const SeedSet* fixed_s1) {
  plan.validate();
  if (reps == 0) throw std::invalid_argument("reps must be >= 1");
  ReplicationResult out;
  out.s1 = fixed_s1 ? *fixed_s1 : select_phase1(g, plan, config);
  SeedSchedule phase1 = SeedSchedule::at_time_zero(out.s1.members);

  std::map<YKey, std::vector<int>> s2_cache;
  std::uint64_t inner_seed = rng::mix(config.master_seed, 0x5eedf00dull);
  std::vector<double> counts(reps), decays(reps);
  // integer sums of newly-activated counts per time step; a run contributes
  // zero beyond its own horizon, so the prefix sum is the cumulative total
  std::vector<long long> newly_sum;

#pragma omp parallel
  {
    std::vector<long long> local_newly;
#pragma omp for schedule(dynamic) nowait
    for (long long i = 0; i < static_cast<long long>(reps); ++i) {
      std::uint64_t run_seed = rng::substream(master, i);
      DiffusionState st = simulate(g, phase1, plan.d, run_seed);
      std::vector<int> s2;
      if (plan.k2 > 0) {
        YKey key{st.active_set(), st.frontier()};
#pragma omp critical(imdiff_s2_cache)
        {
          auto it = s2_cache.find(key);
          if (it != s2_cache.end()) {
            s2 = it->second;
          } else {
            s2 = pick_s2(g, key.first, key.second, plan.k2, plan.phase2_alg,
                         config.mc_samples, inner_seed);
            s2_cache.emplace(std::move(key), s2);
          }
        }
      }
      DiffusionState fin = continue_simulation(g, st, s2, kUntilExhaustion, run_seed);
      counts[i] = static_cast<double>(fin.active_count());
      decays[i] = decay_value_of(fin, plan.delta);
      for (int t : fin.activation_time) {
        if (t < 0) continue;
        if (static_cast<int>(local_newly.size()) < t + 1) local_newly.resize(t + 1, 0);
        ++local_newly[t];
      }
    }
#pragma omp critical(imdiff_cum_merge)
    {
      if (newly_sum.size() < local_newly.size()) newly_sum.resize(local_newly.size(), 0);
      for (std::size_t t = 0; t < local_newly.size(); ++t) newly_sum[t] += local_newly[t];
    }
  }

  out.spread = summarize_samples(counts);
  out.decay = summarize_samples(decays);
  out.mean_cumulative.resize(newly_sum.size());
  long long running = 0;
  for (std::size_t t = 0; t < newly_sum.size(); ++t) {
    running += newly_sum[t];
    out.mean_cumulative[t] = static_cast<double>(running) / static_cast<double>(reps);
  }
  return out;
}

AgreementReport agreement_diagnostics(const Graph& g, int set_size, int k2, int d,
                                      int n_pairs, const HConfig& config,
                                      std::uint64_t pair_seed) {
  if (set_size < 1 || set_size > g.node_count())
    throw std::invalid_argument("agreement_diagnostics: set_size out of range");
  std::mt19937_64 gen(rng::splitmix64(pair_seed));
  std::vector<int> ids(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) ids[v] = v;
  auto draw_set = [&]() {
    std::shuffle(ids.begin(), ids.end(), gen);
    std::vector<int> s(ids.begin(), ids.begin() + set_size);
    std::sort(s.begin(), s.end());
    return s;
  };

  AgreementReport rep;
  std::vector<double> gaps;
  for (int i = 0; i < n_pairs; ++i) {
    AgreementPair pr;
    pr.s = draw_set();
    do {
      pr.t = draw_set();
    } while (pr.t == pr.s);

    HConfig c = config;
    SpreadEstimate fs = estimate_second_phase(g, pr.s, k2, d, Phase2Alg::Greedy, c);
    SpreadEstimate ft = estimate_second_phase(g, pr.t, k2, d, Phase2Alg::Greedy, c);
    SpreadEstimate hs = estimate_second_phase(g, pr.s, k2, d, Phase2Alg::GDD, c);
    SpreadEstimate ht = estimate_second_phase(g, pr.t, k2, d, Phase2Alg::GDD, c);
    pr.f_s = fs.mean;
    pr.f_t = ft.mean;
    pr.h_s = hs.mean;
    pr.h_t = ht.mean;
    double joint_se = std::sqrt(fs.std_error * fs.std_error + ft.std_error * ft.std_error);
    pr.confident = std::abs(pr.f_s - pr.f_t) > 2.0 * joint_se;
    pr.agree = (pr.f_s - pr.f_t) * (pr.h_s - pr.h_t) > 0.0;
    // ratio taken against the larger-f side so both ratios live in (0, 1]
    if (pr.f_s <= pr.f_t)
      pr.ratio_gap = std::abs(pr.h_s / pr.h_t - pr.f_s / pr.f_t);
    else
      pr.ratio_gap = std::abs(pr.h_t / pr.h_s - pr.f_t / pr.f_s);
    if (pr.confident) {
      ++rep.n_confident;
      rep.agreement_rate += pr.agree ? 1.0 : 0.0;
      gaps.push_back(pr.ratio_gap);
    }
    rep.pairs.push_back(std::move(pr));
  }
  if (rep.n_confident > 0) rep.agreement_rate /= rep.n_confident;
  if (!gaps.empty()) {
    std::sort(gaps.begin(), gaps.end());
    std::size_t m = gaps.size();
    rep.median_ratio_gap = m % 2 ? gaps[m / 2] : 0.5 * (gaps[m / 2 - 1] + gaps[m / 2]);
  }
  return rep;
}

}  // namespace imdiff
