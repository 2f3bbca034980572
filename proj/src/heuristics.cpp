#include "imdiff/heuristics.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "imdiff/cascade.hpp"

namespace imdiff {

Objective make_spread_objective(const Graph& g, const SelectorConfig& config) {
  int n_samples = config.mc_samples;
  std::uint64_t seed = config.master_seed;
  const Graph* gp = &g;
  return [gp, n_samples, seed](const std::vector<int>& seeds) -> double {
    if (seeds.empty()) return 0.0;
    return estimate_spread(*gp, SeedSchedule::at_time_zero(seeds), n_samples, seed).mean;
  };
}

Objective make_decay_objective(const Graph& g, double delta, const SelectorConfig& config) {
  int n_samples = config.mc_samples;
  std::uint64_t seed = config.master_seed;
  const Graph* gp = &g;
  return [gp, delta, n_samples, seed](const std::vector<int>& seeds) -> double {
    if (seeds.empty()) return 0.0;
    return estimate_decay_spread(*gp, SeedSchedule::at_time_zero(seeds), delta, n_samples,
                                 seed)
        .mean;
  };
}

namespace {

std::vector<char> member_mask(const Graph& g, const std::vector<int>& nodes,
                              const char* what) {
  std::vector<char> mask(g.node_count(), 0);
  for (int v : nodes) {
    if (v < 0 || v >= g.node_count())
      throw std::invalid_argument(std::string(what) + ": unknown node id");
    mask[v] = 1;
  }
  return mask;
}

SeedSet greedy_exhaustive(const Graph& g, int k, const std::vector<int>& partial,
                          const Objective& objective) {
  std::vector<char> taken = member_mask(g, partial, "greedy_select");
  std::vector<int> current = partial;
  SeedSet result;
  result.budget = k;
  double base = objective(current);
  for (int round = 0; round < k; ++round) {
    std::vector<int> cands;
    for (int v = 0; v < g.node_count(); ++v)
      if (!taken[v]) cands.push_back(v);
    std::vector<double> vals(cands.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(cands.size()); ++i) {
      std::vector<int> trial = current;
      trial.push_back(cands[i]);
      vals[i] = objective(trial);
    }
    int best = -1;
    double best_val = 0.0;
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (best < 0 || vals[i] > best_val) {
        best = cands[i];
        best_val = vals[i];
      }
    current.push_back(best);
    taken[best] = 1;
    result.members.push_back(best);
    base = best_val;
  }
  (void)base;
  return result;
}

SeedSet greedy_lazy(const Graph& g, int k, const std::vector<int>& partial,
                    const Objective& objective) {
  std::vector<char> taken = member_mask(g, partial, "greedy_select");
  std::vector<int> current = partial;
  SeedSet result;
  result.budget = k;
  double base = objective(current);

  struct Entry {
    double gain;
    int node;
    int round;  // round the gain was computed in
  };
  auto cmp = [](const Entry& a, const Entry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.node > b.node;  // equal gains: smaller id pops first
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> pq(cmp);
  for (int v = 0; v < g.node_count(); ++v) {
    if (taken[v]) continue;
    std::vector<int> trial = current;
    trial.push_back(v);
    pq.push({objective(trial) - base, v, 0});
  }
  for (int round = 1; round <= k; ++round) {
    while (true) {
      Entry top = pq.top();
      pq.pop();
      if (top.round == round) {
        current.push_back(top.node);
        taken[top.node] = 1;
        result.members.push_back(top.node);
        base += top.gain;
        break;
      }
      std::vector<int> trial = current;
      trial.push_back(top.node);
      pq.push({objective(trial) - base, top.node, round});
    }
  }
  return result;
}

}  // namespace

SeedSet greedy_select(const Graph& g, int k, const std::vector<int>& partial,
                      const Objective& objective, const SelectorConfig& config) {
  if (k < 0) throw std::invalid_argument("greedy_select: negative k");
  std::vector<char> taken = member_mask(g, partial, "greedy_select");
  int candidates = 0;
  for (char c : taken) candidates += !c;
  if (k > candidates) throw std::invalid_argument("greedy_select: k exceeds candidate count");
  if (k == 0) return SeedSet{{}, 0};
  return config.lazy ? greedy_lazy(g, k, partial, objective)
                     : greedy_exhaustive(g, k, partial, objective);
}

std::vector<double> gdd_scores(const Graph& g, const std::vector<int>& selected,
                               const std::vector<std::vector<double>>& boundary) {
  std::vector<char> sel = member_mask(g, selected, "gdd_scores");
  std::vector<double> score(g.node_count(), 0.0);
  for (int v = 0; v < g.node_count(); ++v) {
    double discount = 1.0;
    for (int e : g.in_edges(v))
      if (sel[g.edge(e).src]) discount *= 1.0 - g.edge(e).prob;
    if (!boundary.empty())
      for (double p : boundary[v]) discount *= 1.0 - p;
    double out_sum = 0.0;
    for (int e : g.out_edges(v))
      if (!sel[g.edge(e).dst]) out_sum += g.edge(e).prob;
    score[v] = discount * (1.0 + out_sum);
  }
  return score;
}

SeedSet gdd_select(const Graph& g, int k, const std::vector<int>& partial,
                   const std::vector<std::vector<double>>& boundary) {
  if (k < 0) throw std::invalid_argument("gdd_select: negative k");
  std::vector<char> sel = member_mask(g, partial, "gdd_select");
  if (!boundary.empty() && static_cast<int>(boundary.size()) != g.node_count())
    throw std::invalid_argument("gdd_select: boundary size mismatch");
  int candidates = 0;
  for (char c : sel) candidates += !c;
  if (k > candidates) throw std::invalid_argument("gdd_select: k exceeds candidate count");

  // discount[v] = prod over selected in-neighbors (and boundary) of (1-p);
  // out_sum[v] = sum of probs to unselected out-neighbors; updated incrementally
  std::vector<double> discount(g.node_count(), 1.0), out_sum(g.node_count(), 0.0);
  for (int v = 0; v < g.node_count(); ++v) {
    for (int e : g.in_edges(v))
      if (sel[g.edge(e).src]) discount[v] *= 1.0 - g.edge(e).prob;
    if (!boundary.empty())
      for (double p : boundary[v]) discount[v] *= 1.0 - p;
  }
  for (int e = 0; e < g.edge_count(); ++e)
    if (!sel[g.edge(e).dst]) out_sum[g.edge(e).src] += g.edge(e).prob;

  SeedSet result;
  result.budget = k;
  for (int round = 0; round < k; ++round) {
    int best = -1;
    double best_score = 0.0;
    for (int v = 0; v < g.node_count(); ++v) {
      if (sel[v]) continue;
      double s = discount[v] * (1.0 + out_sum[v]);
      if (best < 0 || s > best_score) {
        best = v;
        best_score = s;
      }
    }
    sel[best] = 1;
    result.members.push_back(best);
    for (int e : g.out_edges(best)) discount[g.edge(e).dst] *= 1.0 - g.edge(e).prob;
    for (int e : g.in_edges(best)) out_sum[g.edge(e).src] -= g.edge(e).prob;
  }
  return result;
}

SeedSet weighted_degree_select(const Graph& g, int k) {
  if (k < 0 || k > g.node_count())
    throw std::invalid_argument("weighted_degree_select: k out of range");
  std::vector<double> wdeg(g.node_count(), 0.0);
  for (const Edge& e : g.edges()) wdeg[e.src] += e.prob;
  std::vector<int> order(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (wdeg[a] != wdeg[b]) return wdeg[a] > wdeg[b];
    return a < b;
  });
  SeedSet result;
  result.budget = k;
  result.members.assign(order.begin(), order.begin() + k);
  return result;
}

}  // namespace imdiff
