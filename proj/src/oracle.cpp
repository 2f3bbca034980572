#include "imdiff/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "imdiff/heuristics.hpp"

namespace imdiff::oracle {

namespace {

long long choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > (1LL << 62) / (n + 1)) return 1LL << 62;
  }
  return c;
}

// lexicographic k-combination iterator over [0, n)
bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void check_guard(const Graph& g, const OracleLimits& limits) {
  if (g.edge_count() > limits.max_edges)
    throw std::invalid_argument("oracle: graph exceeds the enumeration guard of " +
                                std::to_string(limits.max_edges) + " edges");
}

int reach_count_masked(const Graph& g, std::uint64_t mask, const std::vector<int>& seeds) {
  std::vector<char> seen(g.node_count(), 0);
  std::vector<int> stack;
  for (int v : seeds)
    if (!seen[v]) {
      seen[v] = 1;
      stack.push_back(v);
    }
  int count = static_cast<int>(stack.size());
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int e : g.out_edges(u)) {
      int w = g.edge(e).dst;
      if (!seen[w] && ((mask >> e) & 1)) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count;
}

// Nodes outside `blocked` reached from `sources` (sources may be blocked; they
// fire but are not counted). Traversal never re-enters blocked nodes.
int newly_reached(const Graph& g, std::uint64_t mask, const std::vector<char>& blocked,
                  const std::vector<int>& sources) {
  std::vector<char> seen(g.node_count(), 0);
  std::vector<int> stack;
  int count = 0;
  for (int v : sources)
    if (!seen[v]) {
      seen[v] = 1;
      stack.push_back(v);
      if (!blocked[v]) ++count;
    }
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int e : g.out_edges(u)) {
      int w = g.edge(e).dst;
      if (!seen[w] && !blocked[w] && ((mask >> e) & 1)) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count;
}

}  // namespace

WorldDistribution enumerate_worlds(const Graph& g, const OracleLimits& limits) {
  check_guard(g, limits);
  int m = g.edge_count();
  WorldDistribution dist;
  dist.graph = &g;
  dist.probs.assign(1ull << m, 0.0);
  for (std::uint64_t mask = 0; mask < dist.probs.size(); ++mask) {
    double p = 1.0;
    for (int e = 0; e < m; ++e)
      p *= ((mask >> e) & 1) ? g.edge(e).prob : 1.0 - g.edge(e).prob;
    dist.probs[mask] = p;
  }
  return dist;
}

double exact_sigma(const Graph& g, const std::vector<int>& seeds,
                   const OracleLimits& limits) {
  if (seeds.empty()) throw std::invalid_argument("exact_sigma: empty seed set");
  for (int v : seeds)
    if (v < 0 || v >= g.node_count())
      throw std::invalid_argument("exact_sigma: unknown node id");
  WorldDistribution dist = enumerate_worlds(g, limits);
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < dist.probs.size(); ++mask)
    total += dist.probs[mask] * reach_count_masked(g, mask, seeds);
  return total;
}

std::vector<int> evolve_world(const Graph& g, std::uint64_t mask,
                              const SeedSchedule& schedule) {
  schedule.validate(g.node_count());
  std::vector<int> times(g.node_count(), -1);
  std::size_t inj = 0;
  int t = 0;
  std::vector<int> cur, next;
  while (true) {
    while (inj < schedule.entries.size() && schedule.entries[inj].first == t) {
      for (int v : schedule.entries[inj].second)
        if (times[v] < 0) {
          times[v] = t;
          cur.push_back(v);
        }
      ++inj;
    }
    next.clear();
    for (int u : cur)
      for (int e : g.out_edges(u)) {
        int w = g.edge(e).dst;
        if (times[w] < 0 && ((mask >> e) & 1)) {
          times[w] = t + 1;
          next.push_back(w);
        }
      }
    cur.swap(next);
    if (cur.empty() && inj == schedule.entries.size()) break;
    ++t;
  }
  return times;
}

double exact_decay_sigma(const Graph& g, const SeedSchedule& schedule, double delta,
                         const OracleLimits& limits) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta outside [0,1]");
  WorldDistribution dist = enumerate_worlds(g, limits);
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < dist.probs.size(); ++mask) {
    std::vector<int> times = evolve_world(g, mask, schedule);
    double v = 0.0;
    for (int t : times)
      if (t >= 0) v += std::pow(delta, static_cast<double>(t));
    total += dist.probs[mask] * v;
  }
  return total;
}

TwoPhaseExact exact_two_phase(const Graph& g, const std::vector<int>& s1, int k2, int d,
                              SecondPhasePolicy policy, const OracleLimits& limits) {
  if (s1.empty()) throw std::invalid_argument("exact_two_phase: empty s1");
  if (k2 < 0 || d < 0) throw std::invalid_argument("exact_two_phase: negative k2 or d");
  WorldDistribution dist = enumerate_worlds(g, limits);
  SeedSchedule phase1 = SeedSchedule::at_time_zero(s1);

  // group worlds by the observation Y (activation-time map clipped at d)
  std::map<std::vector<int>, std::pair<double, std::vector<std::uint64_t>>> groups;
  for (std::uint64_t mask = 0; mask < dist.probs.size(); ++mask) {
    std::vector<int> times = evolve_world(g, mask, phase1);
    for (int& t : times)
      if (t > d) t = -1;
    auto& slot = groups[times];
    slot.first += dist.probs[mask];
    slot.second.push_back(mask);
  }

  TwoPhaseExact out;
  std::map<std::vector<int>, std::vector<int>> s2_by_key;
  for (const auto& [ykey, slot] : groups) {
    const auto& [py, masks] = slot;
    YGroupReport rep;
    rep.prob = py;
    std::vector<char> blocked(g.node_count(), 0);
    for (int v = 0; v < g.node_count(); ++v) {
      if (ykey[v] >= 0) {
        blocked[v] = 1;
        rep.active.push_back(v);
        if (ykey[v] == d) rep.frontier.push_back(v);
      }
    }
    std::vector<int> candidates;
    for (int v = 0; v < g.node_count(); ++v)
      if (!blocked[v]) candidates.push_back(v);
    int k2_eff = std::min<int>(k2, static_cast<int>(candidates.size()));
    rep.truncated = k2_eff < k2;
    out.any_truncated = out.any_truncated || rep.truncated;

    // conditional expected count of nodes beyond A^Y reached from R^Y u S2
    auto cond_value = [&](const std::vector<int>& s2) {
      std::vector<int> sources = rep.frontier;
      sources.insert(sources.end(), s2.begin(), s2.end());
      if (sources.empty()) return 0.0;
      double v = 0.0;
      for (std::uint64_t mask : masks)
        v += dist.probs[mask] * newly_reached(g, mask, blocked, sources);
      return v / py;
    };

    std::vector<int> chosen;
    if (k2_eff > 0 && py > 0) {
      switch (policy) {
        case SecondPhasePolicy::Optimal: {
          if (choose(static_cast<int>(candidates.size()), k2_eff) > limits.max_subsets)
            throw std::invalid_argument("oracle: subset count exceeds the guard");
          std::vector<int> idx(k2_eff);
          for (int i = 0; i < k2_eff; ++i) idx[i] = i;
          double best = -1.0;
          do {
            std::vector<int> s2(k2_eff);
            for (int i = 0; i < k2_eff; ++i) s2[i] = candidates[idx[i]];
            double v = cond_value(s2);
            if (v > best) {
              best = v;
              chosen = s2;
            }
          } while (next_combination(idx, static_cast<int>(candidates.size())));
          break;
        }
        case SecondPhasePolicy::Greedy: {
          std::vector<char> in_chosen(g.node_count(), 0);
          for (int round = 0; round < k2_eff; ++round) {
            int best = -1;
            double best_val = 0.0;
            for (int v : candidates) {
              if (in_chosen[v]) continue;
              std::vector<int> trial = chosen;
              trial.push_back(v);
              double val = cond_value(trial);
              if (best < 0 || val > best_val) {
                best = v;
                best_val = val;
              }
            }
            chosen.push_back(best);
            in_chosen[best] = 1;
          }
          std::sort(chosen.begin(), chosen.end());
          break;
        }
        case SecondPhasePolicy::GDD: {
          ResidualGraph res = residual_graph(g, rep.active, rep.frontier);
          SeedSet s2 = gdd_select(res.graph, k2_eff, {}, res.boundary);
          for (int v : s2.members) chosen.push_back(res.to_original[v]);
          std::sort(chosen.begin(), chosen.end());
          break;
        }
      }
    }
    rep.chosen_s2 = chosen;
    rep.conditional_value = py > 0 ? cond_value(chosen) : 0.0;
    out.value += py * (static_cast<double>(rep.active.size()) + rep.conditional_value);
    s2_by_key[ykey] = chosen;
    out.groups.push_back(std::move(rep));
  }

  // second form of the objective: full reachability from S1 u S2(Y(X))
  for (std::uint64_t mask = 0; mask < dist.probs.size(); ++mask) {
    std::vector<int> times = evolve_world(g, mask, phase1);
    for (int& t : times)
      if (t > d) t = -1;
    std::vector<int> seeds = s1;
    const auto& s2 = s2_by_key[times];
    seeds.insert(seeds.end(), s2.begin(), s2.end());
    out.value_second_form += dist.probs[mask] * reach_count_masked(g, mask, seeds);
  }
  if (std::abs(out.value - out.value_second_form) > 1e-9)
    throw std::logic_error("exact_two_phase: the two objective forms disagree");
  return out;
}

std::pair<std::vector<int>, double> exact_optimal_s1(const Graph& g, int k1, int k2,
                                                     int d, SecondPhasePolicy policy,
                                                     const OracleLimits& limits) {
  if (k1 < 1 || k1 > g.node_count())
    throw std::invalid_argument("exact_optimal_s1: k1 out of range");
  if (choose(g.node_count(), k1) > limits.max_subsets)
    throw std::invalid_argument("oracle: subset count exceeds the guard");
  std::vector<int> idx(k1);
  for (int i = 0; i < k1; ++i) idx[i] = i;
  std::vector<int> best_set;
  double best = -1.0;
  do {
    std::vector<int> s1(idx.begin(), idx.end());
    double v = exact_two_phase(g, s1, k2, d, policy, limits).value;
    if (v > best + 1e-12) {
      best = v;
      best_set = s1;
    }
  } while (next_combination(idx, g.node_count()));
  return {best_set, best};
}

}  // namespace imdiff::oracle
