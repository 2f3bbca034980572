#include "imdiff/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "imdiff/rng.hpp"

namespace imdiff {

LiveGraph sample_live_graph(const Graph& g, std::uint64_t sample_seed) {
  LiveGraph lg;
  lg.base = &g;
  lg.alive.resize(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e)
    lg.alive[e] = rng::edge_coin(sample_seed, e) < g.edge(e).prob ? 1 : 0;
  return lg;
}

LiveGraph live_graph_from_mask(const Graph& g, std::uint64_t mask) {
  if (g.edge_count() > 63) throw std::invalid_argument("mask form limited to 63 edges");
  LiveGraph lg;
  lg.base = &g;
  lg.alive.resize(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) lg.alive[e] = (mask >> e) & 1 ? 1 : 0;
  return lg;
}

ReachResult reach(const LiveGraph& lg, const std::vector<int>& seeds) {
  const Graph& g = *lg.base;
  if (seeds.empty()) throw std::invalid_argument("reach: empty seed set");
  std::vector<char> seen(g.node_count(), 0);
  std::vector<int> stack;
  for (int v : seeds) {
    if (v < 0 || v >= g.node_count()) throw std::invalid_argument("reach: unknown node id");
    if (!seen[v]) {
      seen[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int e : g.out_edges(u)) {
      int w = g.edge(e).dst;
      if (!seen[w] && lg.alive[e]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  ReachResult r;
  for (int v = 0; v < g.node_count(); ++v)
    if (seen[v]) r.reached.push_back(v);
  r.count = static_cast<int>(r.reached.size());
  return r;
}

void SeedSchedule::validate(int node_count) const {
  int prev_time = -1;
  std::vector<char> seen(node_count, 0);
  for (const auto& [t, seeds] : entries) {
    if (t <= prev_time) throw std::invalid_argument("schedule times must strictly increase");
    if (t < 0) throw std::invalid_argument("negative schedule time");
    prev_time = t;
    for (int v : seeds) {
      if (v < 0 || v >= node_count) throw std::invalid_argument("schedule: unknown node id");
      if (seen[v]) throw std::invalid_argument("schedule: seed sets must be disjoint");
      seen[v] = 1;
    }
  }
}

std::vector<int> DiffusionState::active_set() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(activation_time.size()); ++v)
    if (activation_time[v] >= 0) out.push_back(v);
  return out;
}

std::vector<int> DiffusionState::frontier() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(activation_time.size()); ++v)
    if (activation_time[v] == clock) out.push_back(v);
  return out;
}

int DiffusionState::active_count() const {
  int n = 0;
  for (int t : activation_time) n += t >= 0;
  return n;
}

namespace {

// Core IC loop shared by simulate and continue_simulation. `cur` holds the
// nodes activated at time `start`; injections are consumed as time passes.
void run_ic(const Graph& g, const std::vector<std::pair<int, std::vector<int>>>& injections,
            std::vector<int>& times, std::vector<int> cur, int start, int until,
            std::uint64_t run_seed, int& clock_out) {
  std::size_t inj = 0;
  int t = start;
  int last_event = start;
  std::vector<int> next;
  while (true) {
    while (inj < injections.size() && injections[inj].first == t) {
      for (int v : injections[inj].second)
        if (times[v] < 0) {
          times[v] = t;
          cur.push_back(v);
        }
      if (!injections[inj].second.empty() && t > last_event) last_event = t;
      ++inj;
    }
    if (t == until) break;
    next.clear();
    for (int u : cur)
      for (int e : g.out_edges(u)) {
        int w = g.edge(e).dst;
        if (times[w] < 0 && rng::edge_coin(run_seed, e) < g.edge(e).prob) {
          times[w] = t + 1;
          next.push_back(w);
        }
      }
    if (!next.empty()) last_event = t + 1;
    cur.swap(next);
    if (until == kUntilExhaustion && cur.empty() && inj == injections.size()) {
      t = last_event;
      break;
    }
    ++t;
  }
  clock_out = t;
}

}  // namespace

DiffusionState simulate(const Graph& g, const SeedSchedule& schedule, int until,
                        std::uint64_t run_seed) {
  if (until < 0) throw std::invalid_argument("until must be non-negative");
  schedule.validate(g.node_count());
  DiffusionState st;
  st.activation_time.assign(g.node_count(), -1);
  run_ic(g, schedule.entries, st.activation_time, {}, 0, until, run_seed, st.clock);
  return st;
}

DiffusionState continue_simulation(const Graph& g, DiffusionState state,
                                   const std::vector<int>& extra_seeds, int until,
                                   std::uint64_t run_seed) {
  if (until != kUntilExhaustion && until < state.clock)
    throw std::invalid_argument("until precedes the state's clock");
  std::vector<int> cur;
  for (int v : extra_seeds) {
    if (v < 0 || v >= g.node_count())
      throw std::invalid_argument("continue_simulation: unknown node id");
    if (state.activation_time[v] >= 0)
      throw std::invalid_argument("extra seed already active");
    state.activation_time[v] = state.clock;
  }
  for (int v = 0; v < g.node_count(); ++v)
    if (state.activation_time[v] == state.clock) cur.push_back(v);
  run_ic(g, {}, state.activation_time, std::move(cur), state.clock, until, run_seed,
         state.clock);
  return state;
}

SpreadEstimate summarize_samples(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("need at least one sample");
  SpreadEstimate est;
  est.samples = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  est.mean = sum / static_cast<double>(values.size());
  if (values.size() == 1) {
    est.degenerate = true;
    return est;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - est.mean) * (v - est.mean);
  double var = ss / static_cast<double>(values.size() - 1);
  est.std_error = std::sqrt(var / static_cast<double>(values.size()));
  return est;
}

SpreadEstimate estimate_spread(const Graph& g, const SeedSchedule& schedule,
                               std::size_t n_samples, std::uint64_t master_seed) {
  if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
  schedule.validate(g.node_count());
  std::vector<double> counts(n_samples);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n_samples); ++i) {
    DiffusionState st =
        simulate(g, schedule, kUntilExhaustion, rng::substream(master_seed, i));
    counts[i] = static_cast<double>(st.active_count());
  }
  return summarize_samples(counts);
}

SpreadEstimate estimate_decay_spread(const Graph& g, const SeedSchedule& schedule,
                                     double delta, std::size_t n_samples,
                                     std::uint64_t master_seed) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta outside [0,1]");
  if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
  schedule.validate(g.node_count());
  std::vector<double> vals(n_samples);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n_samples); ++i) {
    DiffusionState st =
        simulate(g, schedule, kUntilExhaustion, rng::substream(master_seed, i));
    double v = 0.0;
    for (int t : st.activation_time)
      if (t >= 0) v += std::pow(delta, static_cast<double>(t));
    vals[i] = v;
  }
  return summarize_samples(vals);
}

DiffusionState simulate_ref(const Graph& g, const SeedSchedule& schedule, int until,
                            std::uint64_t run_seed) {
  if (until < 0) throw std::invalid_argument("until must be non-negative");
  schedule.validate(g.node_count());
  LiveGraph lg = sample_live_graph(g, run_seed);
  DiffusionState st;
  st.activation_time.assign(g.node_count(), -1);
  std::size_t inj = 0;
  int t = 0;
  int last_event = 0;
  std::vector<int> cur, next;
  while (true) {
    while (inj < schedule.entries.size() && schedule.entries[inj].first == t) {
      for (int v : schedule.entries[inj].second)
        if (st.activation_time[v] < 0) {
          st.activation_time[v] = t;
          cur.push_back(v);
        }
      if (!schedule.entries[inj].second.empty() && t > last_event) last_event = t;
      ++inj;
    }
    if (t == until) break;
    next.clear();
    for (int u : cur)
      for (int e : g.out_edges(u)) {
        int w = g.edge(e).dst;
        if (st.activation_time[w] < 0 && lg.alive[e]) {
          st.activation_time[w] = t + 1;
          next.push_back(w);
        }
      }
    if (!next.empty()) last_event = t + 1;
    cur.swap(next);
    if (until == kUntilExhaustion && cur.empty() && inj == schedule.entries.size()) {
      t = last_event;
      break;
    }
    ++t;
  }
  st.clock = t;
  return st;
}

SpreadEstimate estimate_spread_ref(const Graph& g, const SeedSchedule& schedule,
                                   std::size_t n_samples, std::uint64_t master_seed) {
  if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
  std::vector<double> counts(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    DiffusionState st =
        simulate_ref(g, schedule, kUntilExhaustion, rng::substream(master_seed, i));
    counts[i] = static_cast<double>(st.active_count());
  }
  return summarize_samples(counts);
}

}  // namespace imdiff
