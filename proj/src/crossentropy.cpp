#include "imdiff/crossentropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "imdiff/rng.hpp"

namespace imdiff {

namespace {

void check_params(const CeParams& p) {
  if (!(p.elite_fraction > 0.0 && p.elite_fraction < 1.0))
    throw std::invalid_argument("elite_fraction outside (0,1)");
  if (!(p.smoothing > 0.0 && p.smoothing <= 1.0))
    throw std::invalid_argument("smoothing outside (0,1]");
  if (p.max_iterations < 1 || p.stall_limit < 1)
    throw std::invalid_argument("iteration limits must be positive");
}

void check_weights(const std::vector<double>& w) {
  for (double x : w)
    if (!(x >= 0.0 && x <= 1.0) || !std::isfinite(x))
      throw std::logic_error("ce: node weight left [0,1]");
}

// k distinct indices, drawn sequentially proportional to weights; zero-weight
// indices are only used when the positive support is exhausted (smallest id
// first, for determinism).
std::vector<int> sample_subset(const std::vector<double>& weights, int k,
                               std::mt19937_64& gen) {
  std::vector<double> w = weights;
  std::vector<int> picked;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int round = 0; round < k; ++round) {
    double total = 0.0;
    for (double x : w)
      if (x > 0.0) total += x;
    int chosen = -1;
    if (total > 0.0) {
      double target = uni(gen) * total;
      double acc = 0.0;
      for (int v = 0; v < static_cast<int>(w.size()); ++v) {
        if (w[v] <= 0.0) continue;
        acc += w[v];
        if (target < acc) {
          chosen = v;
          break;
        }
      }
      if (chosen < 0)  // fp round-off at the top of the prefix walk
        for (int v = static_cast<int>(w.size()) - 1; v >= 0; --v)
          if (w[v] > 0.0) {
            chosen = v;
            break;
          }
    } else {
      for (int v = 0; v < static_cast<int>(w.size()); ++v) {
        if (w[v] == 0.0 && std::find(picked.begin(), picked.end(), v) == picked.end()) {
          chosen = v;
          break;
        }
      }
    }
    picked.push_back(chosen);
    w[chosen] = -1.0;  // mark taken; distinct from a plain zero weight
  }
  for (double& x : w)
    if (x == -1.0) x = 0.0;
  std::sort(picked.begin(), picked.end());
  return picked;
}

double elite_threshold(std::vector<double> values, double elite_fraction) {
  std::size_t n_elite = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(elite_fraction * values.size())));
  std::nth_element(values.begin(), values.begin() + (n_elite - 1), values.end(),
                   std::greater<double>());
  return values[n_elite - 1];
}

}  // namespace

CeResult ce_select(const Graph& g, int k, const Objective& objective, CeParams params) {
  if (k < 0 || k > g.node_count()) throw std::invalid_argument("ce_select: k out of range");
  check_params(params);
  int n = g.node_count();
  int n_min = params.sample_size_min > 0 ? params.sample_size_min : 10 * std::max(1, k);
  int n_max = params.sample_size_max > 0 ? params.sample_size_max : 100 * std::max(1, k);
  if (n_min > n_max) throw std::invalid_argument("sample_size_min > sample_size_max");

  std::vector<double> probs;
  if (params.initial_node_probs) {
    probs = *params.initial_node_probs;
    if (static_cast<int>(probs.size()) != n)
      throw std::invalid_argument("initial_node_probs size mismatch");
    check_weights(probs);
  } else {
    probs.assign(n, std::min(1.0, static_cast<double>(std::max(1, k)) / n * 2.0));
  }

  CeResult result;
  result.best.budget = k;
  if (k == 0) {
    result.node_probs = probs;
    return result;
  }

  std::mt19937_64 gen(rng::splitmix64(params.master_seed));
  double best_value = -1.0;
  double prev_gamma = -1.0;
  int sample_size = n_min;
  int stall = 0;

  for (int iter = 0; iter < params.max_iterations; ++iter) {
    std::vector<std::vector<int>> samples(sample_size);
    for (int i = 0; i < sample_size; ++i) samples[i] = sample_subset(probs, k, gen);
    std::vector<double> values(sample_size);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(sample_size); ++i)
      values[i] = objective(samples[i]);
    for (double v : values)
      if (v < 0.0)
        throw std::invalid_argument("ce_select: objective returned a negative value");

    bool improved_best = false;
    for (int i = 0; i < sample_size; ++i)
      if (values[i] > best_value) {
        best_value = values[i];
        result.best.members = samples[i];
        improved_best = true;
      }

    double denom = 0.0;
    for (double v : values) denom += v;
    if (denom > 0.0) {
      std::vector<double> fresh(n, 0.0);
      for (int i = 0; i < sample_size; ++i)
        for (int v : samples[i]) fresh[v] += values[i];
      for (int v = 0; v < n; ++v) {
        double p_new = fresh[v] / denom;
        probs[v] = params.smoothing * p_new + (1.0 - params.smoothing) * probs[v];
        probs[v] = std::clamp(probs[v], 0.0, 1.0);
      }
    }
    check_weights(probs);

    double gamma = elite_threshold(values, params.elite_fraction);
    if (gamma > prev_gamma) {
      sample_size = std::max(n_min, sample_size / 2);
    } else {
      sample_size = std::min(n_max, sample_size * 2);
    }
    prev_gamma = std::max(prev_gamma, gamma);

    result.iterations = iter + 1;
    stall = improved_best ? 0 : stall + 1;
    if (stall >= params.stall_limit) break;
  }
  result.best_value = best_value;
  result.node_probs = probs;
  return result;
}

JointResult ce_joint_optimize(const Graph& g, int k, int D, const JointObjective& objective,
                              CeParams params) {
  if (k < 1 || k > g.node_count()) throw std::invalid_argument("ce_joint: k out of range");
  if (D < 1) throw std::invalid_argument("ce_joint: D must be >= 1");
  check_params(params);
  int n = g.node_count();
  int n_min = params.sample_size_min > 0 ? params.sample_size_min : 10 * k;
  int n_max = params.sample_size_max > 0 ? params.sample_size_max : 100 * k;
  if (n_min > n_max) throw std::invalid_argument("sample_size_min > sample_size_max");

  std::vector<double> node_probs(n, std::min(1.0, static_cast<double>(k) / n * 2.0));
  if (params.initial_node_probs) node_probs = *params.initial_node_probs;
  std::vector<double> k1_probs(k, 1.0 / k);
  std::vector<double> d_probs(D, 1.0 / D);

  std::mt19937_64 gen(rng::splitmix64(params.master_seed));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto draw_cat = [&](const std::vector<double>& p) {
    double target = uni(gen);
    double acc = 0.0;
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
      acc += p[i];
      if (target < acc) return i;
    }
    return static_cast<int>(p.size()) - 1;
  };

  struct Sample {
    int k1, d;
    std::vector<int> s1;
  };
  std::map<std::tuple<int, int, std::vector<int>>, double> cache;

  JointResult result;
  double best_value = -1.0;
  double prev_gamma = -1.0;
  int sample_size = n_min;
  int stall = 0;

  for (int iter = 0; iter < params.max_iterations; ++iter) {
    std::vector<Sample> samples(sample_size);
    for (int i = 0; i < sample_size; ++i) {
      samples[i].k1 = draw_cat(k1_probs) + 1;
      samples[i].d = draw_cat(d_probs) + 1;
      samples[i].s1 = sample_subset(node_probs, samples[i].k1, gen);
    }
    std::vector<double> values(sample_size);
    std::vector<int> need_eval;
    for (int i = 0; i < sample_size; ++i) {
      auto key = std::make_tuple(samples[i].k1, samples[i].d, samples[i].s1);
      auto it = cache.find(key);
      if (it != cache.end())
        values[i] = it->second;
      else
        need_eval.push_back(i);
    }
#pragma omp parallel for schedule(dynamic)
    for (long long j = 0; j < static_cast<long long>(need_eval.size()); ++j) {
      int i = need_eval[j];
      values[i] = objective(samples[i].k1, samples[i].d, samples[i].s1);
    }
    for (int i : need_eval)
      cache[std::make_tuple(samples[i].k1, samples[i].d, samples[i].s1)] = values[i];
    for (double v : values)
      if (v < 0.0)
        throw std::invalid_argument("ce_joint: objective returned a negative value");

    bool improved_best = false;
    for (int i = 0; i < sample_size; ++i)
      if (values[i] > best_value) {
        best_value = values[i];
        result.k1 = samples[i].k1;
        result.d = samples[i].d;
        result.s1.members = samples[i].s1;
        result.s1.budget = samples[i].k1;
        improved_best = true;
      }

    double denom = 0.0;
    for (double v : values) denom += v;
    if (denom > 0.0) {
      std::vector<double> f_node(n, 0.0), f_k1(k, 0.0), f_d(D, 0.0);
      for (int i = 0; i < sample_size; ++i) {
        for (int v : samples[i].s1) f_node[v] += values[i];
        f_k1[samples[i].k1 - 1] += values[i];
        f_d[samples[i].d - 1] += values[i];
      }
      double a = params.smoothing;
      for (int v = 0; v < n; ++v)
        node_probs[v] = std::clamp(a * f_node[v] / denom + (1 - a) * node_probs[v], 0.0, 1.0);
      for (int j = 0; j < k; ++j) k1_probs[j] = a * f_k1[j] / denom + (1 - a) * k1_probs[j];
      for (int j = 0; j < D; ++j) d_probs[j] = a * f_d[j] / denom + (1 - a) * d_probs[j];
      // renormalize the categoricals against fp drift
      double sk = 0.0, sd = 0.0;
      for (double x : k1_probs) sk += x;
      for (double x : d_probs) sd += x;
      for (double& x : k1_probs) x /= sk;
      for (double& x : d_probs) x /= sd;
    }
    check_weights(node_probs);

    double gamma = elite_threshold(values, params.elite_fraction);
    if (gamma > prev_gamma) {
      sample_size = std::max(n_min, sample_size / 2);
    } else {
      sample_size = std::min(n_max, sample_size * 2);
    }
    prev_gamma = std::max(prev_gamma, gamma);

    result.iterations = iter + 1;
    stall = improved_best ? 0 : stall + 1;
    if (stall >= params.stall_limit) break;
  }
  result.value = best_value;
  return result;
}

}  // namespace imdiff
