// Compares the serial reference estimator against the OpenMP path and checks
// that they produce identical results while doing so.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "imdiff/cascade.hpp"
#include "imdiff/graph.hpp"

using namespace imdiff;

namespace {

Graph random_graph(int n, int m, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> prob(0.02, 0.3);
  std::vector<Edge> edges;
  std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
  while (static_cast<int>(edges.size()) < m) {
    int u = pick(gen), v = pick(gen);
    if (u == v || used[u][v]) continue;
    used[u][v] = 1;
    edges.push_back({u, v, prob(gen)});
  }
  return Graph::from_edges(n, std::move(edges));
}

double time_s(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 2000;
  int m = argc > 2 ? std::atoi(argv[2]) : 10000;
  std::size_t samples = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 20000;

  Graph g = random_graph(n, m, 42);
  SeedSchedule sched = SeedSchedule::at_time_zero({0, 1, 2, 3, 4});

  SpreadEstimate ref;
  double t_ref = time_s([&] { ref = estimate_spread_ref(g, sched, samples, 7); });
  std::printf("serial reference:  mean=%.6f  stderr=%.6f  %.3fs\n", ref.mean,
              ref.std_error, t_ref);

#ifdef _OPENMP
  const int hw_threads = omp_get_max_threads();
  for (int threads : {1, 2, 4, 8}) {
    if (threads > hw_threads) break;
    omp_set_num_threads(threads);
    SpreadEstimate par;
    double t = time_s([&] { par = estimate_spread(g, sched, samples, 7); });
    bool same = par.mean == ref.mean && par.std_error == ref.std_error;
    std::printf("openmp %d threads:  mean=%.6f  %.3fs  speedup=%.2fx  %s\n", threads,
                par.mean, t, t_ref / t, same ? "identical" : "MISMATCH");
    if (!same) return 1;
  }
#else
  SpreadEstimate par;
  double t = time_s([&] { par = estimate_spread(g, sched, samples, 7); });
  std::printf("no OpenMP: lazy path  mean=%.6f  %.3fs\n", par.mean, t);
  if (par.mean != ref.mean) return 1;
#endif
  return 0;
}
