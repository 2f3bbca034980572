// imdiff: two-phase influence maximization experiments on the command line.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "imdiff/cascade.hpp"
#include "imdiff/crossentropy.hpp"
#include "imdiff/experiments.hpp"
#include "imdiff/graph.hpp"
#include "imdiff/heuristics.hpp"
#include "imdiff/oracle.hpp"
#include "imdiff/rng.hpp"
#include "imdiff/twophase.hpp"

namespace {

using namespace imdiff;

struct CommonOpts {
  std::string graph_path;
  std::string weights = "given";
  bool undirected = false;
  std::uint64_t seed = 0;
  int samples = 10000;
  int threads = 0;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool graph_required = true) {
  auto* g = cmd->add_option("--graph", o.graph_path, "edge-list file");
  if (graph_required) g->required();
  cmd->add_option("--weights", o.weights,
                  "edge weight model: given|wc|triv|uniform:P (default given)");
  cmd->add_flag("--undirected", o.undirected, "expand each input edge to both directions");
  cmd->add_option("--seed", o.seed, "master random seed")->envname("IMDIFF_SEED");
  cmd->add_option("--samples", o.samples, "Monte Carlo samples per estimate")
      ->envname("IMDIFF_SAMPLES");
  cmd->add_option("--threads", o.threads, "worker thread cap (0 = library default)")
      ->envname("IMDIFF_THREADS");
  cmd->add_option("--out", o.out_path, "output file (default stdout)");
}

Graph load_graph(const CommonOpts& o) {
#ifdef _OPENMP
  if (o.threads > 0) omp_set_num_threads(o.threads);
#endif
  WeightModel model;
  if (o.weights == "given")
    model = WeightModel::given();
  else if (o.weights == "wc")
    model = WeightModel::weighted_cascade();
  else if (o.weights == "triv")
    model = WeightModel::trivalency(o.seed);
  else if (o.weights.rfind("uniform:", 0) == 0)
    model = WeightModel::uniform(std::stod(o.weights.substr(8)));
  else
    throw std::runtime_error("unknown weight model: " + o.weights);
  return load_edge_list_file(o.graph_path, o.undirected, model);
}

// output file sink; config echo lines carry everything needed to re-run
class CsvOut {
 public:
  explicit CsvOut(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void echo(const CommonOpts& o, const std::string& extra) {
    os() << "# graph=" << o.graph_path << " weights=" << o.weights
         << " undirected=" << (o.undirected ? 1 : 0) << " seed=" << o.seed
         << " samples=" << o.samples << (extra.empty() ? "" : " " + extra) << "\n";
  }

 private:
  std::ofstream file_;
};

std::vector<int> parse_nodes(const Graph& g, const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int v = g.node_by_label(tok);
    if (v < 0) throw std::runtime_error("unknown node label: " + tok);
    out.push_back(v);
  }
  return out;
}

std::string fmt(double x, int prec = 10) {
  std::ostringstream ss;
  ss << std::setprecision(prec) << x;
  return ss.str();
}

Phase1Alg parse_phase1(const std::string& s) {
  if (s == "greedy") return Phase1Alg::Greedy;
  if (s == "gdd") return Phase1Alg::GDD;
  if (s == "wdeg") return Phase1Alg::WeightedDegree;
  if (s == "ce") return Phase1Alg::CrossEntropy;
  throw std::runtime_error("unknown phase-1 algorithm: " + s);
}

Phase2Alg parse_phase2(const std::string& s) {
  if (s == "greedy") return Phase2Alg::Greedy;
  if (s == "gdd") return Phase2Alg::GDD;
  if (s == "wdeg") return Phase2Alg::WeightedDegree;
  throw std::runtime_error("unknown phase-2 algorithm: " + s);
}

int cmd_select(const CommonOpts& o, const std::string& alg, int k) {
  Graph g = load_graph(o);
  SelectorConfig cfg;
  cfg.mc_samples = o.samples;
  cfg.master_seed = o.seed;
  SeedSet seeds;
  if (alg == "greedy")
    seeds = greedy_select(g, k, {}, make_spread_objective(g, cfg), cfg);
  else if (alg == "gdd")
    seeds = gdd_select(g, k, {});
  else if (alg == "wdeg")
    seeds = weighted_degree_select(g, k);
  else if (alg == "ce") {
    CeParams params;
    params.master_seed = o.seed;
    seeds = ce_select(g, k, make_spread_objective(g, cfg), params).best;
  } else {
    throw std::runtime_error("unknown algorithm: " + alg);
  }

  SpreadEstimate est;
  if (!seeds.members.empty())
    est = estimate_spread(g, SeedSchedule::at_time_zero(seeds.members),
                          static_cast<std::size_t>(o.samples), rng::mix(o.seed, 1));
  CsvOut out(o.out_path);
  out.echo(o, "alg=" + alg + " k=" + std::to_string(k));
  out.os() << "rank,node,spread_mean,spread_stderr\n";
  for (std::size_t i = 0; i < seeds.members.size(); ++i)
    out.os() << i + 1 << ',' << g.label(seeds.members[i]) << ',' << fmt(est.mean) << ','
             << fmt(est.std_error) << "\n";
  return 0;
}

int cmd_simulate(const CommonOpts& o, const std::string& seeds_csv,
                 const std::string& seeds2_csv, int d, double delta) {
  Graph g = load_graph(o);
  SeedSchedule sched = SeedSchedule::at_time_zero(parse_nodes(g, seeds_csv));
  if (!seeds2_csv.empty()) sched.entries.emplace_back(d, parse_nodes(g, seeds2_csv));
  auto n = static_cast<std::size_t>(o.samples);
  SpreadEstimate plain = estimate_spread(g, sched, n, o.seed);
  SpreadEstimate decay = estimate_decay_spread(g, sched, delta, n, o.seed);
  CsvOut out(o.out_path);
  out.echo(o, "delta=" + fmt(delta) + " d=" + std::to_string(d));
  out.os() << "samples,mean,std_error,decay_mean,decay_std_error\n";
  out.os() << plain.samples << ',' << fmt(plain.mean) << ',' << fmt(plain.std_error) << ','
           << fmt(decay.mean) << ',' << fmt(decay.std_error) << "\n";
  return 0;
}

int cmd_exact(const CommonOpts& o, bool want_sigma, bool want_g, const std::string& s1_csv,
              int k2, int d, const std::string& policy_name) {
  Graph g = load_graph(o);
  std::vector<int> s1 = parse_nodes(g, s1_csv);
  CsvOut out(o.out_path);
  out.echo(o, "s1=" + s1_csv + " k2=" + std::to_string(k2) + " d=" + std::to_string(d) +
                  " policy=" + policy_name);
  if (want_sigma) {
    out.os() << "metric,value\n";
    out.os() << "sigma," << fmt(oracle::exact_sigma(g, s1), 15) << "\n";
    return 0;
  }
  if (!want_g) throw std::runtime_error("exact: pass --sigma or --g");
  oracle::SecondPhasePolicy policy = oracle::SecondPhasePolicy::Optimal;
  if (policy_name == "greedy")
    policy = oracle::SecondPhasePolicy::Greedy;
  else if (policy_name == "gdd")
    policy = oracle::SecondPhasePolicy::GDD;
  else if (policy_name != "optimal")
    throw std::runtime_error("unknown policy: " + policy_name);
  oracle::TwoPhaseExact res = oracle::exact_two_phase(g, s1, k2, d, policy);
  out.os() << "metric,value\n";
  out.os() << "two_phase," << fmt(res.value, 15) << "\n";
  return 0;
}

int cmd_twophase(const CommonOpts& o, int k, int k1, int k2, int d, double delta,
                 const std::string& mode, const std::string& alg1, const std::string& alg2,
                 int reps, bool as_json, const std::string& optimize, int big_d) {
  Graph g = load_graph(o);
  SelectorConfig cfg;
  cfg.mc_samples = o.samples;
  cfg.master_seed = o.seed;

  if (optimize == "joint") {
    int D = big_d > 0 ? big_d : g.node_count();
    HConfig hcfg;
    hcfg.n_samples = static_cast<std::size_t>(o.samples);
    hcfg.master_seed = o.seed;
    hcfg.delta = delta;
    const Graph* gp = &g;
    JointObjective obj = [gp, k, hcfg](int jk1, int jd, const std::vector<int>& s1) {
      return estimate_second_phase(*gp, s1, k - jk1, jd, Phase2Alg::GDD, hcfg).mean;
    };
    CeParams params;
    params.master_seed = o.seed;
    JointResult res = ce_joint_optimize(g, k, D, obj, params);
    CsvOut out(o.out_path);
    out.echo(o, "optimize=joint k=" + std::to_string(k) + " D=" + std::to_string(D) +
                    " delta=" + fmt(delta));
    out.os() << "k1,d,s1,value\n";
    std::string s1_labels;
    for (int v : res.s1.members) s1_labels += (s1_labels.empty() ? "" : ";") + g.label(v);
    out.os() << res.k1 << ',' << res.d << ',' << s1_labels << ',' << fmt(res.value) << "\n";
    return 0;
  }

  TwoPhasePlan plan;
  plan.k = k;
  plan.k1 = k1;
  plan.k2 = k2 >= 0 ? k2 : k - k1;
  plan.d = d;
  plan.delta = delta;
  plan.mode = mode == "farsighted" ? PlanMode::Farsighted : PlanMode::Myopic;
  plan.phase1_alg = parse_phase1(alg1);
  plan.phase2_alg = parse_phase2(alg2);
  ReplicationResult r =
      replicate_two_phase(g, plan, cfg, static_cast<std::size_t>(reps), rng::mix(o.seed, 2));

  CsvOut out(o.out_path);
  std::string s1_labels;
  for (int v : r.s1.members) s1_labels += (s1_labels.empty() ? "" : ";") + g.label(v);
  if (as_json) {
    nlohmann::json j;
    j["config"] = {{"k", plan.k},          {"k1", plan.k1},   {"k2", plan.k2},
                   {"d", plan.d},          {"delta", delta},  {"mode", mode},
                   {"phase1_alg", alg1},   {"phase2_alg", alg2}, {"reps", reps},
                   {"seed", o.seed},       {"samples", o.samples}};
    j["s1"] = s1_labels;
    j["spread"] = {{"mean", r.spread.mean}, {"std_error", r.spread.std_error}};
    j["decay"] = {{"mean", r.decay.mean}, {"std_error", r.decay.std_error}};
    out.os() << j.dump(2) << "\n";
  } else {
    out.echo(o, "k=" + std::to_string(k) + " k1=" + std::to_string(plan.k1) +
                    " k2=" + std::to_string(plan.k2) + " d=" + std::to_string(d) +
                    " delta=" + fmt(delta) + " mode=" + mode + " alg1=" + alg1 +
                    " alg2=" + alg2 + " reps=" + std::to_string(reps));
    out.os() << "k1,k2,d,delta,s1,mean,std_error,decay_mean,decay_std_error\n";
    out.os() << plan.k1 << ',' << plan.k2 << ',' << d << ',' << fmt(delta) << ','
             << s1_labels << ',' << fmt(r.spread.mean) << ',' << fmt(r.spread.std_error)
             << ',' << fmt(r.decay.mean) << ',' << fmt(r.decay.std_error) << "\n";
  }
  return 0;
}

int cmd_sweep(const CommonOpts& o, int k, const std::string& deltas_csv, int d,
              const std::string& alg1, const std::string& alg2, int reps, bool timing) {
  Graph g = load_graph(o);
  SelectorConfig cfg;
  cfg.mc_samples = o.samples;
  cfg.master_seed = o.seed;
  std::vector<double> deltas;
  {
    std::stringstream ss(deltas_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) deltas.push_back(std::stod(tok));
  }
  int d_eff = d > 0 ? d : g.node_count();  // default: D, diffusion surely halted
  std::vector<int> grid;
  for (int k1 = 1; k1 <= k; ++k1) grid.push_back(k1);
  std::vector<SweepRow> rows =
      sweep_split(g, k, grid, deltas, d_eff, parse_phase1(alg1), parse_phase2(alg2),
                  PlanMode::Myopic, static_cast<std::size_t>(reps), cfg, rng::mix(o.seed, 3));
  CsvOut out(o.out_path);
  out.echo(o, "k=" + std::to_string(k) + " d=" + std::to_string(d_eff) + " alg1=" + alg1 +
                  " alg2=" + alg2 + " reps=" + std::to_string(reps));
  out.os() << "k1,k2,d,delta,mean_spread,std_error" << (timing ? ",wall_time\n" : "\n");
  for (const SweepRow& r : rows) {
    out.os() << r.k1 << ',' << r.k2 << ',' << r.d << ',' << fmt(r.delta) << ','
             << fmt(r.mean) << ',' << fmt(r.std_error);
    if (timing) out.os() << ',' << fmt(r.wall_time_s, 4);
    out.os() << "\n";
  }
  return 0;
}

int cmd_progression(const CommonOpts& o, int k, const std::string& pairs_csv,
                    const std::string& alg1, const std::string& alg2, int reps) {
  Graph g = load_graph(o);
  SelectorConfig cfg;
  cfg.mc_samples = o.samples;
  cfg.master_seed = o.seed;
  std::vector<std::pair<int, int>> pairs;
  {
    std::stringstream ss(pairs_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto pos = tok.find(':');
      if (pos == std::string::npos)
        throw std::runtime_error("bad --pairs entry (want k1:d): " + tok);
      pairs.emplace_back(std::stoi(tok.substr(0, pos)), std::stoi(tok.substr(pos + 1)));
    }
  }
  auto curves = progression(g, k, pairs, parse_phase1(alg1), parse_phase2(alg2),
                            PlanMode::Myopic, static_cast<std::size_t>(reps), cfg,
                            rng::mix(o.seed, 4));
  CsvOut out(o.out_path);
  out.echo(o, "k=" + std::to_string(k) + " pairs=" + pairs_csv + " reps=" +
                  std::to_string(reps));
  out.os() << "k1,d,t,mean_cumulative\n";
  for (const auto& c : curves)
    for (std::size_t t = 0; t < c.mean_cumulative.size(); ++t)
      out.os() << c.k1 << ',' << c.d << ',' << t << ',' << fmt(c.mean_cumulative[t]) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-phase influence maximization under the independent cascade model"};
  app.require_subcommand(1);

  CommonOpts o;

  auto* sel = app.add_subcommand("select", "single-phase seed selection");
  std::string alg = "greedy";
  int k = 1;
  add_common(sel, o);
  sel->add_option("--alg", alg, "greedy|gdd|wdeg|ce");
  sel->add_option("-k,--k", k, "seed budget");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo spread estimation");
  std::string seeds_csv, seeds2_csv;
  int d = 1;
  double delta = 1.0;
  add_common(sim, o);
  sim->add_option("--seeds", seeds_csv, "comma-separated seed labels")->required();
  sim->add_option("--seeds2", seeds2_csv, "second-phase seed labels, injected at -d");
  sim->add_option("-d,--d", d, "second-phase delay");
  sim->add_option("--delta", delta, "decay factor in [0,1]");

  auto* exa = app.add_subcommand("exact", "exact oracle values on small graphs");
  bool want_sigma = false, want_g = false;
  std::string s1_csv, policy = "optimal";
  int k2 = 0;
  add_common(exa, o);
  exa->add_flag("--sigma", want_sigma, "exact single-phase spread of --s1");
  exa->add_flag("--g", want_g, "exact two-phase objective of --s1");
  exa->add_option("--s1", s1_csv, "first-phase seed labels")->required();
  exa->add_option("--k2", k2, "second-phase budget");
  exa->add_option("-d,--d", d, "delay");
  exa->add_option("--policy", policy, "optimal|greedy|gdd");

  auto* two = app.add_subcommand("twophase", "two-phase runs and joint optimization");
  int k1 = 1;
  int tp_k2 = -1;
  std::string mode = "myopic", alg1 = "greedy", alg2 = "gdd", optimize;
  int reps = 1000, big_d = 0;
  bool as_json = false;
  add_common(two, o);
  two->add_option("-k,--k", k, "total budget");
  two->add_option("--k1", k1, "first-phase budget");
  two->add_option("--k2", tp_k2, "second-phase budget (default k-k1)");
  two->add_option("-d,--d", d, "delay between phases");
  two->add_option("--delta", delta, "decay factor");
  two->add_option("--mode", mode, "farsighted|myopic");
  two->add_option("--phase1-alg", alg1, "greedy|gdd|wdeg|ce");
  two->add_option("--phase2-alg", alg2, "greedy|gdd|wdeg");
  two->add_option("--reps", reps, "replications");
  two->add_option("--optimize", optimize, "joint: cross-entropy over (k1,d,S1)");
  two->add_option("--D", big_d, "max delay for joint optimization (default node count)");
  two->add_flag("--json", as_json, "emit JSON instead of CSV");

  auto* swp = app.add_subcommand("sweep", "budget-split sweep over k1 (and deltas)");
  std::string deltas_csv = "1";
  bool timing = false;
  int swp_d = 0;
  add_common(swp, o);
  swp->add_option("-k,--k", k, "total budget");
  swp->add_option("--deltas", deltas_csv, "comma-separated decay factors");
  swp->add_option("-d,--d", swp_d, "delay (default: node count)");
  swp->add_option("--phase1-alg", alg1, "greedy|gdd|wdeg|ce");
  swp->add_option("--phase2-alg", alg2, "greedy|gdd|wdeg");
  swp->add_option("--reps", reps, "replications per cell");
  swp->add_flag("--timing", timing, "append a wall_time column (non-reproducible)");

  auto* prg = app.add_subcommand("progression", "diffusion progression curves");
  std::string pairs_csv;
  add_common(prg, o);
  prg->add_option("-k,--k", k, "total budget");
  prg->add_option("--pairs", pairs_csv, "comma-separated k1:d pairs")->required();
  prg->add_option("--phase1-alg", alg1, "greedy|gdd|wdeg|ce");
  prg->add_option("--phase2-alg", alg2, "greedy|gdd|wdeg");
  prg->add_option("--reps", reps, "replications per pair");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sel->parsed()) return cmd_select(o, alg, k);
    if (sim->parsed()) return cmd_simulate(o, seeds_csv, seeds2_csv, d, delta);
    if (exa->parsed()) return cmd_exact(o, want_sigma, want_g, s1_csv, k2, d, policy);
    if (two->parsed())
      return cmd_twophase(o, k, k1, tp_k2, d, delta, mode, alg1, alg2, reps, as_json,
                          optimize, big_d);
    if (swp->parsed()) return cmd_sweep(o, k, deltas_csv, swp_d, alg1, alg2, reps, timing);
    if (prg->parsed()) return cmd_progression(o, k, pairs_csv, alg1, alg2, reps);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
