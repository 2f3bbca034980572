#include "imdiff/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "imdiff/rng.hpp"

namespace imdiff {

Graph Graph::from_edges(int node_count, std::vector<Edge> edges,
                        std::vector<std::string> labels) {
  if (node_count < 0) throw std::invalid_argument("negative node count");
  if (!labels.empty() && static_cast<int>(labels.size()) != node_count)
    throw std::invalid_argument("label count does not match node count");

  Graph g;
  g.node_count_ = node_count;
  g.labels_ = std::move(labels);
  for (int v = 0; v < static_cast<int>(g.labels_.size()); ++v)
    g.label_to_id_.emplace(g.labels_[v], v);

  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
  });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.src < 0 || e.src >= node_count || e.dst < 0 || e.dst >= node_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.src == e.dst) throw std::invalid_argument("self-loop rejected");
    if (!(e.prob >= 0.0 && e.prob <= 1.0))
      throw std::invalid_argument("edge probability outside [0,1]");
    if (i > 0 && edges[i - 1].src == e.src && edges[i - 1].dst == e.dst)
      throw std::invalid_argument("duplicate edge");
  }
  g.edges_ = std::move(edges);
  g.out_.resize(node_count);
  g.in_.resize(node_count);
  for (int e = 0; e < static_cast<int>(g.edges_.size()); ++e) {
    g.out_[g.edges_[e].src].push_back(e);
    g.in_[g.edges_[e].dst].push_back(e);
  }
  for (auto& lst : g.in_)
    std::sort(lst.begin(), lst.end(),
              [&](int a, int b) { return g.edges_[a].src < g.edges_[b].src; });
  return g;
}

std::string Graph::label(int v) const {
  if (v < 0 || v >= node_count_) throw std::out_of_range("node id out of range");
  if (!labels_.empty()) return labels_[v];
  return std::to_string(v);
}

int Graph::node_by_label(const std::string& s) const {
  if (!labels_.empty()) {
    auto it = label_to_id_.find(s);
    return it == label_to_id_.end() ? -1 : it->second;
  }
  int v = -1;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return -1;
  return (v >= 0 && v < node_count_) ? v : -1;
}

WeightModel WeightModel::uniform(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("uniform p outside [0,1]");
  return {Kind::Uniform, 0, p};
}

namespace {

bool parse_prob(const std::string& tok, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(tok, &pos);
    return pos == tok.size();
  } catch (...) {
    return false;
  }
}

}  // namespace

Graph load_edge_list(std::istream& in, bool undirected, const WeightModel& model) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, int> ids;
  auto intern = [&](const std::string& tok) {
    auto it = ids.find(tok);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(labels.size());
    labels.push_back(tok);
    ids.emplace(tok, id);
    return id;
  };

  std::vector<Edge> edges;
  std::string line;
  int lineno = 0;
  bool seen_edge = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks.size() != 2 && toks.size() != 3)
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected `u v [p]`");
    double p = 1.0;
    if (toks.size() == 3) {
      if (!parse_prob(toks[2], p)) {
        // tolerate one non-numeric header line before any edge
        if (!seen_edge) continue;
        throw std::runtime_error("line " + std::to_string(lineno) + ": non-numeric probability");
      }
      if (!(p >= 0.0 && p <= 1.0))
        throw std::runtime_error("line " + std::to_string(lineno) + ": probability outside [0,1]");
    } else if (model.kind == WeightModel::Kind::GivenWeights) {
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": missing probability under given-weights model");
    }
    seen_edge = true;
    int u = intern(toks[0]);
    int v = intern(toks[1]);
    if (u == v)
      throw std::runtime_error("line " + std::to_string(lineno) + ": self-loop rejected");
    edges.push_back({u, v, p});
    if (undirected) edges.push_back({v, u, p});
  }

  const int n = static_cast<int>(labels.size());
  Graph g = Graph::from_edges(n, std::move(edges), std::move(labels));
  switch (model.kind) {
    case WeightModel::Kind::GivenWeights: return g;
    case WeightModel::Kind::WeightedCascade: return assign_weighted_cascade(g);
    case WeightModel::Kind::Trivalency: return assign_trivalency(g, model.seed);
    case WeightModel::Kind::Uniform: return assign_uniform(g, model.p);
  }
  return g;
}

Graph load_edge_list_file(const std::string& path, bool undirected,
                          const WeightModel& model) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return load_edge_list(in, undirected, model);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  std::ostringstream buf;
  buf.precision(17);
  for (const Edge& e : g.edges())
    buf << g.label(e.src) << ' ' << g.label(e.dst) << ' ' << e.prob << '\n';
  out << buf.str();
}

namespace {

Graph reweighted(const Graph& g, const std::vector<double>& probs) {
  std::vector<Edge> edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) edges[e].prob = probs[e];
  std::vector<std::string> labels;
  if (g.has_labels())
    for (int v = 0; v < g.node_count(); ++v) labels.push_back(g.label(v));
  return Graph::from_edges(g.node_count(), std::move(edges), std::move(labels));
}

}  // namespace

Graph assign_weighted_cascade(const Graph& g) {
  std::vector<double> probs(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e)
    probs[e] = 1.0 / static_cast<double>(g.in_degree(g.edge(e).dst));
  return reweighted(g, probs);
}

Graph assign_trivalency(const Graph& g, std::uint64_t seed) {
  static const double kLevels[3] = {0.1, 0.01, 0.001};
  std::mt19937_64 gen(rng::splitmix64(seed));
  std::uniform_int_distribution<int> pick(0, 2);
  std::vector<double> probs(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) probs[e] = kLevels[pick(gen)];
  return reweighted(g, probs);
}

Graph assign_uniform(const Graph& g, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("uniform p outside [0,1]");
  return reweighted(g, std::vector<double>(g.edge_count(), p));
}

ResidualGraph residual_graph(const Graph& g, const std::vector<int>& removed,
                             const std::vector<int>& frontier) {
  std::vector<char> is_removed(g.node_count(), 0);
  for (int v : removed) {
    if (v < 0 || v >= g.node_count()) throw std::invalid_argument("unknown node in removed set");
    is_removed[v] = 1;
  }
  std::vector<char> is_frontier(g.node_count(), 0);
  for (int v : frontier) {
    if (v < 0 || v >= g.node_count() || !is_removed[v])
      throw std::invalid_argument("frontier must be a subset of the removed set");
    is_frontier[v] = 1;
  }

  ResidualGraph r;
  r.to_residual.assign(g.node_count(), -1);
  for (int v = 0; v < g.node_count(); ++v) {
    if (is_removed[v]) continue;
    r.to_residual[v] = static_cast<int>(r.to_original.size());
    r.to_original.push_back(v);
  }
  std::vector<Edge> edges;
  r.boundary.resize(r.to_original.size());
  for (const Edge& e : g.edges()) {
    if (is_removed[e.dst]) continue;
    int w = r.to_residual[e.dst];
    if (is_removed[e.src]) {
      if (is_frontier[e.src]) r.boundary[w].push_back(e.prob);
    } else {
      edges.push_back({r.to_residual[e.src], w, e.prob});
    }
  }
  std::vector<std::string> labels;
  if (g.has_labels())
    for (int v : r.to_original) labels.push_back(g.label(v));
  r.graph = Graph::from_edges(static_cast<int>(r.to_original.size()), std::move(edges),
                              std::move(labels));
  return r;
}

}  // namespace imdiff
