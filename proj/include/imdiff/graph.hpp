#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace imdiff {

struct Edge {
  int src;
  int dst;
  double prob;
};

// Immutable directed graph with per-edge influence probabilities.
// Node ids are dense integers in [0, node_count).
class Graph {
 public:
  Graph() = default;

  // Validates probs in [0,1], no self-loops, no duplicate (src,dst) pairs.
  // labels may be empty (programmatic graphs); then label(v) is the decimal id.
  static Graph from_edges(int node_count, std::vector<Edge> edges,
                          std::vector<std::string> labels = {});

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  // edge indices, sorted by the neighbor's id
  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }
  int out_degree(int v) const { return static_cast<int>(out_[v].size()); }
  int in_degree(int v) const { return static_cast<int>(in_[v].size()); }

  std::string label(int v) const;
  // -1 if no such label; falls back to parsing a decimal id when the graph
  // carries no label table.
  int node_by_label(const std::string& s) const;
  bool has_labels() const { return !labels_.empty(); }

 private:
  int node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> label_to_id_;
};

struct WeightModel {
  enum class Kind { GivenWeights, WeightedCascade, Trivalency, Uniform };
  Kind kind = Kind::GivenWeights;
  std::uint64_t seed = 0;  // Trivalency
  double p = 0.0;          // Uniform

  static WeightModel given() { return {}; }
  static WeightModel weighted_cascade() { return {Kind::WeightedCascade, 0, 0.0}; }
  static WeightModel trivalency(std::uint64_t seed) { return {Kind::Trivalency, seed, 0.0}; }
  static WeightModel uniform(double p);
};

// Edge-list ingestion: lines `u v [p]`, `#` comments, optional non-numeric
// header line skipped. Labels map to dense ids in first-appearance order.
// Undirected input expands each line to both directions before weighting.
Graph load_edge_list(std::istream& in, bool undirected, const WeightModel& model);
Graph load_edge_list_file(const std::string& path, bool undirected, const WeightModel& model);

// One edge per line `u v p`; reloading with GivenWeights reproduces the graph.
void write_edge_list(const Graph& g, std::ostream& out);

// p_uv = 1 / in_degree(v); returns a new graph, input untouched.
Graph assign_weighted_cascade(const Graph& g);
// every edge prob drawn uniformly from {0.1, 0.01, 0.001}; deterministic in seed
Graph assign_trivalency(const Graph& g, std::uint64_t seed);
Graph assign_uniform(const Graph& g, double p);

// Induced subgraph on V \ removed plus, per surviving node, the probabilities
// of edges from `frontier` (a subset of removed) into it. Frontier members act
// as external seeds when the removed set is a past diffusion.
struct ResidualGraph {
  Graph graph;
  std::vector<int> to_residual;               // original id -> residual id or -1
  std::vector<int> to_original;               // residual id -> original id
  std::vector<std::vector<double>> boundary;  // per residual node
};
ResidualGraph residual_graph(const Graph& g, const std::vector<int>& removed,
                             const std::vector<int>& frontier);

}  // namespace imdiff
