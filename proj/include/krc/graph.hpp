#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "krc/types.hpp"

namespace krc {

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Weight w = 0;

  Vertex other(Vertex x) const noexcept { return x == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected multigraph. Edge ids are list positions and never change.
/// Weights are deletion costs; path counting treats each edge as one unit.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count);

  EdgeId add_edge(Vertex u, Vertex v, Weight w);

  int vertex_count() const noexcept { return vertex_count_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId id) const { return edges_.at(static_cast<std::size_t>(id)); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  bool valid_vertex(Vertex v) const noexcept { return v >= 0 && v < vertex_count_; }

  /// Sum of all finite weights, saturating.
  Weight total_finite_weight() const noexcept;
  Weight weight_of(std::span<const EdgeId> ids) const;
  bool uniform_weights() const noexcept;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
};

struct DemandPair {
  Vertex s = 0;
  Vertex t = 0;
  friend bool operator==(const DemandPair&, const DemandPair&) = default;
};

class DemandSet {
 public:
  DemandSet() = default;
  DemandSet(std::initializer_list<DemandPair> pairs);

  void add(Vertex s, Vertex t);
  int size() const noexcept { return static_cast<int>(pairs_.size()); }
  bool empty() const noexcept { return pairs_.empty(); }
  const DemandPair& operator[](int i) const { return pairs_.at(static_cast<std::size_t>(i)); }
  std::span<const DemandPair> pairs() const noexcept { return pairs_; }

  /// D_v for every vertex of an n-vertex graph.
  std::vector<int> terminal_counts(int vertex_count) const;
  /// d = max_v D_v.
  int max_terminal_count(int vertex_count) const;
  DemandSet subset(std::span<const int> indices) const;

  friend bool operator==(const DemandSet&, const DemandSet&) = default;

 private:
  std::vector<DemandPair> pairs_;
};

enum class Flavor { EdgeConnectivity, VertexConnectivity };

struct Instance {
  Graph graph;
  DemandSet demands;
  int k = 1;
  Flavor flavor = Flavor::EdgeConnectivity;

  /// Throws InvalidVertex / InvalidArgument when the type invariants fail.
  void validate() const;
  friend bool operator==(const Instance&, const Instance&) = default;
};

struct CutSolution {
  EdgeSet removed_edges;  // sorted, unique
  Weight total_weight = 0;
  int achieved_k = 1;

  /// Normalizes ids and computes the weight. Rejects INF edges.
  static CutSolution make(const Graph& g, EdgeSet edges, int achieved_k);
};

struct DemandStats {
  int inside = 0;
  int outside = 0;
  int crossing = 0;
  std::vector<int> crossing_pairs;
};

/// A graph derived from another one, with ids mapped back to the parent.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> vertex_origin;  // new vertex -> parent vertex
  std::vector<EdgeId> edge_origin;    // new edge -> parent edge
};

struct SubInstance {
  Instance instance;
  std::vector<Vertex> vertex_origin;
  std::vector<EdgeId> edge_origin;
  std::vector<int> demand_origin;
};

/// Membership vector for a vertex set on an n-vertex graph.
std::vector<bool> membership(int vertex_count, std::span<const Vertex> set);
VertexSet complement(int vertex_count, std::span<const Vertex> set);

/// Same vertex set, minus the edges flagged in `removed` (indexed by edge id).
Subgraph remove_edges(const Graph& g, const std::vector<bool>& removed);
Subgraph remove_edges(const Graph& g, std::span<const EdgeId> removed);

/// Edges with exactly one endpoint on `side`.
EdgeSet cut_edges(const Graph& g, const std::vector<bool>& side);
/// Edges between disjoint sets a and b.
EdgeSet edges_between(const Graph& g, const std::vector<bool>& a,
                      const std::vector<bool>& b);

}  // namespace krc
