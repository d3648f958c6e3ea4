#pragma once

#include <limits>
#include <span>

#include "krc/graph.hpp"

namespace krc {

/// Maximum number of pairwise edge-disjoint s-t paths (unit capacity per
/// edge, weights ignored). Counting stops once `limit` is reached.
int num_edge_disjoint_paths(const Graph& g, Vertex s, Vertex t,
                            int limit = std::numeric_limits<int>::max());

/// Maximum number of internally vertex-disjoint s-t paths by node
/// splitting. Every direct s-t edge contributes its own path.
int num_vertex_disjoint_paths(const Graph& g, Vertex s, Vertex t,
                              int limit = std::numeric_limits<int>::max());

/// Path count for the given connectivity flavor.
int num_disjoint_paths(const Graph& g, Flavor flavor, Vertex s, Vertex t,
                       int limit = std::numeric_limits<int>::max());

struct EdgeCut {
  Weight value = 0;  // kInf when no finite cut exists
  VertexSet side;    // s-side of one minimum cut
};

EdgeCut min_weight_edge_st_cut(const Graph& g, Vertex s, Vertex t);

struct VertexCut {
  VertexSet separator;
  Weight value = 0;
};

/// Minimum-weight separator in V \ {s, t}. Weights of s and t are ignored.
/// Throws NoSeparator when s and t are adjacent.
VertexCut min_weight_vertex_st_cut(const Graph& g,
                                   std::span<const Weight> vertex_weights,
                                   Vertex s, Vertex t);

/// True iff every demand pair has fewer than `relaxed_k` flavor-appropriate
/// disjoint paths once the solution's edges are removed.
bool is_feasible(const Instance& inst, const CutSolution& sol, int relaxed_k);
bool is_feasible(const Instance& inst, std::span<const EdgeId> removed,
                 int relaxed_k);

DemandStats demand_stats(const DemandSet& demands, int vertex_count,
                         std::span<const Vertex> side);
DemandStats demand_stats(const DemandSet& demands, const std::vector<bool>& side);

/// Vertex-induced sub-instance with id maps back to the parent instance.
SubInstance induced_subinstance(const Instance& inst, std::span<const Vertex> side);

/// Connected component label per vertex, labels dense from 0 in vertex order.
std::vector<int> component_labels(const Graph& g, int* component_count = nullptr);

}  // namespace krc
