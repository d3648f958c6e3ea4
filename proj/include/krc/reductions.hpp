#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "krc/graph.hpp"

namespace krc {

/// Bipartite graph with left side U = {0..m-1} and right side V = {0..n-1}.
struct Bipartite {
  int left_count = 0;
  int right_count = 0;
  std::vector<std::pair<int, int>> edges;  // (left, right)

  /// Throws InvalidVertex on out-of-range ids, InvalidArgument on duplicates.
  void validate() const;
  std::vector<std::vector<int>> left_adjacency() const;
  friend bool operator==(const Bipartite&, const Bipartite&) = default;
};

/// Gamma(S) for a set of left vertices, sorted.
std::vector<int> neighborhood(const Bipartite& bip, const std::vector<int>& left_set);

struct Hypergraph {
  int vertex_count = 0;
  int uniformity = 0;  // every hyperedge has exactly this many vertices
  std::vector<VertexSet> hyperedges;

  void validate() const;
};

/// Links a derived instance back to its source.
struct ReductionMap {
  std::vector<Vertex> vertex_forward;           // source vertex -> image vertex, -1 if none
  std::vector<EdgeSet> edge_forward;            // source edge -> image edges
  std::vector<EdgeId> edge_inverse;             // image edge -> source edge, -1 if none
  EdgeSet always_include;                       // source edges dropped from the image

  /// Source edges hit by an image solution, plus always_include. A source
  /// edge is taken when any of its image copies is removed.
  EdgeSet pull_back(const EdgeSet& image_edges) const;
  /// Every image copy of the given source edges.
  EdgeSet push_forward(const EdgeSet& source_edges) const;
};

struct Reduction {
  Instance instance;
  ReductionMap map;
};

/// Vertex u becomes an uncuttable clique on its edge ends; edge e keeps id
/// e in the image. Representatives use each terminal's lowest edge id.
Reduction ec_to_vc(const Instance& inst);

/// Integer-weight uniformization for a guessed OPT: edges with
/// w * n^3 < guess are dropped (always_include), finite weights are clipped
/// to n * guess, and each surviving edge becomes w * n^3 unit copies.
/// Uncuttable edges stay single uncuttable edges.
Reduction vc_weighted_to_uniform(const Instance& inst, Weight opt_guess);

struct SsveImage {
  Instance instance;
  int block = 0;  // N = 2mn + 1, the size of every right-vertex clique
  Vertex s = 0;
  Vertex t = 1;
  std::vector<EdgeSet> t_edge_groups;  // per right vertex, its N edges to t

  Vertex left_vertex(int u) const { return 2 + u; }
  Vertex clique_vertex(int left_count, int v, int j) const {
    return 2 + left_count + v * block + j;
  }
};

/// Single-pair vertex-connectivity instance whose optimum encodes the
/// smallest neighborhood of a left set of size >= alpha * m.
SsveImage ssve_to_st_vc_krc(const Bipartite& bip, const Rational& alpha);

/// Rewrites a feasible image solution so that each t-edge group is removed
/// entirely or not at all, without losing feasibility.
EdgeSet canonicalize_ssve_solution(const Bipartite& bip, const SsveImage& image,
                                   const EdgeSet& solution);

inline constexpr std::int64_t kTensorSizeLimit = std::int64_t{1} << 22;

/// Left vertex (u1, u2) has index u1 * m + u2; right likewise with n.
Bipartite tensor_square(const Bipartite& bip);

struct DksImage {
  Bipartite bipartite;  // left = hyperedges, right = hypergraph vertices
  int kappa = 0;

  /// alpha(m') = m' / |U'|.
  Rational alpha_for(int m_prime) const;
};

DksImage dks_incidence_to_ssve(const Hypergraph& h, int kappa);

/// Uniform kappa-subset of `pool` (partial Fisher-Yates), sorted.
std::vector<int> sample_kappa_subset(const std::vector<int>& pool, int kappa, std::uint64_t seed);

inline constexpr int kExpansionLeftCap = 20;

/// Every left set of size >= alpha * m has more than beta * n neighbors.
bool is_expanding(const Bipartite& bip, const Rational& alpha, const Rational& beta);

}  // namespace krc
