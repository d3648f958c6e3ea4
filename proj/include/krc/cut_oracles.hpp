#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "krc/graph.hpp"

namespace krc {

/// Exact enumerates vertex subsets (factor 1). Sweep orders vertices by a
/// neighbor-averaging embedding and scans prefix cuts; it also switches the
/// multicut backend to the greedy isolating-cut heuristic. No factor is
/// claimed for Sweep.
enum class OracleMode { Exact, Sweep };

enum class CutKind { Uniform, NonUniform };

struct OracleConfig {
  OracleMode mode = OracleMode::Exact;
  int exact_vertex_cap = 20;
  std::uint64_t seed = 1;
  int sweep_restarts = 6;
  int sweep_iterations = 40;
  /// Hard ceiling on the number of free sets / separators an oracle may
  /// consider for a single graph.
  std::int64_t enumeration_budget = 1'000'000;
  /// Factor plugged into size bounds when the backend reports none.
  Rational assumed_factor{1};

  /// 1 for Exact; empty (unknown) for Sweep.
  std::optional<Rational> reported_factor() const;
  /// reported_factor() if known, otherwise assumed_factor.
  Rational effective_factor() const;
};

/// A cut (S, V \ S) with free edges F, or a vertex cut (S, Delta, T).
struct SparseCut {
  VertexSet side;
  EdgeSet free_edges;
  VertexSet separator;
  CutKind kind = CutKind::NonUniform;
  Weight residual_weight = 0;  // kInf if an uncuttable edge is charged
  std::int64_t denominator = 1;
  Rational sparsity;
};

struct GomoryHuTree {
  struct TreeEdge {
    Vertex u = 0;
    Vertex v = 0;
    Weight capacity = 0;
    /// Position in the order of perturbed capacities (ties by index). Lower
    /// rank means a cheaper cut; ranks are distinct.
    int rank = 0;
  };

  int vertex_count = 0;
  std::vector<TreeEdge> edges;

  /// Index of the tree edge of lowest rank on the u-v path.
  int min_path_edge(Vertex u, Vertex v) const;
  Weight min_cut_value(Vertex u, Vertex v) const;
  /// Vertices on the `containing` side of tree edge `edge_index`.
  VertexSet side(int edge_index, Vertex containing) const;
};

struct LaminarMinCutFamily {
  std::vector<VertexSet> sets;  // aligned with demand pair indices
};

/// Contraction-based Gomory-Hu cut tree. Capacities are perturbed by edge
/// id so each pair has a unique minimum cut whenever the perturbation fits
/// in 124 bits.
GomoryHuTree gomory_hu(const Graph& g);

LaminarMinCutFamily laminar_min_cut_family(const Graph& g, const DemandSet& demands);

/// Scores the cut (side, complement) with the k-1 most expensive crossing
/// edges free. Returns a cut with denominator 0 when no demand qualifies.
SparseCut evaluate_edge_cut(const Graph& g, const DemandSet& demands,
                            std::span<const Vertex> side, int k, CutKind kind);

/// Scores the vertex cut (side, separator, rest).
SparseCut evaluate_vertex_cut(const Graph& g, const DemandSet& demands,
                              std::span<const Vertex> side,
                              std::span<const Vertex> separator, CutKind kind);

SparseCut sparsest_cut(const Graph& g, const DemandSet& demands, CutKind kind,
                       const OracleConfig& cfg);

SparseCut k_route_sparsest_cut(const Graph& g, const DemandSet& demands, int k,
                               CutKind kind, const OracleConfig& cfg);

/// min(w, cap / (k - 1)) for k >= 2. The bicriteria oracle works with this
/// value scaled by k - 1 so it stays integral.
Rational clip_weight(Weight w, Weight cap, int k);

/// Grid search over (r', W'): clip, ell-multicut, component flipping, then
/// free the 2*ceil(constant*factor)*(k-1) heaviest cut edges. The realized
/// route parameter is free_edges.size() + 1.
SparseCut k_route_sparsest_cut_bicriteria(const Graph& g, const DemandSet& demands,
                                          int k, const OracleConfig& cfg,
                                          const Rational& constant = Rational(1));

/// Edge set separating at least `ell` demand pairs.
EdgeSet l_multicut(const Graph& g, const DemandSet& demands, int ell,
                   const OracleConfig& cfg);

SparseCut vertex_k_route_sparsest_cut(const Graph& g, const DemandSet& demands, int k,
                                      CutKind kind, const OracleConfig& cfg);

/// Number of demand pairs whose endpoints lie in different components.
int separated_pair_count(const Graph& g, const DemandSet& demands);

}  // namespace krc
