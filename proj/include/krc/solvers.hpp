#pragma once

#include <optional>
#include <vector>

#include "krc/cut_oracles.hpp"
#include "krc/graph.hpp"

namespace krc {

struct SolverParams {
  OracleConfig oracle;
  Rational delta{0};             // connectivity slack of the uniform solver
  Rational c{1};                 // weight/connectivity trade-off of solve_st
  Rational big_c{1};             // constant of the bicriteria oracle's k' bound
  Rational opt_grid_epsilon{1, 100};
};

/// One cut step of an iterative or recursive solver. Ids refer to the
/// original instance.
struct TraceRecord {
  VertexSet side;
  VertexSet separator;
  EdgeSet free_edges;
  Rational sparsity;
  EdgeSet removed;
  std::vector<int> dropped;  // demand pair indices
  std::optional<Weight> opt_guess;
};

struct SolveResult {
  CutSolution solution;
  int guarantee = 1;  // every pair has fewer than this many disjoint paths
  std::vector<TraceRecord> trace;
  std::optional<int> witness_size;  // separator size found by solve_st
};

SolveResult solve_uniform_ec(const Instance& inst, const SolverParams& params);
SolveResult solve_ec(const Instance& inst, const SolverParams& params);
SolveResult solve_ec_polytime(const Instance& inst, const SolverParams& params);
SolveResult solve_vc(const Instance& inst, const SolverParams& params);
SolveResult solve_two_route(const Instance& inst, const SolverParams& params);
SolveResult solve_st(const Instance& inst, const SolverParams& params);

/// Demand indices whose flavor connectivity in g is at least `threshold`.
std::vector<int> pairs_at_least(const Graph& g, const DemandSet& demands, Flavor flavor,
                                int threshold);

/// OPT guesses: integers up to 1/eps, then multiplicative steps of at most
/// (1 + eps), capped at `limit`, merged with the given extra values.
std::vector<Weight> opt_guess_grid(Weight limit, const Rational& eps,
                                   const std::vector<Weight>& extra);

}  // namespace krc
