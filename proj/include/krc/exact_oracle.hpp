#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "krc/cut_oracles.hpp"
#include "krc/graph.hpp"
#include "krc/solvers.hpp"

namespace krc {

inline constexpr int kBruteForceEdgeCap = 22;
inline constexpr int kBruteSparsestVertexCap = 14;

/// Minimum-weight k-route cut by branch and bound over finite edges.
/// With a cost cap, only solutions of weight <= cap are searched for.
CutSolution brute_force_opt(const Instance& inst,
                            std::optional<Weight> cost_cap = std::nullopt);

/// Same optimum when the finite edges split into interchangeable groups:
/// inside a group only the number of kept edges matters, and only up to k.
/// Every finite edge must appear in exactly one group.
CutSolution brute_force_opt_symmetric(const Instance& inst,
                                      const std::vector<EdgeSet>& groups);

enum class SparsityKind { EdgeUniform, EdgeNonUniform, VertexUniform, VertexNonUniform };

/// Literal minimization over every (S, F) or (S, Delta).
SparseCut brute_force_sparsest(const Graph& g, const DemandSet& demands, int k,
                               SparsityKind kind);

enum class Algorithm { UniformEc, Ec, EcPoly, Vc, TwoRoute, St };

std::string_view algorithm_name(Algorithm alg) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Rational lower bound on ln(x) for x >= 1, within 2^-39.
Rational ln_lower_bound(std::int64_t x);

/// Cost bound relative to OPT for the algorithm at oracle factor 1, or
/// nothing when no bound is claimed.
std::optional<Rational> ratio_bound(Algorithm alg, const Instance& inst,
                                      const SolverParams& params);

struct RatioReport {
  std::string instance_id;
  std::string algorithm;
  Weight solution_weight = 0;
  Weight opt_weight = 0;
  Rational ratio{1};
  std::optional<Rational> bound;
  bool within_bound = true;
};

/// Compares a solver result with OPT at the instance's own k.
RatioReport ratio_report(const Instance& inst, std::string_view instance_id, Algorithm alg,
                         const SolverParams& params, const SolveResult& result,
                         std::optional<Weight> known_opt = std::nullopt);

}  // namespace krc
