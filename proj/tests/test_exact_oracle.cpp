#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <tuple>

#include "krc/exact_oracle.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace krc;

namespace {

constexpr Flavor VC = Flavor::VertexConnectivity;

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const KrcError& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

// Finite edges with the same ends and weight.
std::vector<EdgeSet> parallel_groups(const Graph& g) {
  std::map<std::tuple<Vertex, Vertex, Weight>, EdgeSet> by_key;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (is_inf(e.w)) continue;
    by_key[{std::min(e.u, e.v), std::max(e.u, e.v), e.w}].push_back(id);
  }
  std::vector<EdgeSet> out;
  for (auto& [key, ids] : by_key) out.push_back(ids);
  return out;
}

}  // namespace

TEST_CASE("brute-force optimum examples") {
  CHECK(brute_force_opt(build::instance(build::complete(3), DemandSet{{0, 1}}, 2)).total_weight == 1);
  CHECK(brute_force_opt(build::instance(build::complete(4), DemandSet{{0, 1}}, 1)).total_weight == 3);
  CHECK(brute_force_opt(build::instance(build::complete(4), DemandSet{{0, 1}}, 1, VC)).total_weight == 3);

  Instance stuck = build::instance(build::graph(2, {{0, 1, kInf}}), DemandSet{{0, 1}}, 1);
  CHECK(code_of([&] { brute_force_opt(stuck); }) == ErrorCode::Infeasible);

  Instance tri = build::instance(build::graph(3, {{0, 1, 4}, {1, 2, 4}, {0, 2, 4}}), DemandSet{{0, 1}}, 1);
  CHECK(brute_force_opt(tri, 8).total_weight == 8);
  CHECK(code_of([&] { brute_force_opt(tri, 7); }) == ErrorCode::Infeasible);

  Graph big(2);
  for (int i = 0; i < kBruteForceEdgeCap + 1; ++i) big.add_edge(0, 1, 1);
  CHECK(code_of([&] { brute_force_opt(build::instance(big, DemandSet{{0, 1}}, 1)); }) ==
        ErrorCode::CapExceeded);
}

TEST_CASE("brute-force optimum matches exhaustive enumeration") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 150; ++trial) {
    ref::GenParams gp;
    gp.n = 2 + static_cast<int>(rng() % 6);
    gp.m = 1 + static_cast<int>(rng() % 10);
    gp.r = 1 + static_cast<int>(rng() % 3);
    gp.k = 1 + static_cast<int>(rng() % 3);
    gp.flavor = trial % 2 ? VC : Flavor::EdgeConnectivity;
    gp.inf_probability = 0.15;
    Instance inst = ref::random_instance(rng, gp);
    CAPTURE(trial);
    auto expected = ref::opt(inst);
    if (!expected) {
      CHECK(code_of([&] { brute_force_opt(inst); }) == ErrorCode::Infeasible);
      continue;
    }
    CutSolution got = brute_force_opt(inst);
    CHECK(got.total_weight == *expected);
    CHECK(ref::feasible(inst, ref::mask_of(inst.graph, got.removed_edges), inst.k));
  }
}

TEST_CASE("grouped optimum equals the plain optimum") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    ref::GenParams gp;
    gp.n = 2 + static_cast<int>(rng() % 4);
    gp.m = 2 + static_cast<int>(rng() % 8);
    gp.r = 1 + static_cast<int>(rng() % 2);
    gp.k = 1 + static_cast<int>(rng() % 3);
    gp.flavor = trial % 2 ? VC : Flavor::EdgeConnectivity;
    gp.w_max = 2;
    Instance inst = ref::random_instance(rng, gp);
    // duplicate every edge so the groups are nontrivial
    Graph doubled(inst.graph.vertex_count());
    for (const Edge& e : inst.graph.edges()) {
      doubled.add_edge(e.u, e.v, e.w);
      doubled.add_edge(e.u, e.v, e.w);
    }
    if (doubled.edge_count() > kBruteForceEdgeCap) continue;
    inst.graph = doubled;
    CAPTURE(trial);
    auto expected = ref::opt(inst);
    if (!expected) continue;
    CHECK(brute_force_opt_symmetric(inst, parallel_groups(inst.graph)).total_weight == *expected);
  }
}

TEST_CASE("grouped optimum rejects bad groups") {
  Instance inst = build::instance(build::graph(3, {{0, 1, 1}, {1, 2, kInf}}), DemandSet{{0, 2}}, 1);
  CHECK(code_of([&] { brute_force_opt_symmetric(inst, {}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { brute_force_opt_symmetric(inst, {{0}, {1}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { brute_force_opt_symmetric(inst, {{0}, {0}}); }) == ErrorCode::InvalidArgument);
  CHECK(brute_force_opt_symmetric(inst, {{0}}).total_weight == 1);
}

TEST_CASE("literal sparsest cut matches the reference") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 120; ++trial) {
    ref::GenParams gp;
    gp.n = 2 + static_cast<int>(rng() % 5);
    gp.m = 1 + static_cast<int>(rng() % 8);
    gp.r = 1 + static_cast<int>(rng() % 3);
    gp.k = 1 + static_cast<int>(rng() % 3);
    Instance inst = ref::random_instance(rng, gp);
    CAPTURE(trial);
    for (SparsityKind kind : {SparsityKind::EdgeUniform, SparsityKind::EdgeNonUniform,
                              SparsityKind::VertexUniform, SparsityKind::VertexNonUniform}) {
      bool vertex = kind == SparsityKind::VertexUniform || kind == SparsityKind::VertexNonUniform;
      bool uniform = kind == SparsityKind::EdgeUniform || kind == SparsityKind::VertexUniform;
      auto expected = vertex ? ref::vertex_sparsity(inst.graph, inst.demands, gp.k, uniform)
                             : ref::edge_sparsity(inst.graph, inst.demands, gp.k, uniform);
      if (!expected) {
        CHECK(code_of([&] { brute_force_sparsest(inst.graph, inst.demands, gp.k, kind); }) ==
              ErrorCode::NoCandidateCut);
        continue;
      }
      SparseCut cut = brute_force_sparsest(inst.graph, inst.demands, gp.k, kind);
      CHECK(cut.sparsity == *expected);
      CHECK(static_cast<int>(cut.free_edges.size() + cut.separator.size()) <= gp.k - 1);
    }
  }
  CHECK(code_of([&] {
          brute_force_sparsest(Graph(kBruteSparsestVertexCap + 1), DemandSet{{0, 1}}, 1,
                               SparsityKind::EdgeUniform);
        }) == ErrorCode::CapExceeded);
}

TEST_CASE("algorithm names") {
  for (Algorithm alg : {Algorithm::UniformEc, Algorithm::Ec, Algorithm::EcPoly, Algorithm::Vc,
                        Algorithm::TwoRoute, Algorithm::St})
    CHECK(parse_algorithm(algorithm_name(alg)) == alg);
  CHECK_FALSE(parse_algorithm("greedy").has_value());
}

TEST_CASE("logarithm lower bound") {
  CHECK(ln_lower_bound(1) == Rational(0));
  for (std::int64_t x : {2, 3, 4, 5, 7, 100, 12345}) {
    Rational lb = ln_lower_bound(x);
    double got = static_cast<double>(lb.num()) / static_cast<double>(lb.den());
    CHECK(got <= std::log(static_cast<double>(x)));
    CHECK(got >= std::log(static_cast<double>(x)) - std::ldexp(1.0, -38));
  }
  CHECK(code_of([] { ln_lower_bound(0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("ratio bounds per algorithm") {
  Instance three = build::instance(build::complete(4), DemandSet{{0, 1}, {0, 2}, {0, 3}}, 2);
  SolverParams p;
  const Rational ln4 = ln_lower_bound(4);
  CHECK(ratio_bound(Algorithm::UniformEc, three, p) == Rational(16) * ln4);
  p.delta = Rational(1, 2);
  CHECK(ratio_bound(Algorithm::UniformEc, three, p) == Rational(24) * ln4);
  // r = 3 falls in floor(log2 3) + 1 = 2 buckets
  CHECK(ratio_bound(Algorithm::Ec, three, p) == Rational(64) * ln4);
  CHECK(ratio_bound(Algorithm::TwoRoute, three, p) == Rational(16) * ln4);
  CHECK_FALSE(ratio_bound(Algorithm::Vc, three, p).has_value());
  CHECK_FALSE(ratio_bound(Algorithm::EcPoly, three, p).has_value());
  p.c = Rational(2);
  CHECK(ratio_bound(Algorithm::St, three, p) == Rational(3) * (Rational(1) + p.opt_grid_epsilon));
}

TEST_CASE("ratio report") {
  Instance tri = build::instance(build::complete(3), DemandSet{{0, 1}}, 2);
  SolveResult res;
  res.solution = CutSolution::make(tri.graph, {0, 1}, 2);
  res.guarantee = 2;
  RatioReport r = ratio_report(tri, "tri", Algorithm::Ec, SolverParams{}, res);
  CHECK(r.opt_weight == 1);
  CHECK(r.ratio == Rational(2));
  CHECK(r.within_bound);
  CHECK(r.algorithm == "ec");

  SolveResult empty;
  empty.solution = CutSolution::make(tri.graph, {}, 3);
  RatioReport z = ratio_report(tri, "tri", Algorithm::Vc, SolverParams{}, empty, 0);
  CHECK(z.ratio == Rational(1));
  CHECK_FALSE(z.bound.has_value());
  CHECK(z.within_bound);
}
