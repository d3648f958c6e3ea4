#include <doctest.h>

#include <random>
#include <set>

#include "krc/exact_oracle.hpp"
#include "krc/reductions.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace krc;

namespace {

constexpr Flavor EC = Flavor::EdgeConnectivity;
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

bool demands_adjacent(const Instance& inst) {
  for (const auto& p : inst.demands.pairs())
    for (const Edge& e : inst.graph.edges())
      if ((e.u == p.s && e.v == p.t) || (e.u == p.t && e.v == p.s)) return true;
  return false;
}

Bipartite bipartite_from_mask(int m, int n, std::uint32_t mask) {
  Bipartite b{m, n, {}};
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < n; ++v)
      if ((mask >> (u * n + v)) & 1u) b.edges.emplace_back(u, v);
  return b;
}

Rational random_fraction(std::mt19937_64& rng) {
  std::int64_t den = 2 + static_cast<std::int64_t>(rng() % 5);
  std::int64_t num = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(den - 1));
  return Rational(num, den);
}

}  // namespace

TEST_CASE("edge to vertex connectivity examples") {
  Instance single = build::instance(build::graph(2, {{0, 1, 5}}), DemandSet{{0, 1}}, 1);
  Reduction r = ec_to_vc(single);
  CHECK(r.instance.graph.vertex_count() == 2);
  CHECK(r.instance.graph.edge_count() == 1);
  CHECK(r.instance.flavor == VC);
  CHECK(brute_force_opt(single).total_weight == 5);
  CHECK(brute_force_opt(r.instance).total_weight == 5);

  Instance star = build::instance(build::graph(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}), DemandSet{{1, 2}}, 1);
  Reduction rs = ec_to_vc(star);
  CHECK(rs.instance.graph.vertex_count() == 6);
  int inf_edges = 0;
  for (const Edge& e : rs.instance.graph.edges()) inf_edges += is_inf(e.w) ? 1 : 0;
  CHECK(inf_edges == 3);
  for (EdgeId e = 0; e < 3; ++e) CHECK(rs.map.edge_forward[static_cast<std::size_t>(e)] == EdgeSet{e});

  Instance tri = build::instance(build::complete(3), DemandSet{{0, 1}}, 2);
  Reduction rt = ec_to_vc(tri);
  CHECK(brute_force_opt(tri).total_weight == 1);
  CHECK(brute_force_opt(rt.instance).total_weight == 1);

  Instance lonely = build::instance(build::graph(3, {{0, 1, 1}}), DemandSet{{0, 2}}, 1);
  CHECK(code_of([&] { ec_to_vc(lonely); }) == ErrorCode::IsolatedTerminal);
  CHECK(code_of([&] { ec_to_vc(build::instance(build::complete(3), DemandSet{{0, 1}}, 1, VC)); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("edge to vertex connectivity preserves OPT and solutions") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    ref::GenParams gp;
    gp.n = 2 + static_cast<int>(rng() % 5);
    gp.m = 1 + static_cast<int>(rng() % 8);
    gp.r = 1 + static_cast<int>(rng() % 3);
    gp.k = 1 + static_cast<int>(rng() % 3);
    gp.inf_probability = 0.1;
    Instance inst = ref::random_instance(rng, gp);
    std::vector<int> degree(static_cast<std::size_t>(gp.n), 0);
    for (const Edge& e : inst.graph.edges()) {
      ++degree[static_cast<std::size_t>(e.u)];
      ++degree[static_cast<std::size_t>(e.v)];
    }
    bool isolated = false;
    for (const auto& p : inst.demands.pairs())
      isolated |= degree[static_cast<std::size_t>(p.s)] == 0 || degree[static_cast<std::size_t>(p.t)] == 0;
    if (isolated) continue;
    CAPTURE(trial);
    Reduction red = ec_to_vc(inst);
    auto src = ref::opt(inst);
    auto img = ref::opt(red.instance);
    REQUIRE(src.has_value() == img.has_value());
    if (!src) continue;
    CHECK(*src == *img);

    CutSolution image_opt = brute_force_opt(red.instance);
    EdgeSet back = red.map.pull_back(image_opt.removed_edges);
    CHECK(inst.graph.weight_of(back) == image_opt.total_weight);
    CHECK(ref::feasible(inst, ref::mask_of(inst.graph, back), inst.k));

    CutSolution source_opt = brute_force_opt(inst);
    EdgeSet fwd = red.map.push_forward(source_opt.removed_edges);
    CHECK(red.instance.graph.weight_of(fwd) == source_opt.total_weight);
    CHECK(ref::feasible(red.instance, ref::mask_of(red.instance.graph, fwd), inst.k));
  }
}

TEST_CASE("uniformization examples") {
  Instance unit = build::instance(build::complete(3), DemandSet{{0, 1}}, 2, VC);
  Reduction r = vc_weighted_to_uniform(unit, 1);
  CHECK(r.instance.graph.edge_count() == 3 * 27);
  for (const EdgeSet& copies : r.map.edge_forward) CHECK(copies.size() == 27);
  CHECK(r.instance.graph.uniform_weights());

  Instance two = build::instance(build::graph(3, {{0, 2, 2}, {2, 1, 1}}), DemandSet{{0, 1}}, 1, VC);
  Reduction r2 = vc_weighted_to_uniform(two, 1);
  CHECK(r2.map.edge_forward[0].size() == 54);
  CHECK(r2.map.edge_forward[1].size() == 27);

  // n * guess = 3, so weight 10 is clipped to 3 before expansion
  Instance heavy = build::instance(build::graph(3, {{0, 2, 10}, {2, 1, 1}}), DemandSet{{0, 1}}, 1, VC);
  Reduction rh = vc_weighted_to_uniform(heavy, 1);
  CHECK(rh.map.edge_forward[0].size() == 3 * 27);

  // w * n^3 = 27 < 30, dropped and always included
  Instance light = build::instance(build::graph(3, {{0, 2, 1}, {2, 1, 5}}), DemandSet{{0, 1}}, 1, VC);
  Reduction rl = vc_weighted_to_uniform(light, 30);
  CHECK(rl.map.always_include == EdgeSet{0});
  CHECK(rl.map.edge_forward[0].empty());
  CHECK(rl.map.pull_back({}) == EdgeSet{0});

  Instance with_inf = build::instance(build::graph(3, {{0, 2, kInf}, {2, 1, 1}}), DemandSet{{0, 1}}, 1, VC);
  Reduction ri = vc_weighted_to_uniform(with_inf, 1);
  REQUIRE(ri.map.edge_forward[0].size() == 1);
  CHECK(is_inf(ri.instance.graph.edge(ri.map.edge_forward[0][0]).w));

  CHECK(code_of([&] { vc_weighted_to_uniform(unit, 0); }) == ErrorCode::GuessZero);
  CHECK(code_of([&] { vc_weighted_to_uniform(unit, -1); }) == ErrorCode::InvalidArgument);
  Instance ec = unit;
  ec.flavor = EC;
  CHECK(code_of([&] { vc_weighted_to_uniform(ec, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("uniformization bounds with the right guess") {
  std::mt19937_64 rng(42);
  int checked = 0;
  for (int trial = 0; trial < 3000 && checked < 60; ++trial) {
    ref::GenParams gp;
    gp.n = 3 + static_cast<int>(rng() % 3);
    gp.m = 2 + static_cast<int>(rng() % 6);
    gp.r = 1 + static_cast<int>(rng() % 2);
    gp.k = 1 + static_cast<int>(rng() % 2);
    gp.flavor = VC;
    gp.w_max = 30;
    Instance inst = ref::random_instance(rng, gp);
    // parallel copies of an s-t edge would each count as a path
    if (demands_adjacent(inst)) continue;
    CutSolution source = brute_force_opt(inst);
    if (source.total_weight == 0) continue;
    ++checked;
    CAPTURE(trial);
    const Weight n3 = static_cast<Weight>(gp.n) * gp.n * gp.n;
    Reduction red = vc_weighted_to_uniform(inst, source.total_weight);
    CutSolution image = brute_force_opt_symmetric(red.instance, red.map.edge_forward);
    CHECK(image.total_weight <= n3 * source.total_weight);

    EdgeSet back = red.map.pull_back(image.removed_edges);
    CHECK(ref::feasible(inst, ref::mask_of(inst.graph, back), inst.k));
    Weight back_w = inst.graph.weight_of(back);
    CHECK(back_w >= source.total_weight);
    Weight deleted = inst.graph.weight_of(red.map.always_include);
    CHECK(Rational(back_w) <= Rational(image.total_weight, n3) + Rational(deleted));
    CHECK(Rational(back_w) <= Rational(source.total_weight) * Rational(gp.n + 1, gp.n));
  }
  CHECK(checked >= 30);
}

TEST_CASE("set expansion reduction examples") {
  Bipartite k22{2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  SsveImage img = ssve_to_st_vc_krc(k22, Rational(1, 2));
  CHECK(img.block == 9);
  CHECK(img.instance.k == 2);
  CHECK(img.instance.flavor == VC);
  CHECK(img.instance.demands.size() == 1);
  CHECK(img.instance.graph.vertex_count() == 2 + 2 + 2 * 9);
  CHECK(img.t_edge_groups.size() == 2);
  for (const EdgeSet& g : img.t_edge_groups) {
    CHECK(g.size() == 9);
    for (EdgeId e : g) CHECK(img.instance.graph.edge(e).w == 1);
  }
  CHECK(img.clique_vertex(2, 1, 0) == 2 + 2 + 9);

  Bipartite odd{3, 1, {{0, 0}}};
  CHECK(code_of([&] { ssve_to_st_vc_krc(odd, Rational(1, 2)); }) == ErrorCode::NonIntegralThreshold);
  CHECK(code_of([&] { ssve_to_st_vc_krc(k22, Rational(1)); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { ssve_to_st_vc_krc(k22, Rational(0)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("set expansion optimum matches its image") {
  // A raw optimum may beat C*N by keeping a few t-edges; canonical ones match.
  Bipartite pair{2, 1, {{0, 0}, {1, 0}}};
  SsveImage img = ssve_to_st_vc_krc(pair, Rational(1, 2));
  CutSolution raw = brute_force_opt_symmetric(img.instance, img.t_edge_groups);
  CHECK(raw.total_weight == 4);
  EdgeSet canon = canonicalize_ssve_solution(pair, img, raw.removed_edges);
  CHECK(img.instance.graph.weight_of(canon) == 5);

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    int m = 1 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % 3);
    if (m < 2) m = 2;
    Bipartite bip = bipartite_from_mask(m, n, static_cast<std::uint32_t>(rng()) & ((1u << (m * n)) - 1));
    for (int need = 1; need < m; ++need) {
      CAPTURE(trial);
      CAPTURE(need);
      SsveImage image = ssve_to_st_vc_krc(bip, Rational(need, m));
      const int c_star = ref::ssve_value(bip, need);
      CutSolution opt = brute_force_opt_symmetric(image.instance, image.t_edge_groups);
      for (int c = 0; c <= n; ++c)
        CHECK((c_star <= c) == (opt.total_weight <= Weight{c} * image.block));
      EdgeSet canon = canonicalize_ssve_solution(bip, image, opt.removed_edges);
      CHECK(image.instance.graph.weight_of(canon) == Weight{c_star} * image.block);
      CHECK(ref::feasible(image.instance, ref::mask_of(image.instance.graph, canon), image.instance.k));
    }
  }
}

TEST_CASE("tensor square") {
  Bipartite one{1, 1, {{0, 0}}};
  CHECK(tensor_square(one) == one);

  Bipartite b{2, 3, {{0, 0}, {0, 2}, {1, 1}}};
  Bipartite sq = tensor_square(b);
  CHECK(sq.left_count == 4);
  CHECK(sq.right_count == 9);
  CHECK(sq.edges.size() == 9);
  std::set<std::pair<int, int>> got(sq.edges.begin(), sq.edges.end());
  // (u1,u2) = (0,1), (v1,v2) = (2,1)
  CHECK(got.count({0 * 2 + 1, 2 * 3 + 1}) == 1);
  CHECK(got.count({1 * 2 + 1, 0}) == 0);

  Bipartite wide{5000, 1, {}};
  CHECK(code_of([&] { tensor_square(wide); }) == ErrorCode::SizeOverflow);
}

TEST_CASE("expansion checks") {
  Bipartite full{3, 4, {}};
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 4; ++v) full.edges.emplace_back(u, v);
  for (auto beta : {Rational(0), Rational(1, 2), Rational(3, 4), Rational(9, 10)})
    CHECK(is_expanding(full, Rational(1, 3), beta));
  CHECK_FALSE(is_expanding(full, Rational(1, 3), Rational(1)));

  Bipartite match{4, 4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}};
  for (auto alpha : {Rational(1, 4), Rational(1, 2), Rational(2, 3)})
    for (auto beta : {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(3, 5)}) {
      bool expected = (alpha * Rational(4)).ceil() > (beta * Rational(4));
      CHECK(is_expanding(match, alpha, beta) == expected);
    }

  CHECK(code_of([&] { is_expanding(Bipartite{21, 1, {}}, Rational(1, 2), Rational(1, 2)); }) ==
        ErrorCode::ExactCapExceeded);

  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 1 + static_cast<int>(rng() % 6);
    int n = 1 + static_cast<int>(rng() % 6);
    Bipartite bip = ref::random_bipartite(rng, m, n, 0.4);
    Rational alpha = random_fraction(rng);
    Rational beta = random_fraction(rng);
    CHECK(is_expanding(bip, alpha, beta) == ref::expanding(bip, alpha, beta));
  }
}

TEST_CASE("tensor square expansion in both directions") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 60; ++trial) {
    int m = 1 + static_cast<int>(rng() % 4);
    int n = 1 + static_cast<int>(rng() % 4);
    Bipartite bip = ref::random_bipartite(rng, m, n, 0.5);
    Bipartite sq = tensor_square(bip);
    Rational alpha = random_fraction(rng);
    Rational beta = random_fraction(rng);
    CAPTURE(trial);
    if (!ref::expanding(bip, alpha, beta)) CHECK_FALSE(is_expanding(sq, alpha * alpha, beta * beta));
    Rational wide = Rational(2) * alpha - alpha * alpha;
    if (ref::expanding(bip, alpha, beta)) CHECK(is_expanding(sq, wide, beta * beta));
  }
}

TEST_CASE("densest subgraph incidence") {
  Hypergraph h{4, 3, {{0, 1, 2}}};
  DksImage img = dks_incidence_to_ssve(h, 2);
  CHECK(img.bipartite.left_count == 1);
  CHECK(img.bipartite.right_count == 4);
  CHECK(neighborhood(img.bipartite, {0}) == VertexSet{0, 1, 2});

  Hypergraph tri{3, 2, {{0, 1}, {1, 2}, {0, 2}}};
  DksImage ti = dks_incidence_to_ssve(tri, 2);
  CHECK(ti.bipartite.left_count == 3);
  for (const auto& adj : ti.bipartite.left_adjacency()) CHECK(adj.size() == 2);

  Hypergraph six{4, 2, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {1, 3}}};
  CHECK(dks_incidence_to_ssve(six, 2).alpha_for(3) == Rational(1, 2));
  CHECK(code_of([&] { dks_incidence_to_ssve(six, 0); }) == ErrorCode::InvalidArgument);

  Hypergraph bad{3, 2, {{0, 0}}};
  CHECK_THROWS_AS(bad.validate(), KrcError);
}

TEST_CASE("seeded subset sampling") {
  std::vector<int> pool{3, 5, 8, 13, 21, 34};
  auto a = sample_kappa_subset(pool, 3, 7);
  CHECK(a == sample_kappa_subset(pool, 3, 7));
  CHECK(a.size() == 3);
  CHECK(std::is_sorted(a.begin(), a.end()));
  for (int x : a) CHECK(std::find(pool.begin(), pool.end(), x) != pool.end());
  CHECK(sample_kappa_subset(pool, 6, 1) == pool);

  // every element of the pool shows up close to half the time
  std::vector<int> hits(6, 0);
  for (std::uint64_t seed = 0; seed < 3000; ++seed)
    for (int x : sample_kappa_subset({0, 1, 2, 3, 4, 5}, 3, seed)) ++hits[static_cast<std::size_t>(x)];
  for (int h : hits) {
    CHECK(h > 1350);
    CHECK(h < 1650);
  }
}
