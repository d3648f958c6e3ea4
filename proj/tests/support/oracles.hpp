#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond the data types: Edmonds-Karp on a dense matrix instead of
// Dinic, and literal enumerations instead of the pruned searches.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <vector>

#include "krc/graph.hpp"
#include "krc/reductions.hpp"

namespace ref {

using krc::Edge;
using krc::EdgeId;
using krc::Graph;
using krc::Instance;
using krc::Rational;
using krc::Vertex;
using krc::Weight;

using Cap = std::int64_t;

// Large enough to dominate every finite cut the tests build.
inline constexpr Cap kBig = Cap{1} << 50;

class Matrix {
 public:
  explicit Matrix(int n) : n_(n), cap_(static_cast<std::size_t>(n) * n, 0) {}
  Cap& at(int u, int v) { return cap_[static_cast<std::size_t>(u) * n_ + v]; }
  int size() const { return n_; }

  Cap max_flow(int s, int t) {
    Cap total = 0;
    for (;;) {
      std::vector<int> parent(static_cast<std::size_t>(n_), -1);
      parent[static_cast<std::size_t>(s)] = s;
      std::deque<int> queue{s};
      while (!queue.empty() && parent[static_cast<std::size_t>(t)] < 0) {
        int u = queue.front();
        queue.pop_front();
        for (int v = 0; v < n_; ++v)
          if (parent[static_cast<std::size_t>(v)] < 0 && at(u, v) > 0) {
            parent[static_cast<std::size_t>(v)] = u;
            queue.push_back(v);
          }
      }
      if (parent[static_cast<std::size_t>(t)] < 0) return total;
      Cap push = kBig;
      for (int v = t; v != s; v = parent[static_cast<std::size_t>(v)])
        push = std::min(push, at(parent[static_cast<std::size_t>(v)], v));
      for (int v = t; v != s; v = parent[static_cast<std::size_t>(v)]) {
        at(parent[static_cast<std::size_t>(v)], v) -= push;
        at(v, parent[static_cast<std::size_t>(v)]) += push;
      }
      total += push;
      if (total >= kBig) return kBig;
    }
  }

 private:
  int n_;
  std::vector<Cap> cap_;
};

inline Cap weight_cap(Weight w) { return krc::is_inf(w) ? kBig : w; }

// Removed edges are skipped; `removed` may be empty.
inline bool alive(const std::vector<bool>& removed, EdgeId e) {
  return removed.empty() || !removed[static_cast<std::size_t>(e)];
}

inline Cap min_cut_value(const Graph& g, Vertex s, Vertex t) {
  Matrix m(g.vertex_count());
  for (const Edge& e : g.edges()) {
    m.at(e.u, e.v) += weight_cap(e.w);
    m.at(e.v, e.u) += weight_cap(e.w);
  }
  return m.max_flow(s, t);
}

inline int edge_paths(const Graph& g, Vertex s, Vertex t, const std::vector<bool>& removed = {}) {
  Matrix m(g.vertex_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (!alive(removed, id)) continue;
    const Edge& e = g.edge(id);
    m.at(e.u, e.v) += 1;
    m.at(e.v, e.u) += 1;
  }
  return static_cast<int>(m.max_flow(s, t));
}

// Direct s-t edges are counted one by one; the rest by node splitting.
inline int vertex_paths(const Graph& g, Vertex s, Vertex t, const std::vector<bool>& removed = {}) {
  const int n = g.vertex_count();
  Matrix m(2 * n);
  int direct = 0;
  for (Vertex v = 0; v < n; ++v) m.at(2 * v, 2 * v + 1) = (v == s || v == t) ? kBig : 1;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (!alive(removed, id)) continue;
    const Edge& e = g.edge(id);
    if ((e.u == s && e.v == t) || (e.u == t && e.v == s)) {
      ++direct;
      continue;
    }
    m.at(2 * e.u + 1, 2 * e.v) = kBig;
    m.at(2 * e.v + 1, 2 * e.u) = kBig;
  }
  return direct + static_cast<int>(m.max_flow(2 * s + 1, 2 * t));
}

inline int paths(const Instance& inst, Vertex s, Vertex t, const std::vector<bool>& removed = {}) {
  return inst.flavor == krc::Flavor::EdgeConnectivity ? edge_paths(inst.graph, s, t, removed)
                                                      : vertex_paths(inst.graph, s, t, removed);
}

inline bool feasible(const Instance& inst, const std::vector<bool>& removed, int threshold) {
  for (const auto& p : inst.demands.pairs())
    if (paths(inst, p.s, p.t, removed) >= threshold) return false;
  return true;
}

inline std::vector<bool> mask_of(const Graph& g, const krc::EdgeSet& ids) {
  std::vector<bool> out(static_cast<std::size_t>(g.edge_count()), false);
  for (EdgeId e : ids) out[static_cast<std::size_t>(e)] = true;
  return out;
}

inline bool connected_without(const Graph& g, Vertex s, Vertex t, const std::vector<bool>& removed,
                              const std::vector<bool>& dead_vertex = {}) {
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  std::vector<Vertex> stack{s};
  seen[static_cast<std::size_t>(s)] = true;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    if (u == t) return true;
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
      if (!alive(removed, id)) continue;
      const Edge& e = g.edge(id);
      if (e.u != u && e.v != u) continue;
      Vertex w = e.other(u);
      if (seen[static_cast<std::size_t>(w)]) continue;
      if (!dead_vertex.empty() && dead_vertex[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      stack.push_back(w);
    }
  }
  return false;
}

// Smallest number of edges whose removal separates s from t.
inline int min_edge_cut_cardinality(const Graph& g, Vertex s, Vertex t) {
  const int m = g.edge_count();
  int best = m;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    int size = std::popcount(mask);
    if (size >= best) continue;
    std::vector<bool> removed(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) removed[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    if (!connected_without(g, s, t, removed)) best = size;
  }
  return best;
}

// Smallest vertex separator for non-adjacent s, t.
inline int min_vertex_separator(const Graph& g, Vertex s, Vertex t) {
  const int n = g.vertex_count();
  int best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if ((mask >> s) & 1 || (mask >> t) & 1) continue;
    int size = std::popcount(mask);
    if (size >= best) continue;
    std::vector<bool> dead(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dead[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    if (!connected_without(g, s, t, {}, dead)) best = size;
  }
  return best;
}

// Minimum cut weight over all vertex sides containing s and not t.
inline Weight min_cut_by_sides(const Graph& g, Vertex s, Vertex t) {
  const int n = g.vertex_count();
  Weight best = krc::kInf;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!((mask >> s) & 1) || ((mask >> t) & 1)) continue;
    Weight w = 0;
    for (const Edge& e : g.edges())
      if (((mask >> e.u) & 1) != ((mask >> e.v) & 1)) w = krc::sat_add(w, e.w);
    best = std::min(best, w);
  }
  return best;
}

inline Weight side_cut_weight(const Graph& g, const std::vector<bool>& side) {
  Weight w = 0;
  for (const Edge& e : g.edges())
    if (side[static_cast<std::size_t>(e.u)] != side[static_cast<std::size_t>(e.v)])
      w = krc::sat_add(w, e.w);
  return w;
}

// Exhaustive minimum over subsets of finite edges; nullopt if infeasible.
inline std::optional<Weight> opt(const Instance& inst) {
  const Graph& g = inst.graph;
  std::vector<EdgeId> finite;
  for (EdgeId id = 0; id < g.edge_count(); ++id)
    if (!krc::is_inf(g.edge(id).w)) finite.push_back(id);
  std::optional<Weight> best;
  const auto f = finite.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f); ++mask) {
    Weight w = 0;
    std::vector<bool> removed(static_cast<std::size_t>(g.edge_count()), false);
    for (std::size_t i = 0; i < f; ++i)
      if ((mask >> i) & 1) {
        removed[static_cast<std::size_t>(finite[i])] = true;
        w += g.edge(finite[i]).w;
      }
    if (best && w >= *best) continue;
    if (feasible(inst, removed, inst.k)) best = w;
  }
  return best;
}

inline Rational ratio(Weight num, std::int64_t den) {
  return krc::is_inf(num) ? Rational::infinity() : Rational(num, den);
}

struct Denominators {
  std::int64_t inside = 0;
  std::int64_t outside = 0;
  std::int64_t crossing = 0;
};

// in: 0 = S, 1 = Delta, 2 = T. Terminal counts include pairs touching Delta.
inline Denominators denominators(const krc::DemandSet& d, const std::vector<int>& in) {
  Denominators out;
  for (const auto& p : d.pairs()) {
    for (Vertex x : {p.s, p.t}) {
      if (in[static_cast<std::size_t>(x)] == 0) ++out.inside;
      if (in[static_cast<std::size_t>(x)] == 2) ++out.outside;
    }
    int a = in[static_cast<std::size_t>(p.s)];
    int b = in[static_cast<std::size_t>(p.t)];
    if ((a == 0 && b == 2) || (a == 2 && b == 0)) ++out.crossing;
  }
  return out;
}

// min over S and F with |F| <= k-1 of w(E(S, S-bar) \ F) / denominator.
inline std::optional<Rational> edge_sparsity(const Graph& g, const krc::DemandSet& d, int k,
                                             bool uniform) {
  const int n = g.vertex_count();
  std::optional<Rational> best;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<int> in(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) in[static_cast<std::size_t>(v)] = ((mask >> v) & 1) ? 0 : 2;
    Denominators dn = denominators(d, in);
    std::int64_t den = uniform ? std::min(dn.inside, dn.outside) : dn.crossing;
    if (den == 0) continue;
    std::vector<EdgeId> cut;
    for (EdgeId id = 0; id < g.edge_count(); ++id)
      if (in[static_cast<std::size_t>(g.edge(id).u)] != in[static_cast<std::size_t>(g.edge(id).v)])
        cut.push_back(id);
    for (std::uint32_t free = 0; free < (1u << cut.size()); ++free) {
      if (std::popcount(free) > k - 1) continue;
      Weight w = 0;
      for (std::size_t i = 0; i < cut.size(); ++i)
        if (!((free >> i) & 1)) w = krc::sat_add(w, g.edge(cut[i]).w);
      Rational value = ratio(w, den);
      if (!best || value < *best) best = value;
    }
  }
  return best;
}

// min over vertex cuts (S, Delta, T) with |Delta| <= k-1 of w(E(S, T)) / denominator.
inline std::optional<Rational> vertex_sparsity(const Graph& g, const krc::DemandSet& d, int k,
                                               bool uniform) {
  const int n = g.vertex_count();
  std::optional<Rational> best;
  std::vector<int> in(static_cast<std::size_t>(n), 0);
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    int delta = 0;
    for (int v = 0; v < n; ++v) {
      in[static_cast<std::size_t>(v)] = static_cast<int>(c % 3);
      c /= 3;
      delta += in[static_cast<std::size_t>(v)] == 1;
    }
    if (delta > k - 1) continue;
    Denominators dn = denominators(d, in);
    std::int64_t den = uniform ? std::min(dn.inside, dn.outside) : dn.crossing;
    if (den == 0) continue;
    Weight w = 0;
    for (const Edge& e : g.edges()) {
      int a = in[static_cast<std::size_t>(e.u)];
      int b = in[static_cast<std::size_t>(e.v)];
      if ((a == 0 && b == 2) || (a == 2 && b == 0)) w = krc::sat_add(w, e.w);
    }
    Rational value = ratio(w, den);
    if (!best || value < *best) best = value;
  }
  return best;
}

// Smallest |Gamma(S)| over left sets with |S| >= need.
inline int ssve_value(const krc::Bipartite& bip, int need) {
  int best = bip.right_count + 1;
  for (std::uint32_t mask = 0; mask < (1u << bip.left_count); ++mask) {
    if (std::popcount(mask) < need) continue;
    std::vector<bool> hit(static_cast<std::size_t>(bip.right_count), false);
    for (auto [u, v] : bip.edges)
      if ((mask >> u) & 1) hit[static_cast<std::size_t>(v)] = true;
    best = std::min(best, static_cast<int>(std::count(hit.begin(), hit.end(), true)));
  }
  return best;
}

// Every left set of size >= alpha*m has > beta*n neighbors; all subsets tried.
inline bool expanding(const krc::Bipartite& bip, const Rational& alpha, const Rational& beta) {
  for (std::uint32_t mask = 0; mask < (1u << bip.left_count); ++mask) {
    if (Rational(std::popcount(mask)) < alpha * Rational(bip.left_count)) continue;
    std::vector<bool> hit(static_cast<std::size_t>(bip.right_count), false);
    for (auto [u, v] : bip.edges)
      if ((mask >> u) & 1) hit[static_cast<std::size_t>(v)] = true;
    auto gamma = std::count(hit.begin(), hit.end(), true);
    if (!(Rational(gamma) > beta * Rational(bip.right_count))) return false;
  }
  return true;
}

struct GenParams {
  int n = 6;
  int m = 9;
  int r = 2;
  int k = 2;
  krc::Flavor flavor = krc::Flavor::EdgeConnectivity;
  Weight w_min = 1;
  Weight w_max = 4;
  double inf_probability = 0.0;
};

inline Instance random_instance(std::mt19937_64& rng, const GenParams& gp) {
  std::uniform_int_distribution<int> vertex(0, gp.n - 1);
  std::uniform_int_distribution<Weight> weight(gp.w_min, gp.w_max);
  std::bernoulli_distribution inf(gp.inf_probability);
  Instance inst;
  inst.graph = Graph(gp.n);
  inst.k = gp.k;
  inst.flavor = gp.flavor;
  auto pair = [&] {
    int u = vertex(rng), v = vertex(rng);
    while (v == u) v = vertex(rng);
    return std::pair{u, v};
  };
  for (int i = 0; i < gp.m; ++i) {
    auto [u, v] = pair();
    Weight w = weight(rng);
    if (inf(rng)) w = krc::kInf;
    inst.graph.add_edge(u, v, w);
  }
  for (int i = 0; i < gp.r; ++i) {
    auto [s, t] = pair();
    inst.demands.add(s, t);
  }
  return inst;
}

inline krc::Bipartite random_bipartite(std::mt19937_64& rng, int m, int n, double p) {
  std::bernoulli_distribution coin(p);
  krc::Bipartite bip{m, n, {}};
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < n; ++v)
      if (coin(rng)) bip.edges.emplace_back(u, v);
  return bip;
}

}  // namespace ref
