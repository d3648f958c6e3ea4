#include "krc/cut_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "krc/connectivity.hpp"
#include "krc/detail/max_flow.hpp"

namespace krc {

std::optional<Rational> OracleConfig::reported_factor() const {
  if (mode == OracleMode::Exact) return Rational(1);
  return std::nullopt;
}

Rational OracleConfig::effective_factor() const {
  return reported_factor().value_or(assumed_factor);
}

namespace {

// a/b < c/d with kInf numerators treated as +infinity. Denominators > 0.
bool ratio_less(Weight a, std::int64_t b, Weight c, std::int64_t d) {
  if (is_inf(a)) return false;
  if (is_inf(c)) return true;
  return static_cast<__int128>(a) * d < static_cast<__int128>(c) * b;
}

bool ratio_equal(Weight a, std::int64_t b, Weight c, std::int64_t d) {
  if (is_inf(a) || is_inf(c)) return is_inf(a) && is_inf(c);
  return static_cast<__int128>(a) * d == static_cast<__int128>(c) * b;
}

Rational make_sparsity(Weight residual, std::int64_t den) {
  if (den <= 0 || is_inf(residual)) return Rational::infinity();
  return Rational(residual, den);
}

// n choose k, saturating at cap + 1.
std::int64_t choose_capped(std::int64_t n, std::int64_t k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 value = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    value = value * (n - k + i) / i;
    if (value > cap) return cap + 1;
  }
  return static_cast<std::int64_t>(value);
}

// A set compared as a bitmask: the larger set owns the highest element of
// the symmetric difference.
bool mask_less(const VertexSet& a, const VertexSet& b) {
  auto ia = a.rbegin(), ib = b.rbegin();
  while (ia != a.rend() && ib != b.rend()) {
    if (*ia != *ib) return *ia < *ib;
    ++ia;
    ++ib;
  }
  return ib != b.rend();
}

void check_exact_cap(const Graph& g, const OracleConfig& cfg) {
  if (cfg.mode == OracleMode::Exact &&
      (g.vertex_count() > cfg.exact_vertex_cap || g.vertex_count() > 30))
    throw KrcError(ErrorCode::ExactCapExceeded,
                   std::to_string(g.vertex_count()) + " vertices exceed the exact cap");
}

void check_demands(const Graph& g, const DemandSet& demands) {
  if (demands.empty()) throw KrcError(ErrorCode::InvalidArgument, "no demand pairs");
  for (const DemandPair& p : demands.pairs())
    if (!g.valid_vertex(p.s) || !g.valid_vertex(p.t))
      throw KrcError(ErrorCode::InvalidVertex, "demand endpoint out of range");
}

bool heavier(const Graph& g, EdgeId a, EdgeId b) {
  Weight wa = g.edge(a).w, wb = g.edge(b).w;
  return wa != wb ? wa > wb : a < b;
}

// Scores edge cuts given as a membership vector.
class EdgeCutScorer {
 public:
  EdgeCutScorer(const Graph& g, const DemandSet& demands, int free_count, CutKind kind)
      : g_(g), demands_(demands), free_count_(free_count), kind_(kind) {
    scratch_.reserve(static_cast<std::size_t>(g.edge_count()));
  }

  struct Score {
    Weight residual = 0;
    std::int64_t den = 0;
  };

  Score score(const std::vector<char>& in) {
    Score s;
    s.den = denominator(in);
    if (s.den <= 0) return s;
    scratch_.clear();
    for (EdgeId id = 0; id < g_.edge_count(); ++id) {
      const Edge& e = g_.edge(id);
      if (in[static_cast<std::size_t>(e.u)] != in[static_cast<std::size_t>(e.v)]) scratch_.push_back(id);
    }
    auto f = static_cast<std::size_t>(free_count_);
    if (scratch_.size() <= f) return s;
    auto cmp = [&](EdgeId a, EdgeId b) { return heavier(g_, a, b); };
    if (f > 0) std::nth_element(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(f), scratch_.end(), cmp);
    for (std::size_t i = f; i < scratch_.size(); ++i) s.residual = sat_add(s.residual, g_.edge(scratch_[i]).w);
    return s;
  }

  std::int64_t denominator(const std::vector<char>& in) const {
    std::int64_t inside = 0, crossing = 0;
    for (const DemandPair& p : demands_.pairs()) {
      bool a = in[static_cast<std::size_t>(p.s)], b = in[static_cast<std::size_t>(p.t)];
      inside += int{a} + int{b};
      crossing += a != b;
    }
    if (kind_ == CutKind::NonUniform) return crossing;
    return std::min<std::int64_t>(inside, 2 * demands_.size() - inside);
  }

 private:
  const Graph& g_;
  const DemandSet& demands_;
  int free_count_;
  CutKind kind_;
  EdgeSet scratch_;
};

std::vector<char> mask_to_in(std::uint32_t mask, int n) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) in[static_cast<std::size_t>(v)] = (mask >> v) & 1u;
  return in;
}

VertexSet in_to_set(const std::vector<char>& in) {
  VertexSet out;
  for (std::size_t v = 0; v < in.size(); ++v)
    if (in[v]) out.push_back(static_cast<Vertex>(v));
  return out;
}

// Vertex orderings from a lazy neighbor-averaging walk, one per restart.
std::vector<VertexSet> sweep_orders(const Graph& g, const OracleConfig& cfg) {
  const int n = g.vertex_count();
  double inf_weight = std::max<double>(1.0, static_cast<double>(g.total_finite_weight()));
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : g.edges()) {
    double w = is_inf(e.w) ? inf_weight : static_cast<double>(e.w);
    if (w <= 0) continue;
    adj[static_cast<std::size_t>(e.u)].push_back({e.v, w});
    adj[static_cast<std::size_t>(e.v)].push_back({e.u, w});
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<VertexSet> orders;
  for (int restart = 0; restart < std::max(1, cfg.sweep_restarts); ++restart) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& xi : x) xi = dist(rng);
    std::vector<double> y(x.size());
    for (int it = 0; it < cfg.sweep_iterations; ++it) {
      for (int v = 0; v < n; ++v) {
        double total = 0, acc = 0;
        for (auto [u, w] : adj[static_cast<std::size_t>(v)]) {
          total += w;
          acc += w * x[static_cast<std::size_t>(u)];
        }
        double avg = total > 0 ? acc / total : x[static_cast<std::size_t>(v)];
        y[static_cast<std::size_t>(v)] = 0.5 * (x[static_cast<std::size_t>(v)] + avg);
      }
      double mean = std::accumulate(y.begin(), y.end(), 0.0) / std::max(1, n);
      double scale = 0;
      for (double& yi : y) {
        yi -= mean;
        scale = std::max(scale, std::abs(yi));
      }
      if (scale > 0)
        for (double& yi : y) yi /= scale;
      x.swap(y);
    }
    VertexSet order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return x[static_cast<std::size_t>(a)] < x[static_cast<std::size_t>(b)];
    });
    orders.push_back(std::move(order));
  }
  return orders;
}

// Best separator of size <= max_sep for a fixed side S.
class VertexCutSearch {
 public:
  VertexCutSearch(const Graph& g, const DemandSet& demands, int max_sep, CutKind kind)
      : g_(g), demands_(demands), max_sep_(max_sep), kind_(kind),
        terminal_(demands.terminal_counts(g.vertex_count())) {}

  struct Best {
    bool found = false;
    Weight residual = 0;
    std::int64_t den = 0;
    VertexSet separator;
  };

  Best search(const std::vector<char>& in) {
    const int n = g_.vertex_count();
    fin_.assign(static_cast<std::size_t>(n), 0);
    infc_.assign(static_cast<std::size_t>(n), 0);
    pairs_to_.assign(static_cast<std::size_t>(n), 0);
    cut_fin_ = 0;
    cut_inf_ = 0;
    for (const Edge& e : g_.edges()) {
      bool a = in[static_cast<std::size_t>(e.u)], b = in[static_cast<std::size_t>(e.v)];
      if (a == b) continue;
      Vertex out = a ? e.v : e.u;
      if (is_inf(e.w)) {
        ++infc_[static_cast<std::size_t>(out)];
        ++cut_inf_;
      } else {
        fin_[static_cast<std::size_t>(out)] = sat_add(fin_[static_cast<std::size_t>(out)], e.w);
        cut_fin_ = sat_add(cut_fin_, e.w);
      }
    }
    base_cross_ = 0;
    inside_ = 0;
    for (const DemandPair& p : demands_.pairs()) {
      bool a = in[static_cast<std::size_t>(p.s)], b = in[static_cast<std::size_t>(p.t)];
      inside_ += int{a} + int{b};
      if (a != b) {
        ++pairs_to_[static_cast<std::size_t>(a ? p.t : p.s)];
        ++base_cross_;
      }
    }
    outside_ = 2 * demands_.size() - inside_;
    cands_.clear();
    for (Vertex v = 0; v < n; ++v) {
      auto i = static_cast<std::size_t>(v);
      if (in[i]) continue;
      if (fin_[i] > 0 || infc_[i] > 0 || terminal_[i] > 0) cands_.push_back(v);
    }
    best_ = Best{};
    chosen_.clear();
    dfs(0, cut_fin_, cut_inf_, base_cross_, outside_);
    return best_;
  }

 private:
  void consider(Weight fin, std::int64_t infs, std::int64_t cross, std::int64_t outside) {
    std::int64_t den = kind_ == CutKind::NonUniform ? cross : std::min(inside_, outside);
    if (den <= 0) return;
    Weight residual = infs > 0 ? kInf : fin;
    bool better = !best_.found || ratio_less(residual, den, best_.residual, best_.den);
    if (!better && ratio_equal(residual, den, best_.residual, best_.den)) {
      VertexSet sep = chosen_;
      std::sort(sep.begin(), sep.end());
      better = mask_less(sep, best_.separator);
    }
    if (!better) return;
    best_.found = true;
    best_.residual = residual;
    best_.den = den;
    best_.separator = chosen_;
    std::sort(best_.separator.begin(), best_.separator.end());
  }

  void dfs(std::size_t from, Weight fin, std::int64_t infs, std::int64_t cross, std::int64_t outside) {
    consider(fin, infs, cross, outside);
    if (static_cast<int>(chosen_.size()) >= max_sep_) return;
    for (std::size_t i = from; i < cands_.size(); ++i) {
      auto v = static_cast<std::size_t>(cands_[i]);
      chosen_.push_back(cands_[i]);
      dfs(i + 1, fin - fin_[v], infs - infc_[v], cross - pairs_to_[v], outside - terminal_[v]);
      chosen_.pop_back();
    }
  }

  const Graph& g_;
  const DemandSet& demands_;
  int max_sep_;
  CutKind kind_;
  std::vector<int> terminal_;
  std::vector<Weight> fin_;
  std::vector<std::int64_t> infc_;
  std::vector<std::int64_t> pairs_to_;
  Weight cut_fin_ = 0;
  std::int64_t cut_inf_ = 0;
  std::int64_t base_cross_ = 0;
  std::int64_t inside_ = 0;
  std::int64_t outside_ = 0;
  VertexSet cands_;
  VertexSet chosen_;
  Best best_;
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto i = static_cast<std::size_t>(x);
      parent[i] = parent[static_cast<std::size_t>(parent[i])];
      x = parent[i];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

int separated_count(UnionFind& uf, const DemandSet& demands) {
  int count = 0;
  for (const DemandPair& p : demands.pairs()) count += uf.find(p.s) != uf.find(p.t);
  return count;
}

class MulticutSearch {
 public:
  MulticutSearch(const Graph& g, const DemandSet& demands, int ell)
      : g_(g), demands_(demands), ell_(ell), base_(g.vertex_count()) {}

  EdgeSet run() {
    for (EdgeId id = 0; id < g_.edge_count(); ++id) {
      const Edge& e = g_.edge(id);
      if (is_inf(e.w)) base_.unite(e.u, e.v);
      else if (e.w == 0) forced_.push_back(id);
      else order_.push_back(id);
    }
    if (separated_count(base_, demands_) < ell_)
      throw KrcError(ErrorCode::Infeasible, "uncuttable edges keep too many pairs connected");
    std::sort(order_.begin(), order_.end(), [&](EdgeId a, EdgeId b) { return heavier(g_, a, b); });
    best_cost_ = kInf;
    removed_.clear();
    dfs(0, base_, 0);
    EdgeSet out = forced_;
    out.insert(out.end(), best_.begin(), best_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void dfs(std::size_t i, UnionFind uf, Weight cost) {
    if (found_ && cost >= best_cost_) return;
    UnionFind all = uf;
    for (std::size_t j = i; j < order_.size(); ++j) all.unite(g_.edge(order_[j]).u, g_.edge(order_[j]).v);
    if (separated_count(all, demands_) >= ell_) {
      found_ = true;
      best_cost_ = cost;
      best_ = removed_;
      return;
    }
    if (i == order_.size() || separated_count(uf, demands_) < ell_) return;
    const Edge& e = g_.edge(order_[i]);
    if (uf.find(e.u) == uf.find(e.v)) {
      dfs(i + 1, std::move(uf), cost);
      return;
    }
    UnionFind kept = uf;
    kept.unite(e.u, e.v);
    dfs(i + 1, std::move(kept), cost);
    removed_.push_back(order_[i]);
    dfs(i + 1, std::move(uf), sat_add(cost, e.w));
    removed_.pop_back();
  }

  const Graph& g_;
  const DemandSet& demands_;
  int ell_;
  UnionFind base_;
  EdgeSet forced_;
  EdgeSet order_;
  EdgeSet removed_;
  EdgeSet best_;
  Weight best_cost_ = kInf;
  bool found_ = false;
};

EdgeSet greedy_multicut(const Graph& g, const DemandSet& demands, int ell) {
  std::vector<bool> removed(static_cast<std::size_t>(g.edge_count()), false);
  for (;;) {
    Subgraph residual = remove_edges(g, removed);
    auto label = component_labels(residual.graph);
    int separated = 0;
    for (const DemandPair& p : demands.pairs())
      separated += label[static_cast<std::size_t>(p.s)] != label[static_cast<std::size_t>(p.t)];
    if (separated >= ell) break;
    EdgeCut best;
    bool have = false;
    for (const DemandPair& p : demands.pairs()) {
      if (label[static_cast<std::size_t>(p.s)] != label[static_cast<std::size_t>(p.t)]) continue;
      EdgeCut cut = min_weight_edge_st_cut(residual.graph, p.s, p.t);
      if (!have || cut.value < best.value) {
        best = std::move(cut);
        have = true;
      }
    }
    if (!have || is_inf(best.value))
      throw KrcError(ErrorCode::Infeasible, "uncuttable edges keep too many pairs connected");
    auto side = membership(g.vertex_count(), best.side);
    for (EdgeId id : cut_edges(residual.graph, side))
      removed[static_cast<std::size_t>(residual.edge_origin[static_cast<std::size_t>(id)])] = true;
  }
  EdgeSet out;
  for (EdgeId id = 0; id < g.edge_count(); ++id)
    if (removed[static_cast<std::size_t>(id)]) out.push_back(id);
  return out;
}

int bit_length(unsigned __int128 x) {
  int bits = 0;
  while (x) {
    ++bits;
    x >>= 1;
  }
  return bits;
}

}  // namespace

EdgeSet l_multicut(const Graph& g, const DemandSet& demands, int ell, const OracleConfig& cfg) {
  if (ell < 0 || ell > demands.size())
    throw KrcError(ErrorCode::InvalidArgument, "ell out of range: " + std::to_string(ell));
  if (ell == 0) return {};
  if (cfg.mode == OracleMode::Sweep) return greedy_multicut(g, demands, ell);
  return MulticutSearch(g, demands, ell).run();
}

int separated_pair_count(const Graph& g, const DemandSet& demands) {
  auto label = component_labels(g);
  int count = 0;
  for (const DemandPair& p : demands.pairs())
    count += label[static_cast<std::size_t>(p.s)] != label[static_cast<std::size_t>(p.t)];
  return count;
}

int GomoryHuTree::min_path_edge(Vertex u, Vertex v) const {
  if (u == v) throw KrcError(ErrorCode::InvalidArgument, "u = v");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertex_count));
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    adj[static_cast<std::size_t>(edges[static_cast<std::size_t>(i)].u)].push_back(i);
    adj[static_cast<std::size_t>(edges[static_cast<std::size_t>(i)].v)].push_back(i);
  }
  std::vector<int> via(static_cast<std::size_t>(vertex_count), -2);
  std::vector<Vertex> queue{u};
  via[static_cast<std::size_t>(u)] = -1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    for (int i : adj[static_cast<std::size_t>(x)]) {
      const TreeEdge& e = edges[static_cast<std::size_t>(i)];
      Vertex y = e.u == x ? e.v : e.u;
      if (via[static_cast<std::size_t>(y)] != -2) continue;
      via[static_cast<std::size_t>(y)] = i;
      queue.push_back(y);
    }
  }
  if (via[static_cast<std::size_t>(v)] == -2) throw KrcError(ErrorCode::InvalidArgument, "tree is disconnected");
  int best = -1;
  for (Vertex x = v; x != u;) {
    int i = via[static_cast<std::size_t>(x)];
    const TreeEdge& e = edges[static_cast<std::size_t>(i)];
    if (best < 0 || e.rank < edges[static_cast<std::size_t>(best)].rank) best = i;
    x = e.u == x ? e.v : e.u;
  }
  return best;
}

Weight GomoryHuTree::min_cut_value(Vertex u, Vertex v) const {
  return edges[static_cast<std::size_t>(min_path_edge(u, v))].capacity;
}

VertexSet GomoryHuTree::side(int edge_index, Vertex containing) const {
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(vertex_count));
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (i == edge_index) continue;
    const TreeEdge& e = edges[static_cast<std::size_t>(i)];
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<char> seen(static_cast<std::size_t>(vertex_count), 0);
  std::vector<Vertex> stack{containing};
  seen[static_cast<std::size_t>(containing)] = 1;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : adj[static_cast<std::size_t>(x)])
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        stack.push_back(y);
      }
  }
  return in_to_set(seen);
}

GomoryHuTree gomory_hu(const Graph& g) {
  using Wide = __int128;
  using Flow = detail::MaxFlow<Wide>;
  const int n = g.vertex_count();
  const int m = g.edge_count();

  // Uncuttable edges cost more than all finite edges together, so minimum
  // cuts first avoid them and stay finite inside the flow.
  unsigned __int128 finite_total = 0;
  for (const Edge& e : g.edges())
    if (!is_inf(e.w)) finite_total += static_cast<unsigned __int128>(e.w);
  const unsigned __int128 big = finite_total + 1;
  const bool perturb = m <= 60 && bit_length(big * static_cast<unsigned>(m + 1)) + m + 1 <= 123;
  const int shift = perturb ? m : 0;
  auto cap_of = [&](EdgeId id) -> Wide {
    const Edge& e = g.edge(id);
    Wide w = is_inf(e.w) ? static_cast<Wide>(big) : static_cast<Wide>(e.w);
    if (!perturb) return w;
    return (w << m) + (static_cast<Wide>(1) << id);
  };
  const Wide inf_key = static_cast<Wide>(big) << shift;

  struct GroupEdge {
    int a, b;
    Wide key;
  };
  std::vector<VertexSet> groups;
  std::vector<GroupEdge> tree;
  if (n > 0) {
    groups.emplace_back(static_cast<std::size_t>(n));
    std::iota(groups[0].begin(), groups[0].end(), 0);
  }

  for (;;) {
    int x = -1;
    for (int i = 0; i < static_cast<int>(groups.size()); ++i)
      if (groups[static_cast<std::size_t>(i)].size() >= 2) {
        x = i;
        break;
      }
    if (x < 0) break;
    const VertexSet members = groups[static_cast<std::size_t>(x)];

    // Tree components hanging off x, one contracted node each.
    std::vector<int> subtree(groups.size(), -1);
    std::vector<int> incident;  // tree edge indices touching x
    int subtree_count = 0;
    for (int ti = 0; ti < static_cast<int>(tree.size()); ++ti) {
      const GroupEdge& te = tree[static_cast<std::size_t>(ti)];
      if (te.a != x && te.b != x) continue;
      incident.push_back(ti);
      int start = te.a == x ? te.b : te.a;
      int label = subtree_count++;
      std::vector<int> stack{start};
      subtree[static_cast<std::size_t>(start)] = label;
      while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (const GroupEdge& other : tree) {
          int next = other.a == cur ? other.b : other.b == cur ? other.a : -1;
          if (next < 0 || next == x || subtree[static_cast<std::size_t>(next)] >= 0) continue;
          subtree[static_cast<std::size_t>(next)] = label;
          stack.push_back(next);
        }
      }
    }

    std::vector<int> group_of(static_cast<std::size_t>(n), -1);
    for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi)
      for (Vertex v : groups[static_cast<std::size_t>(gi)]) group_of[static_cast<std::size_t>(v)] = gi;
    std::vector<int> local(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < members.size(); ++i) local[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
    const int base = static_cast<int>(members.size());
    auto node_of = [&](Vertex v) {
      int l = local[static_cast<std::size_t>(v)];
      if (l >= 0) return l;
      return base + subtree[static_cast<std::size_t>(group_of[static_cast<std::size_t>(v)])];
    };

    Flow flow(base + subtree_count);
    for (EdgeId id = 0; id < m; ++id) {
      const Edge& e = g.edge(id);
      int a = node_of(e.u), b = node_of(e.v);
      if (a == b) continue;
      Wide c = cap_of(id);
      flow.add_arc(a, b, c, c);
    }
    const Vertex s = members[0], t = members[1];
    Wide value = flow.solve(node_of(s), node_of(t));
    auto reach = flow.source_side(node_of(s));

    VertexSet keep, split;
    for (Vertex v : members) (reach[static_cast<std::size_t>(node_of(v))] ? keep : split).push_back(v);
    const int y = static_cast<int>(groups.size());
    groups[static_cast<std::size_t>(x)] = keep;
    groups.push_back(split);
    for (int ti : incident) {
      GroupEdge& te = tree[static_cast<std::size_t>(ti)];
      int other = te.a == x ? te.b : te.a;
      if (!reach[static_cast<std::size_t>(base + subtree[static_cast<std::size_t>(other)])]) {
        if (te.a == x) te.a = y;
        else te.b = y;
      }
    }
    tree.push_back({x, y, value});
  }

  GomoryHuTree out;
  out.vertex_count = n;
  for (const GroupEdge& te : tree) {
    GomoryHuTree::TreeEdge e;
    e.u = groups[static_cast<std::size_t>(te.a)][0];
    e.v = groups[static_cast<std::size_t>(te.b)][0];
    if (e.u > e.v) std::swap(e.u, e.v);
    if (te.key >= inf_key) e.capacity = kInf;
    else e.capacity = static_cast<Weight>(te.key >> shift);
    out.edges.push_back(e);
  }
  std::vector<int> order(tree.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return tree[static_cast<std::size_t>(a)].key < tree[static_cast<std::size_t>(b)].key;
  });
  for (std::size_t r = 0; r < order.size(); ++r)
    out.edges[static_cast<std::size_t>(order[r])].rank = static_cast<int>(r);
  return out;
}

LaminarMinCutFamily laminar_min_cut_family(const Graph& g, const DemandSet& demands) {
  check_demands(g, demands);
  GomoryHuTree tree = gomory_hu(g);
  auto counts = demands.terminal_counts(g.vertex_count());
  auto d_of = [&](const VertexSet& set) {
    std::int64_t total = 0;
    for (Vertex v : set) total += counts[static_cast<std::size_t>(v)];
    return total;
  };
  const Vertex anchor = demands[0].s;
  LaminarMinCutFamily family;
  for (const DemandPair& p : demands.pairs()) {
    int ei = tree.min_path_edge(p.s, p.t);
    VertexSet a = tree.side(ei, tree.edges[static_cast<std::size_t>(ei)].u);
    VertexSet b = complement(g.vertex_count(), a);
    std::int64_t da = d_of(a), db = d_of(b);
    bool pick_a = da != db ? da < db : std::binary_search(a.begin(), a.end(), anchor);
    family.sets.push_back(pick_a ? std::move(a) : std::move(b));
  }
  return family;
}

SparseCut evaluate_edge_cut(const Graph& g, const DemandSet& demands,
                            std::span<const Vertex> side, int k, CutKind kind) {
  if (k < 1) throw KrcError(ErrorCode::InvalidArgument, "k must be >= 1");
  auto member = membership(g.vertex_count(), side);
  SparseCut cut;
  cut.kind = kind;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (member[static_cast<std::size_t>(v)]) cut.side.push_back(v);
  EdgeSet crossing = cut_edges(g, member);
  std::sort(crossing.begin(), crossing.end(), [&](EdgeId a, EdgeId b) { return heavier(g, a, b); });
  auto f = std::min(crossing.size(), static_cast<std::size_t>(k - 1));
  cut.free_edges.assign(crossing.begin(), crossing.begin() + static_cast<std::ptrdiff_t>(f));
  std::sort(cut.free_edges.begin(), cut.free_edges.end());
  for (std::size_t i = f; i < crossing.size(); ++i)
    cut.residual_weight = sat_add(cut.residual_weight, g.edge(crossing[i]).w);
  std::vector<char> in(member.begin(), member.end());
  cut.denominator = EdgeCutScorer(g, demands, k - 1, kind).denominator(in);
  cut.sparsity = make_sparsity(cut.residual_weight, cut.denominator);
  return cut;
}

SparseCut evaluate_vertex_cut(const Graph& g, const DemandSet& demands,
                              std::span<const Vertex> side, std::span<const Vertex> separator,
                              CutKind kind) {
  auto in_s = membership(g.vertex_count(), side);
  auto in_d = membership(g.vertex_count(), separator);
  SparseCut cut;
  cut.kind = kind;
  std::vector<bool> rest(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto i = static_cast<std::size_t>(v);
    if (in_s[i] && in_d[i]) throw KrcError(ErrorCode::InvalidArgument, "side and separator overlap");
    if (in_s[i]) cut.side.push_back(v);
    if (in_d[i]) cut.separator.push_back(v);
    rest[i] = !in_s[i] && !in_d[i];
  }
  for (EdgeId id : edges_between(g, in_s, rest)) cut.residual_weight = sat_add(cut.residual_weight, g.edge(id).w);
  auto counts = demands.terminal_counts(g.vertex_count());
  std::int64_t d_s = 0, d_t = 0, crossing = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (in_s[static_cast<std::size_t>(v)]) d_s += counts[static_cast<std::size_t>(v)];
    if (rest[static_cast<std::size_t>(v)]) d_t += counts[static_cast<std::size_t>(v)];
  }
  for (const DemandPair& p : demands.pairs()) {
    auto s = static_cast<std::size_t>(p.s), t = static_cast<std::size_t>(p.t);
    crossing += (in_s[s] && rest[t]) || (in_s[t] && rest[s]);
  }
  cut.denominator = kind == CutKind::NonUniform ? crossing : std::min(d_s, d_t);
  cut.sparsity = make_sparsity(cut.residual_weight, cut.denominator);
  return cut;
}

SparseCut k_route_sparsest_cut(const Graph& g, const DemandSet& demands, int k, CutKind kind,
                               const OracleConfig& cfg) {
  if (k < 1) throw KrcError(ErrorCode::InvalidArgument, "k must be >= 1");
  check_demands(g, demands);
  check_exact_cap(g, cfg);
  if (choose_capped(g.edge_count(), k - 1, cfg.enumeration_budget) > cfg.enumeration_budget)
    throw KrcError(ErrorCode::FreeSetBlowup, "too many free sets for k = " + std::to_string(k));
  const int n = g.vertex_count();
  EdgeCutScorer scorer(g, demands, k - 1, kind);
  bool found = false;
  EdgeCutScorer::Score best;
  std::vector<char> best_in;

  auto offer = [&](const std::vector<char>& in) {
    auto s = scorer.score(in);
    if (s.den <= 0) return;
    if (found && !ratio_less(s.residual, s.den, best.residual, best.den)) return;
    found = true;
    best = s;
    best_in = in;
  };

  if (cfg.mode == OracleMode::Exact) {
    if (n >= 2) {
      const std::uint32_t limit = 1u << (n - 1);
      for (std::uint32_t mask = 1; mask < limit; ++mask) offer(mask_to_in(mask, n));
    }
  } else {
    for (const VertexSet& order : sweep_orders(g, cfg)) {
      std::vector<char> in(static_cast<std::size_t>(n), 0);
      for (int i = 0; i + 1 < n; ++i) {
        in[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
        offer(in);
      }
    }
  }
  if (!found) throw KrcError(ErrorCode::NoCandidateCut, "no cut separates any demand");
  return evaluate_edge_cut(g, demands, in_to_set(best_in), k, kind);
}

SparseCut sparsest_cut(const Graph& g, const DemandSet& demands, CutKind kind,
                       const OracleConfig& cfg) {
  return k_route_sparsest_cut(g, demands, 1, kind, cfg);
}

SparseCut vertex_k_route_sparsest_cut(const Graph& g, const DemandSet& demands, int k,
                                      CutKind kind, const OracleConfig& cfg) {
  if (k < 1) throw KrcError(ErrorCode::InvalidArgument, "k must be >= 1");
  check_demands(g, demands);
  check_exact_cap(g, cfg);
  if (choose_capped(g.vertex_count(), k - 1, cfg.enumeration_budget) > cfg.enumeration_budget)
    throw KrcError(ErrorCode::SeparatorBlowup, "too many separators for k = " + std::to_string(k));
  const int n = g.vertex_count();
  VertexCutSearch search(g, demands, k - 1, kind);
  bool found = false;
  VertexCutSearch::Best best;
  std::vector<char> best_in;

  auto offer = [&](const std::vector<char>& in) {
    auto b = search.search(in);
    if (!b.found) return;
    if (found && !ratio_less(b.residual, b.den, best.residual, best.den)) return;
    found = true;
    best = std::move(b);
    best_in = in;
  };

  if (cfg.mode == OracleMode::Exact) {
    if (n >= 2) {
      const std::uint32_t full = (1u << n) - 1;
      for (std::uint32_t mask = 1; mask < full; ++mask) offer(mask_to_in(mask, n));
    }
  } else {
    for (const VertexSet& order : sweep_orders(g, cfg)) {
      std::vector<char> in(static_cast<std::size_t>(n), 0);
      for (int i = 0; i + 1 < n; ++i) {
        in[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
        offer(in);
      }
    }
  }
  if (!found) throw KrcError(ErrorCode::NoCandidateCut, "no vertex cut separates any demand");
  return evaluate_vertex_cut(g, demands, in_to_set(best_in), best.separator, kind);
}

Rational clip_weight(Weight w, Weight cap, int k) {
  if (k < 2) throw KrcError(ErrorCode::InvalidArgument, "clipping needs k >= 2");
  if (is_inf(w)) return Rational::infinity();
  Rational limit(cap, k - 1);
  return Rational(w) < limit ? Rational(w) : limit;
}

SparseCut k_route_sparsest_cut_bicriteria(const Graph& g, const DemandSet& demands, int k,
                                          const OracleConfig& cfg, const Rational& constant) {
  if (k < 1) throw KrcError(ErrorCode::InvalidArgument, "k must be >= 1");
  check_demands(g, demands);
  const int n = g.vertex_count();
  const int m = g.edge_count();
  const std::int64_t factor = std::max<std::int64_t>(1, (constant * cfg.effective_factor()).ceil());
  const int free_count = static_cast<int>(2 * factor * (k - 1));

  std::vector<Weight> grid;
  for (const Edge& e : g.edges()) {
    if (is_inf(e.w)) continue;
    for (int tau = 1; tau <= m; ++tau) grid.push_back(sat_mul(e.w, tau));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty()) grid.push_back(0);

  bool found = false;
  SparseCut best;
  for (int r_prime = 1; r_prime <= demands.size(); ++r_prime) {
    std::map<std::vector<Weight>, EdgeSet> cache;
    for (Weight cap : grid) {
      Graph clipped(n);
      std::vector<Weight> key;
      for (const Edge& e : g.edges()) {
        Weight w = e.w;
        if (k > 1 && !is_inf(w)) w = std::min(sat_mul(w, k - 1), cap);
        clipped.add_edge(e.u, e.v, w);
        key.push_back(w);
      }
      auto hit = cache.find(key);
      if (hit == cache.end()) {
        EdgeSet cut;
        try {
          cut = l_multicut(clipped, demands, r_prime, cfg);
        } catch (const KrcError& err) {
          if (err.code() != ErrorCode::Infeasible) throw;
          if (r_prime == 1) throw;
          break;
        }
        hit = cache.emplace(std::move(key), std::move(cut)).first;
      }

      Subgraph rest = remove_edges(g, hit->second);
      int comp_count = 0;
      auto label = component_labels(rest.graph, &comp_count);
      std::vector<int> placed(static_cast<std::size_t>(comp_count), -1);  // 1 = S, 0 = complement
      for (int c = 0; c < comp_count; ++c) {
        int with_s = 0, with_rest = 0;
        for (const DemandPair& p : demands.pairs()) {
          int a = label[static_cast<std::size_t>(p.s)], b = label[static_cast<std::size_t>(p.t)];
          if (a == b || (a != c && b != c)) continue;
          int partner = placed[static_cast<std::size_t>(a == c ? b : a)];
          if (partner == 1) ++with_s;
          else if (partner == 0) ++with_rest;
        }
        placed[static_cast<std::size_t>(c)] = c == 0 ? 1 : (with_rest > with_s ? 1 : 0);
      }
      VertexSet side;
      for (Vertex v = 0; v < n; ++v)
        if (placed[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])] == 1) side.push_back(v);
      SparseCut cand = evaluate_edge_cut(g, demands, side, free_count + 1, CutKind::NonUniform);
      if (cand.denominator <= 0) continue;
      if (!found || cand.sparsity < best.sparsity) {
        found = true;
        best = std::move(cand);
      }
    }
  }
  if (!found) throw KrcError(ErrorCode::NoCandidateCut, "no bicriteria candidate separates a pair");
  return best;
}

}  // namespace krc
