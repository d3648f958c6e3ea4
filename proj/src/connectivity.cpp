#include "krc/connectivity.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "krc/detail/max_flow.hpp"

namespace krc {

namespace {

using Flow = detail::MaxFlow<std::int64_t>;

void check_pair(const Graph& g, Vertex s, Vertex t) {
  if (!g.valid_vertex(s) || !g.valid_vertex(t))
    throw KrcError(ErrorCode::InvalidVertex,
                   "pair (" + std::to_string(s) + "," + std::to_string(t) + ")");
  if (s == t)
    throw KrcError(ErrorCode::InvalidArgument, "s = t = " + std::to_string(s));
}

// Node v splits into in-node 2v and out-node 2v+1.
int in_node(Vertex v) { return 2 * v; }
int out_node(Vertex v) { return 2 * v + 1; }

}  // namespace

int num_edge_disjoint_paths(const Graph& g, Vertex s, Vertex t, int limit) {
  check_pair(g, s, t);
  Flow flow(g.vertex_count());
  for (const Edge& e : g.edges()) flow.add_arc(e.u, e.v, 1, 1);
  return static_cast<int>(flow.solve(s, t, limit));
}

int num_vertex_disjoint_paths(const Graph& g, Vertex s, Vertex t, int limit) {
  check_pair(g, s, t);
  Flow flow(2 * g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::int64_t cap = (v == s || v == t) ? Flow::kInfCap : 1;
    flow.add_arc(in_node(v), out_node(v), cap);
  }
  for (const Edge& e : g.edges()) {
    flow.add_arc(out_node(e.u), in_node(e.v), 1);
    flow.add_arc(out_node(e.v), in_node(e.u), 1);
  }
  return static_cast<int>(flow.solve(out_node(s), in_node(t), limit));
}

int num_disjoint_paths(const Graph& g, Flavor flavor, Vertex s, Vertex t, int limit) {
  return flavor == Flavor::EdgeConnectivity ? num_edge_disjoint_paths(g, s, t, limit)
                                            : num_vertex_disjoint_paths(g, s, t, limit);
}

EdgeCut min_weight_edge_st_cut(const Graph& g, Vertex s, Vertex t) {
  check_pair(g, s, t);
  Flow flow(g.vertex_count());
  for (const Edge& e : g.edges()) flow.add_arc(e.u, e.v, e.w, e.w);
  EdgeCut cut;
  cut.value = flow.solve(s, t);
  if (is_inf(cut.value)) return cut;
  auto reach = flow.source_side(s);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (reach[static_cast<std::size_t>(v)]) cut.side.push_back(v);
  return cut;
}

VertexCut min_weight_vertex_st_cut(const Graph& g, std::span<const Weight> vertex_weights,
                                   Vertex s, Vertex t) {
  check_pair(g, s, t);
  if (static_cast<int>(vertex_weights.size()) != g.vertex_count())
    throw KrcError(ErrorCode::InvalidArgument, "vertex weight count mismatch");
  for (const Edge& e : g.edges())
    if ((e.u == s && e.v == t) || (e.u == t && e.v == s))
      throw KrcError(ErrorCode::NoSeparator, "s and t are adjacent");
  Flow flow(2 * g.vertex_count());
  std::vector<int> split_arc(static_cast<std::size_t>(g.vertex_count()), -1);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    Weight cap = (v == s || v == t) ? Flow::kInfCap : vertex_weights[static_cast<std::size_t>(v)];
    split_arc[static_cast<std::size_t>(v)] = flow.add_arc(in_node(v), out_node(v), cap);
  }
  for (const Edge& e : g.edges()) {
    flow.add_arc(out_node(e.u), in_node(e.v), Flow::kInfCap);
    flow.add_arc(out_node(e.v), in_node(e.u), Flow::kInfCap);
  }
  VertexCut cut;
  cut.value = flow.solve(out_node(s), in_node(t));
  if (is_inf(cut.value)) return cut;
  auto reach = flow.source_side(out_node(s));
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (v == s || v == t) continue;
    if (reach[static_cast<std::size_t>(in_node(v))] && !reach[static_cast<std::size_t>(out_node(v))])
      cut.separator.push_back(v);
  }
  return cut;
}

bool is_feasible(const Instance& inst, std::span<const EdgeId> removed, int relaxed_k) {
  if (relaxed_k < 1) throw KrcError(ErrorCode::InvalidArgument, "relaxed_k must be >= 1");
  Subgraph residual = remove_edges(inst.graph, removed);
  for (const DemandPair& p : inst.demands.pairs())
    if (num_disjoint_paths(residual.graph, inst.flavor, p.s, p.t, relaxed_k) >= relaxed_k)
      return false;
  return true;
}

bool is_feasible(const Instance& inst, const CutSolution& sol, int relaxed_k) {
  return is_feasible(inst, sol.removed_edges, relaxed_k);
}

DemandStats demand_stats(const DemandSet& demands, const std::vector<bool>& side) {
  DemandStats stats;
  for (int i = 0; i < demands.size(); ++i) {
    bool s_in = side.at(static_cast<std::size_t>(demands[i].s));
    bool t_in = side.at(static_cast<std::size_t>(demands[i].t));
    stats.inside += int{s_in} + int{t_in};
    stats.outside += int{!s_in} + int{!t_in};
    if (s_in != t_in) {
      ++stats.crossing;
      stats.crossing_pairs.push_back(i);
    }
  }
  return stats;
}

DemandStats demand_stats(const DemandSet& demands, int vertex_count,
                         std::span<const Vertex> side) {
  return demand_stats(demands, membership(vertex_count, side));
}

SubInstance induced_subinstance(const Instance& inst, std::span<const Vertex> side) {
  const Graph& g = inst.graph;
  auto in = membership(g.vertex_count(), side);
  std::vector<Vertex> local(static_cast<std::size_t>(g.vertex_count()), -1);
  SubInstance sub;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!in[static_cast<std::size_t>(v)]) continue;
    local[static_cast<std::size_t>(v)] = static_cast<Vertex>(sub.vertex_origin.size());
    sub.vertex_origin.push_back(v);
  }
  sub.instance.graph = Graph(static_cast<int>(sub.vertex_origin.size()));
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    Vertex a = local[static_cast<std::size_t>(e.u)];
    Vertex b = local[static_cast<std::size_t>(e.v)];
    if (a < 0 || b < 0) continue;
    sub.instance.graph.add_edge(a, b, e.w);
    sub.edge_origin.push_back(id);
  }
  for (int i = 0; i < inst.demands.size(); ++i) {
    Vertex a = local[static_cast<std::size_t>(inst.demands[i].s)];
    Vertex b = local[static_cast<std::size_t>(inst.demands[i].t)];
    if (a < 0 || b < 0) continue;
    sub.instance.demands.add(a, b);
    sub.demand_origin.push_back(i);
  }
  sub.instance.k = inst.k;
  sub.instance.flavor = inst.flavor;
  return sub;
}

std::vector<int> component_labels(const Graph& g, int* component_count) {
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const Edge& e : g.edges()) {
    int a = find(e.u), b = find(e.v);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<int> root_label(static_cast<std::size_t>(g.vertex_count()), -1);
  int next = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    int r = find(v);
    if (root_label[static_cast<std::size_t>(r)] < 0) root_label[static_cast<std::size_t>(r)] = next++;
    label[static_cast<std::size_t>(v)] = root_label[static_cast<std::size_t>(r)];
  }
  if (component_count) *component_count = next;
  return label;
}

}  // namespace krc
