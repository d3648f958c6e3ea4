#include "krc/graph.hpp"

#include <algorithm>
#include <string>

namespace krc {

Graph::Graph(int vertex_count) : vertex_count_(vertex_count) {
  if (vertex_count < 0)
    throw KrcError(ErrorCode::InvalidArgument, "negative vertex count");
}

EdgeId Graph::add_edge(Vertex u, Vertex v, Weight w) {
  if (!valid_vertex(u) || !valid_vertex(v))
    throw KrcError(ErrorCode::InvalidVertex,
                   "edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  if (u == v) throw KrcError(ErrorCode::SelfLoop, "vertex " + std::to_string(u));
  if (w < 0) throw KrcError(ErrorCode::NegativeWeight, std::to_string(w));
  edges_.push_back({u, v, w});
  return static_cast<EdgeId>(edges_.size() - 1);
}

Weight Graph::total_finite_weight() const noexcept {
  Weight total = 0;
  for (const Edge& e : edges_)
    if (!is_inf(e.w)) total = sat_add(total, e.w);
  return total;
}

Weight Graph::weight_of(std::span<const EdgeId> ids) const {
  Weight total = 0;
  for (EdgeId id : ids) total = sat_add(total, edge(id).w);
  return total;
}

bool Graph::uniform_weights() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return e.w == edges_.front().w; });
}

DemandSet::DemandSet(std::initializer_list<DemandPair> pairs) {
  for (const DemandPair& p : pairs) add(p.s, p.t);
}

void DemandSet::add(Vertex s, Vertex t) {
  if (s == t)
    throw KrcError(ErrorCode::InvalidArgument,
                   "demand pair with s = t = " + std::to_string(s));
  if (s < 0 || t < 0) throw KrcError(ErrorCode::InvalidVertex, "negative demand endpoint");
  pairs_.push_back({s, t});
}

std::vector<int> DemandSet::terminal_counts(int vertex_count) const {
  std::vector<int> counts(static_cast<std::size_t>(vertex_count), 0);
  for (const DemandPair& p : pairs_) {
    ++counts.at(static_cast<std::size_t>(p.s));
    ++counts.at(static_cast<std::size_t>(p.t));
  }
  return counts;
}

int DemandSet::max_terminal_count(int vertex_count) const {
  auto counts = terminal_counts(vertex_count);
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

DemandSet DemandSet::subset(std::span<const int> indices) const {
  DemandSet out;
  for (int i : indices) out.pairs_.push_back((*this)[i]);
  return out;
}

void Instance::validate() const {
  if (k < 1) throw KrcError(ErrorCode::InvalidArgument, "k must be >= 1");
  for (const DemandPair& p : demands.pairs())
    if (!graph.valid_vertex(p.s) || !graph.valid_vertex(p.t))
      throw KrcError(ErrorCode::InvalidVertex,
                     "demand (" + std::to_string(p.s) + "," + std::to_string(p.t) + ")");
}

CutSolution CutSolution::make(const Graph& g, EdgeSet edges, int achieved_k) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  CutSolution sol;
  for (EdgeId id : edges) {
    if (id < 0 || id >= g.edge_count())
      throw KrcError(ErrorCode::InvalidArgument, "edge id " + std::to_string(id));
    if (is_inf(g.edge(id).w))
      throw KrcError(ErrorCode::Infeasible, "INF edge " + std::to_string(id) + " removed");
    sol.total_weight = sat_add(sol.total_weight, g.edge(id).w);
  }
  sol.removed_edges = std::move(edges);
  sol.achieved_k = achieved_k;
  return sol;
}

std::vector<bool> membership(int vertex_count, std::span<const Vertex> set) {
  std::vector<bool> in(static_cast<std::size_t>(vertex_count), false);
  for (Vertex v : set) {
    if (v < 0 || v >= vertex_count)
      throw KrcError(ErrorCode::InvalidVertex, std::to_string(v));
    in[static_cast<std::size_t>(v)] = true;
  }
  return in;
}

VertexSet complement(int vertex_count, std::span<const Vertex> set) {
  auto in = membership(vertex_count, set);
  VertexSet out;
  for (Vertex v = 0; v < vertex_count; ++v)
    if (!in[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

Subgraph remove_edges(const Graph& g, const std::vector<bool>& removed) {
  Subgraph sub;
  sub.graph = Graph(g.vertex_count());
  sub.vertex_origin.resize(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) sub.vertex_origin[static_cast<std::size_t>(v)] = v;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (static_cast<std::size_t>(id) < removed.size() && removed[static_cast<std::size_t>(id)]) continue;
    const Edge& e = g.edge(id);
    sub.graph.add_edge(e.u, e.v, e.w);
    sub.edge_origin.push_back(id);
  }
  return sub;
}

Subgraph remove_edges(const Graph& g, std::span<const EdgeId> removed) {
  std::vector<bool> mask(static_cast<std::size_t>(g.edge_count()), false);
  for (EdgeId id : removed) mask.at(static_cast<std::size_t>(id)) = true;
  return remove_edges(g, mask);
}

EdgeSet cut_edges(const Graph& g, const std::vector<bool>& side) {
  EdgeSet out;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (side[static_cast<std::size_t>(e.u)] != side[static_cast<std::size_t>(e.v)]) out.push_back(id);
  }
  return out;
}

EdgeSet edges_between(const Graph& g, const std::vector<bool>& a,
                      const std::vector<bool>& b) {
  EdgeSet out;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    auto u = static_cast<std::size_t>(e.u);
    auto v = static_cast<std::size_t>(e.v);
    if ((a[u] && b[v]) || (a[v] && b[u])) out.push_back(id);
  }
  return out;
}

}  // namespace krc
