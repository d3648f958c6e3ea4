#include "krc/solvers.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "krc/connectivity.hpp"

namespace krc {

namespace {

void require_flavor(const Instance& inst, Flavor flavor, const char* solver) {
  inst.validate();
  if (inst.flavor != flavor)
    throw KrcError(ErrorCode::InvalidArgument,
                   std::string(solver) + " needs " +
                       (flavor == Flavor::EdgeConnectivity ? "edge" : "vertex") + " connectivity");
}

// Edge removal state over the original graph.
class Residual {
 public:
  explicit Residual(const Graph& g) : g_(g), removed_(static_cast<std::size_t>(g.edge_count()), false) {}

  Subgraph graph() const { return remove_edges(g_, removed_); }

  void remove(EdgeId original) { removed_[static_cast<std::size_t>(original)] = true; }

  EdgeSet removed() const {
    EdgeSet out;
    for (EdgeId id = 0; id < g_.edge_count(); ++id)
      if (removed_[static_cast<std::size_t>(id)]) out.push_back(id);
    return out;
  }

 private:
  const Graph& g_;
  std::vector<bool> removed_;
};

void reject_inf(const Graph& g, const EdgeSet& edges) {
  for (EdgeId id : edges)
    if (is_inf(g.edge(id).w))
      throw KrcError(ErrorCode::Infeasible, "cut charges uncuttable edge " + std::to_string(id));
}

EdgeSet map_ids(const EdgeSet& local, const std::vector<EdgeId>& origin) {
  EdgeSet out;
  out.reserve(local.size());
  for (EdgeId id : local) out.push_back(origin[static_cast<std::size_t>(id)]);
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet map_vertices(const VertexSet& local, const std::vector<Vertex>& origin) {
  VertexSet out;
  for (Vertex v : local) out.push_back(origin[static_cast<std::size_t>(v)]);
  std::sort(out.begin(), out.end());
  return out;
}

SolveResult finish(const Instance& inst, const EdgeSet& removed, int guarantee,
                   std::vector<TraceRecord> trace) {
  SolveResult result;
  result.solution = CutSolution::make(inst.graph, removed, guarantee);
  result.guarantee = guarantee;
  result.trace = std::move(trace);
  return result;
}

// Shared loop of the iterative solvers: find a cut among the active pairs,
// remove its charged edges, drop pairs that fell below the threshold.
struct IterationOutcome {
  SparseCut cut;
  EdgeSet charged;  // local ids in the residual graph
  int drop_threshold = 1;
};

SolveResult iterate(const Instance& inst, int threshold,
                    const std::function<IterationOutcome(const Graph&, const DemandSet&)>& step) {
  Residual residual(inst.graph);
  std::vector<int> active = pairs_at_least(inst.graph, inst.demands, inst.flavor, threshold);
  std::vector<TraceRecord> trace;
  int guarantee = threshold;
  while (!active.empty()) {
    Subgraph current = residual.graph();
    DemandSet demands = inst.demands.subset(active);
    IterationOutcome out = step(current.graph, demands);
    reject_inf(current.graph, out.charged);
    TraceRecord rec;
    rec.side = out.cut.side;
    rec.separator = out.cut.separator;
    rec.free_edges = map_ids(out.cut.free_edges, current.edge_origin);
    rec.sparsity = out.cut.sparsity;
    rec.removed = map_ids(out.charged, current.edge_origin);
    for (EdgeId id : rec.removed) residual.remove(id);

    guarantee = std::max(guarantee, out.drop_threshold);
    Subgraph after = residual.graph();
    std::vector<int> keep;
    for (int idx : active) {
      const DemandPair& p = inst.demands[idx];
      if (num_disjoint_paths(after.graph, inst.flavor, p.s, p.t, out.drop_threshold) >= out.drop_threshold)
        keep.push_back(idx);
      else
        rec.dropped.push_back(idx);
    }
    if (rec.dropped.empty())
      throw KrcError(ErrorCode::Infeasible, "iteration made no progress");
    active = std::move(keep);
    trace.push_back(std::move(rec));
  }
  return finish(inst, residual.removed(), guarantee, std::move(trace));
}

EdgeSet edge_cut_minus_free(const Graph& g, const SparseCut& cut) {
  auto side = membership(g.vertex_count(), cut.side);
  EdgeSet crossing = cut_edges(g, side);
  EdgeSet out;
  std::set_difference(crossing.begin(), crossing.end(), cut.free_edges.begin(), cut.free_edges.end(),
                      std::back_inserter(out));
  return out;
}

EdgeSet vertex_cut_edges(const Graph& g, const SparseCut& cut) {
  auto in_s = membership(g.vertex_count(), cut.side);
  auto in_d = membership(g.vertex_count(), cut.separator);
  std::vector<bool> rest(in_s.size());
  for (std::size_t v = 0; v < rest.size(); ++v) rest[v] = !in_s[v] && !in_d[v];
  return edges_between(g, in_s, rest);
}

int ceil_scaled(const Rational& factor, int k) {
  return static_cast<int>((factor * Rational(k)).ceil());
}

}  // namespace

std::vector<int> pairs_at_least(const Graph& g, const DemandSet& demands, Flavor flavor,
                                int threshold) {
  std::vector<int> out;
  for (int i = 0; i < demands.size(); ++i)
    if (num_disjoint_paths(g, flavor, demands[i].s, demands[i].t, threshold) >= threshold)
      out.push_back(i);
  return out;
}

std::vector<Weight> opt_guess_grid(Weight limit, const Rational& eps,
                                   const std::vector<Weight>& extra) {
  if (eps <= Rational(0)) throw KrcError(ErrorCode::InvalidArgument, "epsilon must be positive");
  std::vector<Weight> grid;
  for (Weight x = 1; x <= limit;) {
    grid.push_back(x);
    Weight step = (Rational(x) * (Rational(1) + eps)).floor();
    x = std::max(x + 1, step);
  }
  for (Weight w : extra)
    if (w >= 1 && w <= limit) grid.push_back(w);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

SolveResult solve_uniform_ec(const Instance& inst, const SolverParams& params) {
  require_flavor(inst, Flavor::EdgeConnectivity, "solve_uniform_ec");
  if (!inst.graph.uniform_weights())
    throw KrcError(ErrorCode::NonUniformWeights, "edge weights differ");
  if (params.delta < Rational(0)) throw KrcError(ErrorCode::InvalidArgument, "delta must be >= 0");
  const int k_plus = ceil_scaled(Rational(1) + params.delta, inst.k);

  std::vector<TraceRecord> trace;
  EdgeSet removed;
  std::function<void(const SubInstance&, std::vector<int>)> recurse =
      [&](const SubInstance& sub, std::vector<int> pair_ids) {
        const Graph& g = sub.instance.graph;
        std::vector<int> active_local, active_ids;
        for (int i = 0; i < sub.instance.demands.size(); ++i) {
          const DemandPair& p = sub.instance.demands[i];
          if (num_edge_disjoint_paths(g, p.s, p.t, k_plus) >= k_plus) {
            active_local.push_back(i);
            active_ids.push_back(pair_ids[static_cast<std::size_t>(i)]);
          }
        }
        if (active_local.empty()) return;
        DemandSet demands = sub.instance.demands.subset(active_local);
        SparseCut cut = sparsest_cut(g, demands, CutKind::Uniform, params.oracle);
        EdgeSet charged = cut_edges(g, membership(g.vertex_count(), cut.side));
        reject_inf(g, charged);

        TraceRecord rec;
        rec.side = map_vertices(cut.side, sub.vertex_origin);
        rec.sparsity = cut.sparsity;
        rec.removed = map_ids(charged, sub.edge_origin);
        removed.insert(removed.end(), rec.removed.begin(), rec.removed.end());
        auto in = membership(g.vertex_count(), cut.side);
        for (std::size_t j = 0; j < active_local.size(); ++j) {
          const DemandPair& p = demands[static_cast<int>(j)];
          if (in[static_cast<std::size_t>(p.s)] != in[static_cast<std::size_t>(p.t)])
            rec.dropped.push_back(active_ids[j]);
        }
        trace.push_back(std::move(rec));

        Instance local{g, demands, sub.instance.k, sub.instance.flavor};
        VertexSet other = complement(g.vertex_count(), cut.side);
        for (const VertexSet* part : {&cut.side, &other}) {
          SubInstance child = induced_subinstance(local, *part);
          SubInstance lifted = child;
          lifted.vertex_origin = map_vertices(child.vertex_origin, sub.vertex_origin);
          for (std::size_t e = 0; e < child.edge_origin.size(); ++e)
            lifted.edge_origin[e] = sub.edge_origin[static_cast<std::size_t>(child.edge_origin[e])];
          std::vector<int> child_ids;
          for (int d : child.demand_origin) child_ids.push_back(active_ids[static_cast<std::size_t>(d)]);
          recurse(lifted, std::move(child_ids));
        }
      };

  SubInstance root;
  root.instance = inst;
  for (Vertex v = 0; v < inst.graph.vertex_count(); ++v) root.vertex_origin.push_back(v);
  for (EdgeId e = 0; e < inst.graph.edge_count(); ++e) root.edge_origin.push_back(e);
  std::vector<int> ids;
  for (int i = 0; i < inst.demands.size(); ++i) ids.push_back(i);
  recurse(root, ids);
  return finish(inst, removed, k_plus, std::move(trace));
}

SolveResult solve_ec(const Instance& inst, const SolverParams& params) {
  require_flavor(inst, Flavor::EdgeConnectivity, "solve_ec");
  const int route = 2 * inst.k - 1;
  return iterate(inst, route, [&](const Graph& g, const DemandSet& demands) {
    IterationOutcome out;
    out.cut = k_route_sparsest_cut(g, demands, route, CutKind::NonUniform, params.oracle);
    out.charged = edge_cut_minus_free(g, out.cut);
    out.drop_threshold = route;
    return out;
  });
}

SolveResult solve_ec_polytime(const Instance& inst, const SolverParams& params) {
  require_flavor(inst, Flavor::EdgeConnectivity, "solve_ec_polytime");
  const int route = 2 * inst.k - 1;
  return iterate(inst, route, [&](const Graph& g, const DemandSet& demands) {
    IterationOutcome out;
    out.cut = k_route_sparsest_cut_bicriteria(g, demands, route, params.oracle, params.big_c);
    out.charged = edge_cut_minus_free(g, out.cut);
    out.drop_threshold = std::max(route, static_cast<int>(out.cut.free_edges.size()) + 1);
    return out;
  });
}

SolveResult solve_vc(const Instance& inst, const SolverParams& params) {
  require_flavor(inst, Flavor::VertexConnectivity, "solve_vc");
  const int route = 2 * inst.k - 1;
  return iterate(inst, route, [&](const Graph& g, const DemandSet& demands) {
    IterationOutcome out;
    out.cut = vertex_k_route_sparsest_cut(g, demands, route, CutKind::NonUniform, params.oracle);
    out.charged = vertex_cut_edges(g, out.cut);
    out.drop_threshold = route;
    return out;
  });
}

SolveResult solve_two_route(const Instance& inst, const SolverParams& params) {
  require_flavor(inst, Flavor::VertexConnectivity, "solve_two_route");
  if (inst.k != 2) throw KrcError(ErrorCode::InvalidArgument, "solve_two_route needs k = 2");

  std::vector<TraceRecord> trace;
  EdgeSet removed;
  std::function<void(const SubInstance&, std::vector<int>)> recurse =
      [&](const SubInstance& sub, std::vector<int> pair_ids) {
        const Graph& g = sub.instance.graph;
        std::vector<int> active_local;
        for (int i = 0; i < sub.instance.demands.size(); ++i) {
          const DemandPair& p = sub.instance.demands[i];
          if (num_vertex_disjoint_paths(g, p.s, p.t, 2) >= 2) active_local.push_back(i);
        }
        if (active_local.empty()) return;
        std::vector<int> active_ids;
        for (int i : active_local) active_ids.push_back(pair_ids[static_cast<std::size_t>(i)]);
        DemandSet demands = sub.instance.demands.subset(active_local);
        SparseCut cut = vertex_k_route_sparsest_cut(g, demands, 2, CutKind::Uniform, params.oracle);
        EdgeSet charged = vertex_cut_edges(g, cut);
        reject_inf(g, charged);

        TraceRecord rec;
        rec.side = map_vertices(cut.side, sub.vertex_origin);
        rec.separator = map_vertices(cut.separator, sub.vertex_origin);
        rec.sparsity = cut.sparsity;
        rec.removed = map_ids(charged, sub.edge_origin);
        removed.insert(removed.end(), rec.removed.begin(), rec.removed.end());
        auto in_s = membership(g.vertex_count(), cut.side);
        auto in_d = membership(g.vertex_count(), cut.separator);
        for (std::size_t j = 0; j < active_local.size(); ++j) {
          const DemandPair& p = demands[static_cast<int>(j)];
          auto s = static_cast<std::size_t>(p.s), t = static_cast<std::size_t>(p.t);
          bool s_rest = !in_s[s] && !in_d[s], t_rest = !in_s[t] && !in_d[t];
          if ((in_s[s] && t_rest) || (in_s[t] && s_rest)) rec.dropped.push_back(active_ids[j]);
        }
        trace.push_back(std::move(rec));

        Subgraph pruned = remove_edges(g, charged);
        Instance local{pruned.graph, demands, 2, Flavor::VertexConnectivity};
        VertexSet first = cut.side, second;
        first.insert(first.end(), cut.separator.begin(), cut.separator.end());
        for (Vertex v = 0; v < g.vertex_count(); ++v)
          if (!in_s[static_cast<std::size_t>(v)]) second.push_back(v);
        for (const VertexSet* part : {&first, &second}) {
          SubInstance child = induced_subinstance(local, *part);
          SubInstance lifted = child;
          lifted.vertex_origin = map_vertices(child.vertex_origin, sub.vertex_origin);
          for (std::size_t e = 0; e < child.edge_origin.size(); ++e) {
            EdgeId in_g = pruned.edge_origin[static_cast<std::size_t>(child.edge_origin[e])];
            lifted.edge_origin[e] = sub.edge_origin[static_cast<std::size_t>(in_g)];
          }
          std::vector<int> child_ids;
          for (int d : child.demand_origin) child_ids.push_back(active_ids[static_cast<std::size_t>(d)]);
          recurse(lifted, std::move(child_ids));
        }
      };

  SubInstance root;
  root.instance = inst;
  for (Vertex v = 0; v < inst.graph.vertex_count(); ++v) root.vertex_origin.push_back(v);
  for (EdgeId e = 0; e < inst.graph.edge_count(); ++e) root.edge_origin.push_back(e);
  std::vector<int> ids;
  for (int i = 0; i < inst.demands.size(); ++i) ids.push_back(i);
  recurse(root, ids);
  return finish(inst, removed, 2, std::move(trace));
}

SolveResult solve_st(const Instance& inst, const SolverParams& params) {
  require_flavor(inst, Flavor::VertexConnectivity, "solve_st");
  if (inst.demands.size() != 1)
    throw KrcError(ErrorCode::InvalidArgument, "solve_st needs exactly one demand pair");
  if (params.c <= Rational(0)) throw KrcError(ErrorCode::InvalidArgument, "c must be positive");
  const Graph& g = inst.graph;
  const Vertex s = inst.demands[0].s, t = inst.demands[0].t;
  const int k = inst.k;

  if (num_vertex_disjoint_paths(g, s, t, k) < k) return finish(inst, {}, k, {});

  if (k == 1) {
    EdgeCut cut = min_weight_edge_st_cut(g, s, t);
    if (is_inf(cut.value)) throw KrcError(ErrorCode::Infeasible, "s and t joined by uncuttable edges");
    TraceRecord rec;
    rec.side = cut.side;
    rec.removed = cut_edges(g, membership(g.vertex_count(), cut.side));
    EdgeSet removed = rec.removed;
    SolveResult result = finish(inst, removed, 1, {std::move(rec)});
    result.witness_size = 0;
    return result;
  }

  // Zero-cost edges never hurt; if they already suffice OPT is 0.
  EdgeSet zero;
  for (EdgeId id = 0; id < g.edge_count(); ++id)
    if (g.edge(id).w == 0) zero.push_back(id);
  if (!zero.empty() && is_feasible(inst, zero, k)) {
    SolveResult result = finish(inst, zero, k, {});
    result.witness_size = 0;
    return result;
  }

  // Subdivision graph: original vertices keep their ids, edge e becomes
  // vertex n + e. Weights scaled by (k-1)*den(c) to stay integral.
  const int n = g.vertex_count();
  const int m = g.edge_count();
  Graph sub(n + m);
  for (EdgeId id = 0; id < m; ++id) {
    sub.add_edge(g.edge(id).u, n + id, 1);
    sub.add_edge(n + id, g.edge(id).v, 1);
  }
  const std::int64_t scale = static_cast<std::int64_t>(k - 1) * params.c.den();

  std::vector<Weight> weights_seen;
  for (const Edge& e : g.edges())
    if (!is_inf(e.w)) weights_seen.push_back(e.w);
  Weight limit = std::max<Weight>(1, g.total_finite_weight());
  std::vector<Weight> grid = opt_guess_grid(limit, params.opt_grid_epsilon, weights_seen);

  bool found = false;
  Weight best_weight = 0;
  EdgeSet best_edges;
  VertexSet best_sep;
  Weight best_guess = 0;
  std::vector<Weight> vw(static_cast<std::size_t>(n + m));
  for (Weight guess : grid) {
    for (Vertex v = 0; v < n; ++v)
      vw[static_cast<std::size_t>(v)] = (v == s || v == t) ? kInf : sat_mul(guess, params.c.num());
    for (EdgeId id = 0; id < m; ++id)
      vw[static_cast<std::size_t>(n + id)] = sat_mul(g.edge(id).w, scale);
    VertexCut cut = min_weight_vertex_st_cut(sub, vw, s, t);
    if (is_inf(cut.value)) continue;
    EdgeSet edges;
    VertexSet originals;
    for (Vertex x : cut.separator) {
      if (x < n) originals.push_back(x);
      else edges.push_back(x - n);
    }
    // |S'| * c <= (k - 1)(c + 1), i.e. |S'| <= (k - 1)(1 + 1/c).
    Rational lhs = Rational(static_cast<std::int64_t>(originals.size())) * params.c;
    Rational rhs = Rational(k - 1) * (params.c + Rational(1));
    if (lhs > rhs) continue;
    Weight w = g.weight_of(edges);
    if (found && w >= best_weight) continue;
    found = true;
    best_weight = w;
    best_edges = std::move(edges);
    best_sep = std::move(originals);
    best_guess = guess;
  }
  if (!found) throw KrcError(ErrorCode::NoFeasibleGuess, "no OPT guess produced a qualifying cut");

  const int witness = static_cast<int>(best_sep.size());
  TraceRecord rec;
  rec.separator = best_sep;
  rec.removed = best_edges;
  rec.opt_guess = best_guess;
  std::sort(rec.removed.begin(), rec.removed.end());
  SolveResult result = finish(inst, best_edges, std::max(k, witness + 1), {std::move(rec)});
  result.witness_size = witness;
  return result;
}

}  // namespace krc
