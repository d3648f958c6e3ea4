#include "krc/exact_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "krc/connectivity.hpp"

namespace krc {

namespace {

bool feasible_mask(const Instance& inst, const std::vector<bool>& removed) {
  Subgraph residual = remove_edges(inst.graph, removed);
  for (const DemandPair& p : inst.demands.pairs())
    if (num_disjoint_paths(residual.graph, inst.flavor, p.s, p.t, inst.k) >= inst.k) return false;
  return true;
}

EdgeSet mask_to_edges(const std::vector<bool>& removed) {
  EdgeSet out;
  for (std::size_t i = 0; i < removed.size(); ++i)
    if (removed[i]) out.push_back(static_cast<EdgeId>(i));
  return out;
}

// Depth-first search shared by both branch-and-bound oracles. Each level
// fixes one decision unit; option 0 of every unit removes nothing.
class BranchAndBound {
 public:
  using Options = std::vector<EdgeSet>;  // removal sets per option

  BranchAndBound(const Instance& inst, std::vector<Options> units, std::optional<Weight> cap)
      : inst_(inst), units_(std::move(units)),
        removed_(static_cast<std::size_t>(inst.graph.edge_count()), false) {
    if (cap) {
      bound_ = sat_add(*cap, 1);
      limited_ = true;
    }
  }

  std::optional<EdgeSet> run() {
    dfs(0, 0);
    if (!found_) return std::nullopt;
    return best_;
  }

 private:
  void apply(const EdgeSet& edges, bool value) {
    for (EdgeId id : edges) removed_[static_cast<std::size_t>(id)] = value;
  }

  void dfs(std::size_t level, Weight cost) {
    if ((found_ || limited_) && cost >= bound_) return;
    if (feasible_mask(inst_, removed_)) {
      found_ = true;
      bound_ = cost;
      best_ = mask_to_edges(removed_);
      return;
    }
    if (level == units_.size()) return;
    std::vector<bool> saved = removed_;
    for (std::size_t j = level; j < units_.size(); ++j) apply(units_[j].back(), true);
    bool reachable = feasible_mask(inst_, removed_);
    removed_ = std::move(saved);
    if (!reachable) return;
    for (const EdgeSet& option : units_[level]) {
      Weight extra = inst_.graph.weight_of(option);
      apply(option, true);
      dfs(level + 1, sat_add(cost, extra));
      apply(option, false);
    }
  }

  const Instance& inst_;
  std::vector<Options> units_;
  std::vector<bool> removed_;
  bool found_ = false;
  bool limited_ = false;
  Weight bound_ = kInf;
  EdgeSet best_;
};

CutSolution solve_units(const Instance& inst, std::vector<BranchAndBound::Options> units,
                        std::optional<Weight> cap) {
  EdgeSet all_finite;
  for (EdgeId id = 0; id < inst.graph.edge_count(); ++id)
    if (!is_inf(inst.graph.edge(id).w)) all_finite.push_back(id);
  if (!is_feasible(inst, all_finite, inst.k))
    throw KrcError(ErrorCode::Infeasible, "uncuttable edges keep a pair k-connected");
  auto best = BranchAndBound(inst, std::move(units), cap).run();
  if (!best) throw KrcError(ErrorCode::Infeasible, "no solution within the cost cap");
  return CutSolution::make(inst.graph, *best, inst.k);
}

}  // namespace

CutSolution brute_force_opt(const Instance& inst, std::optional<Weight> cost_cap) {
  inst.validate();
  EdgeSet finite;
  for (EdgeId id = 0; id < inst.graph.edge_count(); ++id)
    if (!is_inf(inst.graph.edge(id).w)) finite.push_back(id);
  if (static_cast<int>(finite.size()) > kBruteForceEdgeCap)
    throw KrcError(ErrorCode::CapExceeded,
                   std::to_string(finite.size()) + " finite edges exceed the brute-force cap");
  const Graph& g = inst.graph;
  std::sort(finite.begin(), finite.end(), [&](EdgeId a, EdgeId b) {
    return g.edge(a).w != g.edge(b).w ? g.edge(a).w > g.edge(b).w : a < b;
  });
  std::vector<BranchAndBound::Options> units;
  for (EdgeId id : finite) units.push_back({EdgeSet{}, EdgeSet{id}});
  return solve_units(inst, std::move(units), cost_cap);
}

CutSolution brute_force_opt_symmetric(const Instance& inst, const std::vector<EdgeSet>& groups) {
  inst.validate();
  const Graph& g = inst.graph;
  std::vector<int> seen(static_cast<std::size_t>(g.edge_count()), 0);
  for (const EdgeSet& group : groups)
    for (EdgeId id : group) {
      if (id < 0 || id >= g.edge_count() || is_inf(g.edge(id).w))
        throw KrcError(ErrorCode::InvalidArgument, "group holds an invalid or uncuttable edge");
      ++seen[static_cast<std::size_t>(id)];
    }
  for (EdgeId id = 0; id < g.edge_count(); ++id)
    if (!is_inf(g.edge(id).w) && seen[static_cast<std::size_t>(id)] != 1)
      throw KrcError(ErrorCode::InvalidArgument, "finite edge " + std::to_string(id) + " not grouped once");

  std::vector<BranchAndBound::Options> units;
  std::int64_t combos = 1;
  for (const EdgeSet& group : groups) {
    if (group.empty()) continue;
    EdgeSet cheap = group;
    std::sort(cheap.begin(), cheap.end(), [&](EdgeId a, EdgeId b) {
      return g.edge(a).w != g.edge(b).w ? g.edge(a).w < g.edge(b).w : a < b;
    });
    const int size = static_cast<int>(cheap.size());
    BranchAndBound::Options options{EdgeSet{}};  // keep everything
    for (int kept = std::min(inst.k - 1, size - 1); kept >= 0; --kept)
      options.emplace_back(cheap.begin(), cheap.begin() + (size - kept));
    combos = std::min<std::int64_t>(combos * static_cast<std::int64_t>(options.size()), 1LL << 40);
    units.push_back(std::move(options));
  }
  if (combos > (1LL << 26))
    throw KrcError(ErrorCode::CapExceeded, "too many group combinations");
  return solve_units(inst, std::move(units), std::nullopt);
}

SparseCut brute_force_sparsest(const Graph& g, const DemandSet& demands, int k,
                               SparsityKind kind) {
  const int n = g.vertex_count();
  if (n > kBruteSparsestVertexCap)
    throw KrcError(ErrorCode::CapExceeded, std::to_string(n) + " vertices exceed the brute-force cap");
  if (k < 1) throw KrcError(ErrorCode::InvalidArgument, "k must be >= 1");
  const bool vertex = kind == SparsityKind::VertexUniform || kind == SparsityKind::VertexNonUniform;
  const bool uniform = kind == SparsityKind::EdgeUniform || kind == SparsityKind::VertexUniform;
  auto counts = demands.terminal_counts(n);
  const std::uint32_t full = (1u << n) - 1;

  bool found = false;
  SparseCut best;
  auto offer = [&](std::uint32_t s, std::uint32_t delta, const EdgeSet& free, Weight residual,
                   std::int64_t den) {
    if (den <= 0) return;
    Rational value = is_inf(residual) ? Rational::infinity() : Rational(residual, den);
    if (found && !(value < best.sparsity)) return;
    found = true;
    best = SparseCut{};
    for (Vertex v = 0; v < n; ++v) {
      if ((s >> v) & 1u) best.side.push_back(v);
      if ((delta >> v) & 1u) best.separator.push_back(v);
    }
    best.free_edges = free;
    std::sort(best.free_edges.begin(), best.free_edges.end());
    best.kind = uniform ? CutKind::Uniform : CutKind::NonUniform;
    best.residual_weight = residual;
    best.denominator = den;
    best.sparsity = value;
  };
  auto d_of = [&](std::uint32_t set) {
    std::int64_t total = 0;
    for (Vertex v = 0; v < n; ++v)
      if ((set >> v) & 1u) total += counts[static_cast<std::size_t>(v)];
    return total;
  };
  auto crossing_pairs = [&](std::uint32_t a, std::uint32_t b) {
    std::int64_t count = 0;
    for (const DemandPair& p : demands.pairs()) {
      bool sa = (a >> p.s) & 1u, ta = (a >> p.t) & 1u, sb = (b >> p.s) & 1u, tb = (b >> p.t) & 1u;
      count += (sa && tb) || (ta && sb);
    }
    return count;
  };

  for (std::uint32_t s = 1; s < full; ++s) {
    if (!vertex) {
      const std::uint32_t rest = full & ~s;
      EdgeSet crossing;
      for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        if (((s >> e.u) & 1u) != ((s >> e.v) & 1u)) crossing.push_back(id);
      }
      std::int64_t den = uniform ? std::min(d_of(s), d_of(rest)) : crossing_pairs(s, rest);
      if (den <= 0) continue;
      const int f = std::min<int>(k - 1, static_cast<int>(crossing.size()));
      // Every subset of exactly f crossing edges, via a selection mask.
      std::vector<char> pick(crossing.size(), 0);
      std::fill(pick.end() - f, pick.end(), 1);
      do {
        Weight residual = 0;
        EdgeSet free;
        for (std::size_t i = 0; i < crossing.size(); ++i) {
          if (pick[i]) free.push_back(crossing[i]);
          else residual = sat_add(residual, g.edge(crossing[i]).w);
        }
        offer(s, 0, free, residual, den);
      } while (std::next_permutation(pick.begin(), pick.end()));
    } else {
      const std::uint32_t others = full & ~s;
      for (std::uint32_t delta = others;; delta = (delta - 1) & others) {
        if (std::popcount(delta) <= k - 1) {
          const std::uint32_t rest = others & ~delta;
          Weight residual = 0;
          for (const Edge& e : g.edges()) {
            bool a = (s >> e.u) & 1u, b = (s >> e.v) & 1u;
            bool ra = (rest >> e.u) & 1u, rb = (rest >> e.v) & 1u;
            if ((a && rb) || (b && ra)) residual = sat_add(residual, e.w);
          }
          std::int64_t den = uniform ? std::min(d_of(s), d_of(rest)) : crossing_pairs(s, rest);
          offer(s, delta, {}, residual, den);
        }
        if (delta == 0) break;
      }
    }
  }
  if (!found) throw KrcError(ErrorCode::NoCandidateCut, "no cut separates any demand");
  return best;
}

std::string_view algorithm_name(Algorithm alg) noexcept {
  switch (alg) {
    case Algorithm::UniformEc: return "uniform-ec";
    case Algorithm::Ec: return "ec";
    case Algorithm::EcPoly: return "ec-poly";
    case Algorithm::Vc: return "vc";
    case Algorithm::TwoRoute: return "two-route";
    case Algorithm::St: return "st";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm alg : {Algorithm::UniformEc, Algorithm::Ec, Algorithm::EcPoly, Algorithm::Vc,
                        Algorithm::TwoRoute, Algorithm::St})
    if (algorithm_name(alg) == name) return alg;
  return std::nullopt;
}

Rational ln_lower_bound(std::int64_t x) {
  if (x < 1) throw KrcError(ErrorCode::InvalidArgument, "ln bound needs x >= 1");
  constexpr std::int64_t kScale = std::int64_t{1} << 40;
  auto num = static_cast<std::int64_t>(std::floor(std::log(static_cast<double>(x)) * static_cast<double>(kScale))) - 1;
  return Rational(std::max<std::int64_t>(0, num), kScale);
}

std::optional<Rational> ratio_bound(Algorithm alg, const Instance& inst, const SolverParams& params) {
  const std::int64_t r = inst.demands.size();
  const Rational ln = ln_lower_bound(1 + r);
  switch (alg) {
    case Algorithm::UniformEc:
      if (params.delta == Rational(0)) return Rational(8 * inst.k) * ln;
      return Rational(8) * (Rational(1) + Rational(1) / params.delta) * ln;
    case Algorithm::Ec: {
      std::int64_t buckets = r >= 1 ? std::bit_width(static_cast<std::uint64_t>(r)) : 1;
      return Rational(32 * buckets) * ln;
    }
    case Algorithm::TwoRoute:
      return Rational(16) * ln;
    case Algorithm::St:
      return (Rational(1) + params.c) * (Rational(1) + params.opt_grid_epsilon);
    case Algorithm::EcPoly:
    case Algorithm::Vc:
      return std::nullopt;
  }
  return std::nullopt;
}

RatioReport ratio_report(const Instance& inst, std::string_view instance_id, Algorithm alg,
                         const SolverParams& params, const SolveResult& result,
                         std::optional<Weight> known_opt) {
  RatioReport report;
  report.instance_id = std::string(instance_id);
  report.algorithm = std::string(algorithm_name(alg));
  report.solution_weight = result.solution.total_weight;
  report.opt_weight = known_opt ? *known_opt : brute_force_opt(inst).total_weight;
  if (report.opt_weight > 0)
    report.ratio = Rational(report.solution_weight, report.opt_weight);
  else
    report.ratio = report.solution_weight == 0 ? Rational(1) : Rational::infinity();
  report.bound = ratio_bound(alg, inst, params);
  report.within_bound = !report.bound || report.ratio <= *report.bound;
  return report;
}

}  // namespace krc
