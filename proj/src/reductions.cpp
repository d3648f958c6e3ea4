#include "krc/reductions.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <string>

#include "krc/detail/max_flow.hpp"

namespace krc {

namespace {

constexpr std::int64_t kImageEdgeLimit = std::int64_t{1} << 24;
constexpr std::int64_t kImageVertexLimit = std::int64_t{1} << 24;

void sort_unique(EdgeSet& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

std::int64_t cube(std::int64_t n) { return sat_mul(sat_mul(n, n), n); }

}  // namespace

void Bipartite::validate() const {
  if (left_count < 0 || right_count < 0)
    throw KrcError(ErrorCode::InvalidArgument, "negative side size");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= left_count || v < 0 || v >= right_count)
      throw KrcError(ErrorCode::InvalidVertex,
                     "bipartite edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (!seen.insert({u, v}).second)
      throw KrcError(ErrorCode::InvalidArgument,
                     "duplicate bipartite edge (" + std::to_string(u) + "," +
                         std::to_string(v) + ")");
  }
}

std::vector<std::vector<int>> Bipartite::left_adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(left_count));
  for (auto [u, v] : edges) adj[static_cast<std::size_t>(u)].push_back(v);
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::vector<int> neighborhood(const Bipartite& bip, const std::vector<int>& left_set) {
  std::vector<bool> in_set(static_cast<std::size_t>(bip.left_count), false);
  for (int u : left_set) {
    if (u < 0 || u >= bip.left_count)
      throw KrcError(ErrorCode::InvalidVertex, "left vertex " + std::to_string(u));
    in_set[static_cast<std::size_t>(u)] = true;
  }
  std::vector<int> out;
  for (auto [u, v] : bip.edges)
    if (in_set[static_cast<std::size_t>(u)]) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void Hypergraph::validate() const {
  if (vertex_count < 0 || uniformity < 1)
    throw KrcError(ErrorCode::InvalidArgument, "bad hypergraph dimensions");
  for (const VertexSet& e : hyperedges) {
    if (static_cast<int>(e.size()) != uniformity)
      throw KrcError(ErrorCode::InvalidArgument,
                     "hyperedge of size " + std::to_string(e.size()));
    VertexSet sorted = e;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw KrcError(ErrorCode::InvalidArgument, "repeated vertex in hyperedge");
    for (Vertex v : e)
      if (v < 0 || v >= vertex_count)
        throw KrcError(ErrorCode::InvalidVertex, "hyperedge vertex " + std::to_string(v));
  }
}

EdgeSet ReductionMap::pull_back(const EdgeSet& image_edges) const {
  EdgeSet out = always_include;
  for (EdgeId e : image_edges) {
    if (e < 0 || e >= static_cast<EdgeId>(edge_inverse.size()))
      throw KrcError(ErrorCode::InvalidArgument, "image edge " + std::to_string(e));
    EdgeId src = edge_inverse[static_cast<std::size_t>(e)];
    if (src >= 0) out.push_back(src);
  }
  sort_unique(out);
  return out;
}

EdgeSet ReductionMap::push_forward(const EdgeSet& source_edges) const {
  EdgeSet out;
  for (EdgeId e : source_edges) {
    if (e < 0 || e >= static_cast<EdgeId>(edge_forward.size()))
      throw KrcError(ErrorCode::InvalidArgument, "source edge " + std::to_string(e));
    const EdgeSet& images = edge_forward[static_cast<std::size_t>(e)];
    out.insert(out.end(), images.begin(), images.end());
  }
  sort_unique(out);
  return out;
}

Reduction ec_to_vc(const Instance& inst) {
  inst.validate();
  if (inst.flavor != Flavor::EdgeConnectivity)
    throw KrcError(ErrorCode::InvalidArgument, "ec_to_vc needs an edge-connectivity instance");
  const Graph& g = inst.graph;
  const int n = g.vertex_count();
  const int m = g.edge_count();

  // incident[u] lists edge ids in increasing order, so slot 0 is the lowest.
  std::vector<std::vector<EdgeId>> incident(static_cast<std::size_t>(n));
  for (EdgeId e = 0; e < m; ++e) {
    incident[static_cast<std::size_t>(g.edge(e).u)].push_back(e);
    incident[static_cast<std::size_t>(g.edge(e).v)].push_back(e);
  }
  std::vector<Vertex> first(static_cast<std::size_t>(n) + 1, 0);
  for (int u = 0; u < n; ++u)
    first[static_cast<std::size_t>(u) + 1] =
        first[static_cast<std::size_t>(u)] +
        static_cast<Vertex>(incident[static_cast<std::size_t>(u)].size());

  // End of edge e at vertex u.
  auto end_of = [&](Vertex u, EdgeId e) {
    const auto& list = incident[static_cast<std::size_t>(u)];
    auto pos = std::lower_bound(list.begin(), list.end(), e) - list.begin();
    return first[static_cast<std::size_t>(u)] + static_cast<Vertex>(pos);
  };

  Reduction red;
  Graph image(first[static_cast<std::size_t>(n)]);
  red.map.edge_forward.resize(static_cast<std::size_t>(m));
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& edge = g.edge(e);
    image.add_edge(end_of(edge.u, e), end_of(edge.v, e), edge.w);
    red.map.edge_forward[static_cast<std::size_t>(e)] = {e};
    red.map.edge_inverse.push_back(e);
  }
  for (int u = 0; u < n; ++u) {
    Vertex lo = first[static_cast<std::size_t>(u)];
    Vertex hi = first[static_cast<std::size_t>(u) + 1];
    for (Vertex a = lo; a < hi; ++a)
      for (Vertex b = a + 1; b < hi; ++b) {
        image.add_edge(a, b, kInf);
        red.map.edge_inverse.push_back(-1);
      }
  }

  red.map.vertex_forward.assign(static_cast<std::size_t>(n), -1);
  for (int u = 0; u < n; ++u)
    if (!incident[static_cast<std::size_t>(u)].empty())
      red.map.vertex_forward[static_cast<std::size_t>(u)] = first[static_cast<std::size_t>(u)];

  DemandSet demands;
  for (const DemandPair& p : inst.demands.pairs()) {
    for (Vertex x : {p.s, p.t})
      if (incident[static_cast<std::size_t>(x)].empty())
        throw KrcError(ErrorCode::IsolatedTerminal, "terminal " + std::to_string(x));
    demands.add(red.map.vertex_forward[static_cast<std::size_t>(p.s)],
                red.map.vertex_forward[static_cast<std::size_t>(p.t)]);
  }

  red.instance = Instance{std::move(image), std::move(demands), inst.k,
                          Flavor::VertexConnectivity};
  return red;
}

Reduction vc_weighted_to_uniform(const Instance& inst, Weight opt_guess) {
  inst.validate();
  if (inst.flavor != Flavor::VertexConnectivity)
    throw KrcError(ErrorCode::InvalidArgument,
                   "uniformization needs a vertex-connectivity instance");
  if (opt_guess < 0 || opt_guess == kInf)
    throw KrcError(ErrorCode::InvalidArgument, "bad OPT guess");
  if (opt_guess == 0 && !inst.demands.empty())
    throw KrcError(ErrorCode::GuessZero, "OPT guess 0 with demands present");

  const Graph& g = inst.graph;
  const std::int64_t n = g.vertex_count();
  const std::int64_t scale = cube(n);
  const Weight clip = sat_mul(opt_guess, n);

  // Count first so an oversized image is refused before allocation.
  std::int64_t total = 0;
  for (const Edge& e : g.edges()) {
    if (is_inf(e.w)) {
      ++total;
    } else if (sat_mul(e.w, scale) >= opt_guess) {
      total = sat_add(total, sat_mul(std::min(e.w, clip), scale));
    }
    if (total > kImageEdgeLimit)
      throw KrcError(ErrorCode::SizeOverflow, "uniform image needs too many parallel edges");
  }

  Reduction red;
  Graph image(g.vertex_count());
  red.map.vertex_forward.resize(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    red.map.vertex_forward[static_cast<std::size_t>(v)] = v;
  red.map.edge_forward.resize(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    auto& copies = red.map.edge_forward[static_cast<std::size_t>(id)];
    if (is_inf(e.w)) {
      copies.push_back(image.add_edge(e.u, e.v, kInf));
      red.map.edge_inverse.push_back(id);
      continue;
    }
    if (sat_mul(e.w, scale) < opt_guess) {
      red.map.always_include.push_back(id);
      continue;
    }
    const std::int64_t count = std::min(e.w, clip) * scale;
    for (std::int64_t c = 0; c < count; ++c) {
      copies.push_back(image.add_edge(e.u, e.v, 1));
      red.map.edge_inverse.push_back(id);
    }
  }

  red.instance = Instance{std::move(image), inst.demands, inst.k, Flavor::VertexConnectivity};
  return red;
}

SsveImage ssve_to_st_vc_krc(const Bipartite& bip, const Rational& alpha) {
  bip.validate();
  if (alpha <= Rational(0) || alpha >= Rational(1))
    throw KrcError(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  const int m = bip.left_count;
  const int n = bip.right_count;
  const Rational threshold = alpha * Rational(m);
  if (threshold.den() != 1)
    throw KrcError(ErrorCode::NonIntegralThreshold,
                   "alpha * m = " + threshold.to_string() + " is not an integer");

  const std::int64_t block = 2 * std::int64_t{m} * n + 1;
  const std::int64_t vertices = 2 + std::int64_t{m} + std::int64_t{n} * block;
  const std::int64_t edges = m + static_cast<std::int64_t>(bip.edges.size()) * block +
                             n * (block * (block - 1) / 2 + block);
  if (vertices > kImageVertexLimit || edges > kImageEdgeLimit)
    throw KrcError(ErrorCode::SizeOverflow, "SSVE image too large");

  SsveImage img;
  img.block = static_cast<int>(block);
  Graph g(static_cast<int>(vertices));
  for (int u = 0; u < m; ++u) g.add_edge(img.s, img.left_vertex(u), kInf);
  for (auto [u, v] : bip.edges)
    for (int j = 0; j < img.block; ++j)
      g.add_edge(img.left_vertex(u), img.clique_vertex(m, v, j), kInf);
  for (int v = 0; v < n; ++v)
    for (int a = 0; a < img.block; ++a)
      for (int b = a + 1; b < img.block; ++b)
        g.add_edge(img.clique_vertex(m, v, a), img.clique_vertex(m, v, b), kInf);
  img.t_edge_groups.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < img.block; ++j)
      img.t_edge_groups[static_cast<std::size_t>(v)].push_back(
          g.add_edge(img.clique_vertex(m, v, j), img.t, 1));

  DemandSet demands;
  demands.add(img.s, img.t);
  const int k = m - static_cast<int>(threshold.num()) + 1;
  img.instance = Instance{std::move(g), std::move(demands), k, Flavor::VertexConnectivity};
  return img;
}

EdgeSet canonicalize_ssve_solution(const Bipartite& bip, const SsveImage& image,
                                   const EdgeSet& solution) {
  const int m = bip.left_count;
  const int n = bip.right_count;
  std::vector<bool> removed(static_cast<std::size_t>(image.instance.graph.edge_count()), false);
  for (EdgeId e : solution) removed.at(static_cast<std::size_t>(e)) = true;

  // Vertex cuts of the image are |U \ S| + sum over Gamma(S) of the kept
  // t-edges, so a minimum cut of this network picks the best S.
  using Flow = detail::MaxFlow<std::int64_t>;
  const int source = 0;
  const int sink = 1;
  Flow flow(2 + m + n);
  for (int u = 0; u < m; ++u) flow.add_arc(source, 2 + u, 1);
  for (auto [u, v] : bip.edges) flow.add_arc(2 + u, 2 + m + v, Flow::kInfCap);
  for (int v = 0; v < n; ++v) {
    std::int64_t kept = 0;
    for (EdgeId e : image.t_edge_groups[static_cast<std::size_t>(v)])
      if (!removed[static_cast<std::size_t>(e)]) ++kept;
    flow.add_arc(2 + m + v, sink, kept);
  }
  flow.solve(source, sink);
  std::vector<bool> side = flow.source_side(source);

  std::vector<int> chosen;
  for (int u = 0; u < m; ++u)
    if (side[static_cast<std::size_t>(2 + u)]) chosen.push_back(u);
  EdgeSet out;
  for (int v : neighborhood(bip, chosen)) {
    const EdgeSet& group = image.t_edge_groups[static_cast<std::size_t>(v)];
    out.insert(out.end(), group.begin(), group.end());
  }
  sort_unique(out);
  return out;
}

Bipartite tensor_square(const Bipartite& bip) {
  bip.validate();
  const std::int64_t m = bip.left_count;
  const std::int64_t n = bip.right_count;
  const std::int64_t e = static_cast<std::int64_t>(bip.edges.size());
  if (m * m > kTensorSizeLimit || n * n > kTensorSizeLimit || e * e > kTensorSizeLimit)
    throw KrcError(ErrorCode::SizeOverflow, "tensor square exceeds size limit");
  Bipartite out;
  out.left_count = static_cast<int>(m * m);
  out.right_count = static_cast<int>(n * n);
  out.edges.reserve(static_cast<std::size_t>(e * e));
  for (auto [u1, v1] : bip.edges)
    for (auto [u2, v2] : bip.edges)
      out.edges.emplace_back(static_cast<int>(u1 * m + u2), static_cast<int>(v1 * n + v2));
  return out;
}

Rational DksImage::alpha_for(int m_prime) const {
  if (bipartite.left_count == 0)
    throw KrcError(ErrorCode::InvalidArgument, "no hyperedges");
  if (m_prime < 0)
    throw KrcError(ErrorCode::InvalidArgument, "negative m'");
  return Rational(m_prime, bipartite.left_count);
}

DksImage dks_incidence_to_ssve(const Hypergraph& h, int kappa) {
  h.validate();
  if (kappa < 1) throw KrcError(ErrorCode::InvalidArgument, "kappa must be positive");
  DksImage img;
  img.kappa = kappa;
  img.bipartite.left_count = static_cast<int>(h.hyperedges.size());
  img.bipartite.right_count = h.vertex_count;
  for (int i = 0; i < img.bipartite.left_count; ++i) {
    VertexSet members = h.hyperedges[static_cast<std::size_t>(i)];
    std::sort(members.begin(), members.end());
    for (Vertex v : members) img.bipartite.edges.emplace_back(i, v);
  }
  return img;
}

std::vector<int> sample_kappa_subset(const std::vector<int>& pool, int kappa,
                                     std::uint64_t seed) {
  if (kappa < 0 || kappa > static_cast<int>(pool.size()))
    throw KrcError(ErrorCode::InvalidArgument,
                   "cannot sample " + std::to_string(kappa) + " of " +
                       std::to_string(pool.size()));
  std::vector<int> items = pool;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < kappa; ++i) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i),
                                                    items.size() - 1);
    std::swap(items[static_cast<std::size_t>(i)], items[pick(rng)]);
  }
  items.resize(static_cast<std::size_t>(kappa));
  std::sort(items.begin(), items.end());
  return items;
}

bool is_expanding(const Bipartite& bip, const Rational& alpha, const Rational& beta) {
  bip.validate();
  const int m = bip.left_count;
  const int n = bip.right_count;
  if (m > kExpansionLeftCap)
    throw KrcError(ErrorCode::ExactCapExceeded,
                   "expansion check limited to " + std::to_string(kExpansionLeftCap) +
                       " left vertices");
  if (alpha.is_infinite()) return true;
  // Gamma is monotone, so the smallest admissible sets are the binding ones.
  const std::int64_t size = std::max<std::int64_t>(0, (alpha * Rational(m)).ceil());
  if (size > m) return true;

  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  std::vector<std::vector<std::uint64_t>> nbr(static_cast<std::size_t>(m),
                                              std::vector<std::uint64_t>(words, 0));
  for (auto [u, v] : bip.edges)
    nbr[static_cast<std::size_t>(u)][static_cast<std::size_t>(v) / 64] |=
        std::uint64_t{1} << (v % 64);

  // |Gamma(S)| > beta * n, compared exactly.
  auto large_enough = [&](std::int64_t gamma) {
    if (beta.is_infinite()) return false;
    return static_cast<__int128>(gamma) * beta.den() >
           static_cast<__int128>(beta.num()) * n;
  };

  std::vector<std::uint64_t> acc(words);
  auto gamma_of = [&](std::uint32_t mask) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const auto& row = nbr[static_cast<std::size_t>(std::countr_zero(rest))];
      for (std::size_t w = 0; w < words; ++w) acc[w] |= row[w];
    }
    std::int64_t count = 0;
    for (std::uint64_t w : acc) count += std::popcount(w);
    return count;
  };

  if (size == 0) return large_enough(0);
  const std::uint32_t limit = std::uint32_t{1} << m;
  std::uint32_t mask = (std::uint32_t{1} << size) - 1;
  while (mask < limit) {
    if (!large_enough(gamma_of(mask))) return false;
    // Next mask with the same popcount.
    const std::uint32_t low = mask & -mask;
    const std::uint32_t ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
  }
  return true;
}

}  // namespace krc
