#pragma once

#include <initializer_list>
#include <tuple>

#include "krc/graph.hpp"

namespace build {

using WeightedEdge = std::tuple<krc::Vertex, krc::Vertex, krc::Weight>;

inline krc::Graph graph(int n, std::initializer_list<WeightedEdge> edges) {
  krc::Graph g(n);
  for (auto [u, v, w] : edges) g.add_edge(u, v, w);
  return g;
}

inline krc::Graph complete(int n, krc::Weight w = 1) {
  krc::Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v, w);
  return g;
}

inline krc::Instance instance(krc::Graph g, krc::DemandSet d, int k,
                              krc::Flavor flavor = krc::Flavor::EdgeConnectivity) {
  return krc::Instance{std::move(g), std::move(d), k, flavor};
}

}  // namespace build
