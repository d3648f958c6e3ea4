#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "krc/graph.hpp"
#include "krc/reductions.hpp"

namespace krc {

/// Text format, one record per line, '#' starts a comment:
///   p krc <ec|vc> <n> <m> <r> <k>
///   e <u> <v> <weight|inf>     (m lines, edge ids in line order)
///   d <s> <t>                  (r lines)
Instance parse_instance(std::string_view text);
std::string render_instance(const Instance& inst);

///   p bip <left> <right> <edges>
///   e <left> <right>
Bipartite parse_bipartite(std::string_view text);
std::string render_bipartite(const Bipartite& bip);

///   p hyp <vertices> <lambda> <hyperedges>
///   h <v1> ... <v_lambda>
Hypergraph parse_hypergraph(std::string_view text);
std::string render_hypergraph(const Hypergraph& h);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

struct RandomParams {
  int n = 8;
  int m = 12;
  int r = 2;
  int k = 2;
  Flavor flavor = Flavor::EdgeConnectivity;
  Weight w_min = 1;
  Weight w_max = 5;
};

/// Multigraph with m uniformly random non-loop edges and r random pairs.
Instance gen_random(const RandomParams& p, std::uint64_t seed);

struct PlantedParams {
  int side = 4;        // vertices per side
  int k = 2;
  int r = 2;
  int cheap_edges = 3; // cuttable edges across the two sides
  Weight bridge_weight = 1;
};

struct PlantedInstance {
  Instance instance;
  Weight planted_opt = 0;
};

/// Two uncuttable cliques joined by k-1 uncuttable edges and by cheap
/// cuttable edges; the optimum removes every cheap edge.
PlantedInstance gen_planted(const PlantedParams& p, std::uint64_t seed);

struct GridParams {
  int rows = 3;
  int cols = 3;
  int r = 2;
  int k = 2;
  Weight w_min = 1;
  Weight w_max = 1;
};

/// Torus with wrap-around edges; each pair joins a cell to its antipode.
Instance gen_grid(const GridParams& p, std::uint64_t seed);

}  // namespace krc
