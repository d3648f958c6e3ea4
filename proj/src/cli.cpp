#include "krc/cli.hpp"

#include <CLI11.hpp>

#include <map>
#include <sstream>

#include "krc/connectivity.hpp"
#include "krc/reductions.hpp"

namespace krc {

namespace {

using nlohmann::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Infeasible:
    case ErrorCode::NoFeasibleGuess:
      return kExitInfeasible;
    case ErrorCode::ExactCapExceeded:
    case ErrorCode::FreeSetBlowup:
    case ErrorCode::SeparatorBlowup:
    case ErrorCode::SizeOverflow:
    case ErrorCode::CapExceeded:
      return kExitLimit;
    default:
      return kExitUsage;
  }
}

Instance load_instance(const RunConfig& cfg) {
  if (cfg.input.empty()) throw KrcError(ErrorCode::InvalidArgument, "--input is required");
  Instance inst = parse_instance(read_text_file(cfg.input));
  if (cfg.k) inst.k = *cfg.k;
  inst.validate();
  return inst;
}

SolverParams params_of(const RunConfig& cfg) {
  SolverParams params;
  params.oracle.mode = cfg.oracle;
  params.oracle.seed = cfg.seed;
  params.delta = cfg.delta;
  params.c = cfg.c;
  return params;
}

SolveResult dispatch(Algorithm alg, const Instance& inst, const SolverParams& params) {
  switch (alg) {
    case Algorithm::UniformEc: return solve_uniform_ec(inst, params);
    case Algorithm::Ec: return solve_ec(inst, params);
    case Algorithm::EcPoly: return solve_ec_polytime(inst, params);
    case Algorithm::Vc: return solve_vc(inst, params);
    case Algorithm::TwoRoute: return solve_two_route(inst, params);
    case Algorithm::St: return solve_st(inst, params);
  }
  throw KrcError(ErrorCode::InvalidArgument, "unknown algorithm");
}

// Either a bare id array or an object carrying "removed_edges".
EdgeSet load_solution(const std::string& path, std::optional<int>* guarantee) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw KrcError(ErrorCode::ParseError, path + ": " + e.what());
  }
  const json* ids = &doc;
  if (doc.is_object()) {
    if (!doc.contains("removed_edges"))
      throw KrcError(ErrorCode::ParseError, path + ": missing removed_edges");
    ids = &doc["removed_edges"];
    if (doc.contains("guarantee_k") && doc["guarantee_k"].is_number_integer())
      *guarantee = doc["guarantee_k"].get<int>();
  }
  if (!ids->is_array()) throw KrcError(ErrorCode::ParseError, path + ": expected an id array");
  EdgeSet out;
  for (const json& id : *ids) {
    if (!id.is_number_integer()) throw KrcError(ErrorCode::ParseError, path + ": non-integer id");
    out.push_back(id.get<EdgeId>());
  }
  return out;
}

void emit_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text_file(path, text);
}

json cut_json(const SparseCut& cut) {
  return json{{"side", cut.side},
              {"free_edges", cut.free_edges},
              {"separator", cut.separator},
              {"residual_weight", is_inf(cut.residual_weight)
                                      ? json("inf")
                                      : json(cut.residual_weight)},
              {"denominator", cut.denominator},
              {"sparsity", cut.sparsity.to_string()}};
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  auto alg = parse_algorithm(cfg.algorithm);
  if (!alg) throw KrcError(ErrorCode::InvalidArgument, "unknown algorithm " + cfg.algorithm);
  Instance inst = load_instance(cfg);
  SolverParams params = params_of(cfg);
  SolveResult result = dispatch(*alg, inst, params);
  std::optional<RatioReport> ratio;
  if (cfg.ratio) ratio = ratio_report(inst, cfg.input, *alg, params, result);
  json report = solve_report(cfg.input, inst, cfg.algorithm, result, ratio, cfg.trace);
  write_report(report, cfg.report, out);
  return report["feasible"].get<bool>() ? kExitOk : kExitInfeasible;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  Instance inst = load_instance(cfg);
  if (cfg.solution.empty()) throw KrcError(ErrorCode::InvalidArgument, "--solution is required");
  std::optional<int> declared;
  EdgeSet ids = load_solution(cfg.solution, &declared);
  const int threshold = cfg.k ? *cfg.k : declared.value_or(inst.k);
  CutSolution sol = CutSolution::make(inst.graph, ids, threshold);
  const bool ok = is_feasible(inst, sol, threshold);
  json report{{"instance", cfg.input},
              {"k", threshold},
              {"removed_edges", sol.removed_edges},
              {"weight", sol.total_weight},
              {"feasible", ok}};
  write_report(report, cfg.report, out);
  return ok ? kExitOk : kExitInfeasible;
}

SparsityKind sparsity_kind(const std::string& name) {
  static const std::map<std::string, SparsityKind> kinds{
      {"edge-uniform", SparsityKind::EdgeUniform},
      {"edge-nonuniform", SparsityKind::EdgeNonUniform},
      {"vertex-uniform", SparsityKind::VertexUniform},
      {"vertex-nonuniform", SparsityKind::VertexNonUniform}};
  auto it = kinds.find(name);
  if (it == kinds.end()) throw KrcError(ErrorCode::InvalidArgument, "unknown kind " + name);
  return it->second;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  Instance inst = load_instance(cfg);
  json report{{"instance", cfg.input}, {"k", inst.k}, {"oracle", cfg.mode}};
  if (cfg.mode == "brute") {
    CutSolution sol = brute_force_opt(inst);
    report["opt"] = sol.total_weight;
    report["removed_edges"] = sol.removed_edges;
    report["weight"] = sol.total_weight;
    report["feasible"] = is_feasible(inst, sol, inst.k);
    if (!cfg.report.empty()) out << "OPT " << sol.total_weight << '\n';
  } else if (cfg.mode == "sparsest") {
    SparsityKind kind = sparsity_kind(cfg.kind);
    OracleConfig oc = params_of(cfg).oracle;
    const bool vertex = kind == SparsityKind::VertexUniform || kind == SparsityKind::VertexNonUniform;
    const CutKind ck = (kind == SparsityKind::EdgeUniform || kind == SparsityKind::VertexUniform)
                           ? CutKind::Uniform
                           : CutKind::NonUniform;
    SparseCut cut = vertex ? vertex_k_route_sparsest_cut(inst.graph, inst.demands, inst.k, ck, oc)
                           : k_route_sparsest_cut(inst.graph, inst.demands, inst.k, ck, oc);
    report["kind"] = cfg.kind;
    report["cut"] = cut_json(cut);
  } else if (cfg.mode == "multicut") {
    const int ell = cfg.ell.value_or(inst.demands.size());
    EdgeSet cut = l_multicut(inst.graph, inst.demands, ell, params_of(cfg).oracle);
    report["ell"] = ell;
    report["removed_edges"] = cut;
    report["weight"] = inst.graph.weight_of(cut);
  } else if (cfg.mode == "gomory-hu") {
    GomoryHuTree tree = gomory_hu(inst.graph);
    json edges = json::array();
    for (const auto& e : tree.edges)
      edges.push_back({{"u", e.u},
                       {"v", e.v},
                       {"capacity", is_inf(e.capacity) ? json("inf") : json(e.capacity)},
                       {"rank", e.rank}});
    report["tree"] = edges;
  } else {
    throw KrcError(ErrorCode::InvalidArgument, "unknown oracle " + cfg.mode);
  }
  write_report(report, cfg.report, out);
  return kExitOk;
}

json map_json(const ReductionMap& map) {
  return json{{"vertex_forward", map.vertex_forward},
              {"edge_inverse", map.edge_inverse},
              {"always_include", map.always_include}};
}

int cmd_reduce(const RunConfig& cfg, std::ostream& out) {
  if (cfg.input.empty()) throw KrcError(ErrorCode::InvalidArgument, "--input is required");
  json report{{"reduction", cfg.mode}, {"input", cfg.input}};
  std::string text;
  if (cfg.mode == "ec2vc" || cfg.mode == "uniformize") {
    Instance inst = load_instance(cfg);
    Reduction red;
    if (cfg.mode == "ec2vc") {
      red = ec_to_vc(inst);
    } else {
      Weight guess = cfg.guess ? *cfg.guess : brute_force_opt(inst).total_weight;
      report["opt_guess"] = guess;
      red = vc_weighted_to_uniform(inst, guess);
    }
    report["map"] = map_json(red.map);
    report["k"] = red.instance.k;
    report["vertices"] = red.instance.graph.vertex_count();
    report["edges"] = red.instance.graph.edge_count();
    text = render_instance(red.instance);
  } else if (cfg.mode == "ssve") {
    Bipartite bip = parse_bipartite(read_text_file(cfg.input));
    SsveImage img = ssve_to_st_vc_krc(bip, cfg.alpha);
    report["alpha"] = cfg.alpha.to_string();
    report["block"] = img.block;
    report["k"] = img.instance.k;
    report["vertices"] = img.instance.graph.vertex_count();
    report["edges"] = img.instance.graph.edge_count();
    text = render_instance(img.instance);
  } else if (cfg.mode == "tensor") {
    Bipartite sq = tensor_square(parse_bipartite(read_text_file(cfg.input)));
    report["left"] = sq.left_count;
    report["right"] = sq.right_count;
    report["edges"] = sq.edges.size();
    text = render_bipartite(sq);
  } else if (cfg.mode == "dks") {
    DksImage img = dks_incidence_to_ssve(parse_hypergraph(read_text_file(cfg.input)), cfg.kappa);
    report["kappa"] = img.kappa;
    report["left"] = img.bipartite.left_count;
    report["right"] = img.bipartite.right_count;
    if (cfg.m_prime) report["alpha"] = img.alpha_for(*cfg.m_prime).to_string();
    text = render_bipartite(img.bipartite);
  } else {
    throw KrcError(ErrorCode::InvalidArgument, "unknown reduction " + cfg.mode);
  }
  if (!cfg.output.empty()) report["output"] = cfg.output;
  // With neither file given, stdout carries the image only.
  emit_text(cfg.output, text, out);
  if (!cfg.report.empty() || !cfg.output.empty()) write_report(report, cfg.report, out);
  return kExitOk;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  json report{{"generator", cfg.mode}, {"seed", cfg.seed}};
  Instance inst;
  if (cfg.mode == "random") {
    inst = gen_random(cfg.random, cfg.seed);
  } else if (cfg.mode == "planted") {
    PlantedInstance planted = gen_planted(cfg.planted, cfg.seed);
    inst = std::move(planted.instance);
    report["planted_opt"] = planted.planted_opt;
  } else if (cfg.mode == "grid") {
    inst = gen_grid(cfg.grid, cfg.seed);
  } else {
    throw KrcError(ErrorCode::InvalidArgument, "unknown generator " + cfg.mode);
  }
  report["vertices"] = inst.graph.vertex_count();
  report["edges"] = inst.graph.edge_count();
  report["demands"] = inst.demands.size();
  report["k"] = inst.k;
  if (!cfg.output.empty()) report["output"] = cfg.output;
  emit_text(cfg.output, render_instance(inst), out);
  if (!cfg.report.empty() || !cfg.output.empty()) write_report(report, cfg.report, out);
  return kExitOk;
}

// CLI11 validator-free conversion for exact rationals.
void add_rational(CLI::App* app, const std::string& name, Rational& target,
                  const std::string& help) {
  app->add_option_function<std::string>(
      name, [&target](const std::string& text) { target = Rational::parse(text); }, help);
}

}  // namespace

json trace_json(const std::vector<TraceRecord>& trace) {
  json out = json::array();
  for (const TraceRecord& rec : trace) {
    json item{{"side", rec.side},
              {"separator", rec.separator},
              {"free_edges", rec.free_edges},
              {"sparsity", rec.sparsity.to_string()},
              {"removed", rec.removed},
              {"dropped", rec.dropped}};
    if (rec.opt_guess) item["opt_guess"] = *rec.opt_guess;
    out.push_back(std::move(item));
  }
  return out;
}

json solve_report(const std::string& instance_id, const Instance& inst,
                  std::string_view algorithm, const SolveResult& result,
                  const std::optional<RatioReport>& ratio, bool include_trace) {
  json report{{"instance", instance_id},
              {"algorithm", std::string(algorithm)},
              {"k", inst.k},
              {"guarantee_k", result.guarantee},
              {"removed_edges", result.solution.removed_edges},
              {"weight", result.solution.total_weight},
              {"feasible", is_feasible(inst, result.solution, result.guarantee)}};
  if (result.witness_size) report["witness_size"] = *result.witness_size;
  if (ratio) {
    report["opt"] = ratio->opt_weight;
    report["ratio"] = ratio->ratio.to_string();
    report["bound"] = ratio->bound ? json(ratio->bound->to_string()) : json(nullptr);
    report["within_bound"] = ratio->within_bound;
  }
  if (include_trace) report["trace"] = trace_json(result.trace);
  return report;
}

std::string render_report(const json& report) { return report.dump(2) + "\n"; }

void write_report(const json& report, const std::string& path, std::ostream& out) {
  emit_text(path, render_report(report), out);
}

std::optional<int> parse_args(const std::vector<std::string>& args, RunConfig& cfg,
                              std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-route cut solvers, oracles and reductions"};
  app.require_subcommand(1);

  std::string oracle = "exact";
  app.add_option("--seed", cfg.seed, "Seed for every randomized choice");
  app.add_option("--report", cfg.report, "JSON report path (default: stdout)");
  app.add_option("--oracle", oracle, "Cut oracle backend")
      ->check(CLI::IsMember({"exact", "sweep"}));
  add_rational(&app, "--delta", cfg.delta, "Connectivity slack of uniform-ec");
  add_rational(&app, "--c", cfg.c, "Trade-off parameter of st");
  app.add_option_function<int>("--ell", [&cfg](int v) { cfg.ell = v; },
                               "Pairs to separate (oracle multicut)");

  auto with_input = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--input", cfg.input, "Input file")->required();
    sub->add_option_function<int>("--k", [&cfg](int v) { cfg.k = v; }, "Override k");
  };

  CLI::App* solve = app.add_subcommand("solve", "Run a solver");
  with_input(solve);
  solve->add_option("--alg", cfg.algorithm, "Algorithm")
      ->check(CLI::IsMember({"uniform-ec", "ec", "ec-poly", "vc", "two-route", "st"}));
  solve->add_flag("--trace", cfg.trace, "Include the per-step trace");
  solve->add_flag("--ratio", cfg.ratio, "Compare against brute-force OPT");

  CLI::App* verify = app.add_subcommand("verify", "Check a solution");
  with_input(verify);
  verify->add_option("--solution", cfg.solution, "Solution JSON")->required();

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Run an exact or heuristic oracle");
  with_input(oracle_cmd);
  oracle_cmd->add_option("mode", cfg.mode, "brute | sparsest | multicut | gomory-hu")
      ->required()
      ->check(CLI::IsMember({"brute", "sparsest", "multicut", "gomory-hu"}));
  oracle_cmd->add_option("--kind", cfg.kind, "Sparsity kind for 'sparsest'")
      ->check(CLI::IsMember({"edge-uniform", "edge-nonuniform", "vertex-uniform",
                             "vertex-nonuniform"}));

  CLI::App* reduce = app.add_subcommand("reduce", "Build a reduction image");
  with_input(reduce);
  reduce->add_option("mode", cfg.mode, "ec2vc | uniformize | ssve | tensor | dks")
      ->required()
      ->check(CLI::IsMember({"ec2vc", "uniformize", "ssve", "tensor", "dks"}));
  reduce->add_option("--output", cfg.output, "Image file (default: stdout)");
  reduce->add_option_function<Weight>("--guess", [&cfg](Weight g) { cfg.guess = g; },
                                      "OPT guess for uniformize (default: brute force)");
  add_rational(reduce, "--alpha", cfg.alpha, "Left fraction for ssve");
  reduce->add_option("--kappa", cfg.kappa, "Subgraph size for dks");
  reduce->add_option_function<int>("--m-prime", [&cfg](int v) { cfg.m_prime = v; },
                                   "Report alpha(m') for dks");

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance");
  gen->fallthrough();
  gen->add_option("mode", cfg.mode, "random | planted | grid")
      ->required()
      ->check(CLI::IsMember({"random", "planted", "grid"}));
  gen->add_option("--output", cfg.output, "Instance file (default: stdout)");
  std::string flavor = "ec";
  int k = 2;
  int r = 2;
  Weight w_min = 1;
  Weight w_max = 5;
  gen->add_option("--n", cfg.random.n, "Vertices (random)");
  gen->add_option("--m", cfg.random.m, "Edges (random)");
  gen->add_option("--r", r, "Demand pairs");
  gen->add_option("--k", k, "Connectivity threshold");
  gen->add_option("--flavor", flavor, "ec | vc (random)")->check(CLI::IsMember({"ec", "vc"}));
  gen->add_option("--wmin", w_min, "Minimum edge weight");
  gen->add_option("--wmax", w_max, "Maximum edge weight");
  gen->add_option("--side", cfg.planted.side, "Vertices per side (planted)");
  gen->add_option("--cheap", cfg.planted.cheap_edges, "Cuttable crossing edges (planted)");
  gen->add_option("--bridge", cfg.planted.bridge_weight, "Crossing edge weight (planted)");
  gen->add_option("--rows", cfg.grid.rows, "Grid rows");
  gen->add_option("--cols", cfg.grid.cols, "Grid columns");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const KrcError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  cfg.oracle = oracle == "sweep" ? OracleMode::Sweep : OracleMode::Exact;
  for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
  cfg.random.k = cfg.planted.k = cfg.grid.k = k;
  cfg.random.r = cfg.planted.r = cfg.grid.r = r;
  cfg.random.flavor = flavor == "vc" ? Flavor::VertexConnectivity : Flavor::EdgeConnectivity;
  cfg.random.w_min = cfg.grid.w_min = w_min;
  cfg.random.w_max = cfg.grid.w_max = w_max;
  if (!gen->count("--wmax")) cfg.grid.w_max = std::max<Weight>(cfg.grid.w_min, 1);
  return std::nullopt;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "solve") return cmd_solve(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "oracle") return cmd_oracle(cfg, out);
    if (cfg.command == "reduce") return cmd_reduce(cfg, out);
    if (cfg.command == "gen") return cmd_gen(cfg, out);
    err << "error: unknown command '" << cfg.command << "'\n";
    return kExitUsage;
  } catch (const KrcError& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (auto code = parse_args(args, cfg, out, err)) return *code;
  return run(cfg, out, err);
}

}  // namespace krc
