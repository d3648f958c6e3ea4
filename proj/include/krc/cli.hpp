#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "krc/exact_oracle.hpp"
#include "krc/io.hpp"
#include "krc/solvers.hpp"

namespace krc {

enum ExitCode : int {
  kExitOk = 0,
  kExitInfeasible = 1,
  kExitUsage = 2,
  kExitLimit = 3,  // a size or enumeration cap was hit
};

struct RunConfig {
  std::string command;  // solve | verify | oracle | reduce | gen
  std::string mode;     // oracle, reduce and gen variant
  std::string input;
  std::string solution;
  std::string output;
  std::string algorithm = "uniform-ec";
  OracleMode oracle = OracleMode::Exact;
  std::optional<int> k;
  Rational delta{0};
  Rational c{1};
  std::optional<int> ell;
  std::uint64_t seed = 1;
  std::string report;
  bool trace = false;
  bool ratio = false;
  std::string kind = "edge-nonuniform";
  std::optional<Weight> guess;
  Rational alpha{1, 2};
  int kappa = 2;
  std::optional<int> m_prime;
  RandomParams random;
  PlantedParams planted;
  GridParams grid;
};

/// Parses argv-style arguments (without the program name) into a config.
/// Returns the exit code on a usage error or help request.
std::optional<int> parse_args(const std::vector<std::string>& args, RunConfig& config,
                              std::ostream& out, std::ostream& err);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args followed by run.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::json trace_json(const std::vector<TraceRecord>& trace);

nlohmann::json solve_report(const std::string& instance_id, const Instance& inst,
                            std::string_view algorithm, const SolveResult& result,
                            const std::optional<RatioReport>& ratio, bool include_trace);

/// Pretty-printed with sorted keys and a trailing newline.
std::string render_report(const nlohmann::json& report);

/// Writes to `path`, or to `out` when the path is empty.
void write_report(const nlohmann::json& report, const std::string& path, std::ostream& out);

}  // namespace krc
