#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fcl/cli/sampler.hpp"
#include "fcl/curvature/identities.hpp"
#include "json.hpp"

namespace fcl {

enum class Subcommand { report, classify, verify, geodesic };

std::string_view to_string(Subcommand s);

struct RunConfig {
  Subcommand subcommand = Subcommand::report;
  std::string metric_path;
  int samples = 20;
  std::uint64_t seed = 0;
  Domain domain;
  int order = kDefaultJetOrder;
  double tol = 1e-6;
  std::map<std::string, double, std::less<>> tol_overrides;  // per predicate
  Suite suite = Suite::universal;
  bool json = false;
  std::vector<double> x0, y0;
  double tmax = 1.0;
  int steps = 1024;
  bool rank4 = false;   // print rank-4 tensors in text output
  bool timing = true;   // include the timing block
  int threads = 0;
};

enum ExitCode { kExitOk = 0, kExitFailedChecks = 1, kExitUsage = 2, kExitNumerical = 3 };

// Exit code for an error escaping a run: input problems are usage errors,
// everything else is numerical.
int exit_code_for(ErrorCode code);

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json report;
};

// Runs one subcommand. Never throws for engine errors: they are recorded in
// report["errors"] and mapped onto the exit code.
RunResult run(const RunConfig& config);

// Text rendering of a report produced by run().
std::string render_text(const nlohmann::json& report, bool rank4);

// Full command line entry point: parses argv, runs, and writes the report to
// `out` (diagnostics to `err`). Returns the process exit code. The default
// jet order comes from `env_order` (FCL_JET_ORDER) when given.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
             const char* env_order = nullptr);

}  // namespace fcl
