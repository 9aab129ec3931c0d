#pragma once
// Batch harness behind the command-line tool: convergence studies,
// long-time invariant runs, and profile snapshots, with CSV output.
//
// CSV files start with a `# schema=1` comment line; floats are written
// with 17 significant digits so identical configs produce byte-identical
// bodies. Exit codes: 0 success, 2 usage/config error, 3 solver
// divergence, 4 non-convergence under --strict.

#include <optional>
#include <string>
#include <vector>

#include "rosenau/diagnostics.hpp"
#include "rosenau/integrator.hpp"

namespace rosenau {

struct RunConfig {
  std::string preset;
  Scheme scheme = Scheme::momentum;
  int stages = 2;
  int n_modes = 256;
  std::vector<double> dts;  // converge: the whole list; evolve/profile: one
  double t_end = 1.0;
  int record_every = 1;     // steps between invariant rows
  SolverOptions solver;
  std::string output_dir = ".";
  std::vector<double> times;  // profile snapshot times
  int jobs = 1;               // parallel dt cases in converge
};

// Loads a JSON document mirroring RunConfig field-for-field (keys:
// preset, scheme, stages, n, dt, t_end, record_every, tol, max_iters,
// strict, warm_start, out, times, jobs). Unknown keys are an error.
// Values already present in `config` are overwritten by the file.
void apply_config_json(RunConfig& config, const std::string& path);

// ---- command cores (throw on failure; used by the commands and tests)

struct ConvergeCase {
  ConvergenceRow row;
  double wall_seconds = 0.0;
  int unconverged_steps = 0;
  int max_step_iters = 0;
  double mean_step_iters = 0.0;
};
struct ConvergeResult {
  std::vector<ConvergeCase> cases;           // sorted by decreasing dt
  std::optional<double> mean_order2;
  std::optional<double> mean_orderinf;
};
ConvergeResult run_converge(const RunConfig& config);

struct EvolveRow {
  InvariantRecord record;
  StepReport report;  // zero-initialized for the t = 0 row
};
struct EvolveResultCli {
  std::vector<EvolveRow> rows;
  std::vector<double> final_u;
  std::optional<double> final_e2, final_einf;  // vs exact, when available
  int unconverged_steps = 0;
};
EvolveResultCli run_evolve(const RunConfig& config);

// ---- commands: write CSVs under config.output_dir, print a summary,
//      return a process exit code.

int cmd_converge(const RunConfig& config);
int cmd_evolve(const RunConfig& config);
int cmd_profile(const RunConfig& config);

}  // namespace rosenau
