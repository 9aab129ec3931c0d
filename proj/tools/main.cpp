// Command-line front end: converge / evolve / profile.
//
// Options may come from a JSON manifest (--config) and from flags; a flag
// given on the command line always wins over the manifest.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rosenau/cli.hpp"
#include "rosenau/errors.hpp"
#include "rosenau/problems.hpp"

namespace {

struct Flags {
  std::optional<std::string> preset;
  std::optional<std::string> scheme;
  std::optional<int> stages;
  std::optional<int> n;
  std::vector<double> dt;
  std::optional<double> t_end;
  std::optional<int> record_every;
  std::optional<double> tol;
  std::optional<int> max_iters;
  bool strict = false;
  bool warm_start = false;
  std::optional<std::string> out;
  std::vector<double> times;
  std::optional<int> jobs;
  std::optional<std::string> config_path;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--preset", f.preset,
                  "problem preset (see `--list-presets`)");
  cmd->add_option("--scheme", f.scheme, "mp (momentum) or ep (energy)")
      ->check(CLI::IsMember({"mp", "ep"}));
  cmd->add_option("--stages", f.stages, "Gauss stages s (order 2s)");
  cmd->add_option("--n", f.n, "Fourier nodes (even)");
  cmd->add_option("--dt", f.dt, "time step; repeat for converge studies");
  cmd->add_option("--t-end", f.t_end, "final time");
  cmd->add_option("--record-every", f.record_every,
                  "steps between invariant rows");
  cmd->add_option("--tol", f.tol, "fixed-point stopping tolerance");
  cmd->add_option("--max-iters", f.max_iters, "fixed-point sweep cap");
  cmd->add_flag("--strict", f.strict,
                "fail (exit 4) when a step does not converge");
  cmd->add_flag("--warm-start", f.warm_start,
                "start iterations from the previous step's stage velocities");
  cmd->add_option("--out", f.out, "output directory for CSV files");
  cmd->add_option("--jobs", f.jobs, "parallel dt cases (converge)");
  cmd->add_option("--config", f.config_path, "JSON manifest with defaults");
}

rosenau::RunConfig merge(const CLI::App* cmd, const Flags& f) {
  rosenau::RunConfig cfg;
  if (f.config_path) rosenau::apply_config_json(cfg, *f.config_path);
  if (f.preset) cfg.preset = *f.preset;
  if (f.scheme) {
    cfg.scheme = (*f.scheme == "ep") ? rosenau::Scheme::energy
                                     : rosenau::Scheme::momentum;
  }
  if (f.stages) cfg.stages = *f.stages;
  if (f.n) cfg.n_modes = *f.n;
  if (!f.dt.empty()) cfg.dts = f.dt;
  if (f.t_end) cfg.t_end = *f.t_end;
  if (f.record_every) cfg.record_every = *f.record_every;
  if (f.tol) cfg.solver.tol = *f.tol;
  if (f.max_iters) cfg.solver.max_iters = *f.max_iters;
  if (cmd->count("--strict") > 0) {
    cfg.solver.on_nonconvergence =
        f.strict ? rosenau::NonconvergencePolicy::error
                 : rosenau::NonconvergencePolicy::warn_and_proceed;
  }
  if (cmd->count("--warm-start") > 0) cfg.solver.warm_start = f.warm_start;
  if (f.out) cfg.output_dir = *f.out;
  if (!f.times.empty()) cfg.times = f.times;
  if (f.jobs) cfg.jobs = *f.jobs;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Structure-preserving Fourier pseudo-spectral solvers for "
      "generalized Rosenau-type equations"};
  app.require_subcommand(0, 1);

  bool list_presets = false;
  app.add_flag("--list-presets", list_presets, "print preset names and exit");

  Flags conv_flags, evol_flags, prof_flags;
  CLI::App* conv = app.add_subcommand(
      "converge", "temporal convergence study against an exact solution");
  add_common(conv, conv_flags);
  CLI::App* evol = app.add_subcommand(
      "evolve", "long run with invariant tracking and a final profile");
  add_common(evol, evol_flags);
  CLI::App* prof =
      app.add_subcommand("profile", "solution snapshots at given times");
  add_common(prof, prof_flags);
  prof->add_option("--time", prof_flags.times,
                   "snapshot time; may be repeated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  if (list_presets) {
    for (const auto& name : rosenau::preset_names()) {
      std::cout << name << "\n";
    }
    return 0;
  }

  try {
    if (conv->parsed()) return rosenau::cmd_converge(merge(conv, conv_flags));
    if (evol->parsed()) return rosenau::cmd_evolve(merge(evol, evol_flags));
    if (prof->parsed()) return rosenau::cmd_profile(merge(prof, prof_flags));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << app.help();
  return 2;
}
