#include "rosenau/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <json.hpp>

#include "rosenau/errors.hpp"
#include "rosenau/problems.hpp"

namespace rosenau {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt17(*v) : std::string();
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // LF endings everywhere
  if (!out) throw ConfigError("cannot open output file " + path.string());
  out << "# schema=1\n";
  return out;
}

ProblemPreset preset_for(const RunConfig& config) {
  if (config.preset.empty()) throw ConfigError("no preset given");
  return preset(config.preset);
}

std::vector<double> sample_initial(const ProblemPreset& pre,
                                   const SpectralGrid& grid) {
  std::vector<double> u(grid.n);
  for (int j = 0; j < grid.n; ++j) u[j] = pre.initial(grid.nodes[j]);
  return u;
}

State initial_state(const RunConfig& config, const ProblemPreset& pre,
                    const SpectralGrid& grid) {
  std::vector<double> u = sample_initial(pre, grid);
  if (config.scheme == Scheme::energy) return qav_init(u, pre.params.p);
  return u;
}

const std::vector<double>& state_u(const State& s) {
  if (std::holds_alternative<QavState>(s)) return std::get<QavState>(s).u;
  return std::get<std::vector<double>>(s);
}

int count_unconverged(const std::vector<StepReport>& reports) {
  int c = 0;
  for (const auto& r : reports) c += r.converged ? 0 : 1;
  return c;
}

void check_dt_positive(double dt) {
  if (!(dt > 0.0)) {
    throw ConfigError("dt must be > 0, got " + std::to_string(dt));
  }
}

double single_dt(const RunConfig& config) {
  if (config.dts.size() != 1) {
    throw ConfigError("this command expects exactly one --dt value (got " +
                      std::to_string(config.dts.size()) + ")");
  }
  check_dt_positive(config.dts[0]);
  return config.dts[0];
}

void warn_unconverged(int n) {
  if (n > 0) {
    std::cerr << "warning: " << n
              << " step(s) hit the iteration cap before reaching tol\n";
  }
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const DivergenceError*>(&e)) return 3;
  if (dynamic_cast<const ConvergenceError*>(&e)) return 4;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return 2;
  return 1;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace

void apply_config_json(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold an object");
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "preset") {
        config.preset = value.get<std::string>();
      } else if (key == "scheme") {
        const auto s = value.get<std::string>();
        if (s == "mp") {
          config.scheme = Scheme::momentum;
        } else if (s == "ep") {
          config.scheme = Scheme::energy;
        } else {
          throw ConfigError("scheme must be \"mp\" or \"ep\", got \"" + s +
                            "\"");
        }
      } else if (key == "stages") {
        config.stages = value.get<int>();
      } else if (key == "n") {
        config.n_modes = value.get<int>();
      } else if (key == "dt") {
        config.dts.clear();
        if (value.is_array()) {
          for (const auto& v : value) config.dts.push_back(v.get<double>());
        } else {
          config.dts.push_back(value.get<double>());
        }
      } else if (key == "t_end") {
        config.t_end = value.get<double>();
      } else if (key == "record_every") {
        config.record_every = value.get<int>();
      } else if (key == "tol") {
        config.solver.tol = value.get<double>();
      } else if (key == "max_iters") {
        config.solver.max_iters = value.get<int>();
      } else if (key == "strict") {
        config.solver.on_nonconvergence =
            value.get<bool>() ? NonconvergencePolicy::error
                              : NonconvergencePolicy::warn_and_proceed;
      } else if (key == "warm_start") {
        config.solver.warm_start = value.get<bool>();
      } else if (key == "out") {
        config.output_dir = value.get<std::string>();
      } else if (key == "times") {
        config.times.clear();
        if (value.is_array()) {
          for (const auto& v : value) config.times.push_back(v.get<double>());
        } else {
          config.times.push_back(value.get<double>());
        }
      } else if (key == "jobs") {
        config.jobs = value.get<int>();
      } else {
        throw ConfigError("unknown config key \"" + key + "\"");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config key \"" + key + "\": " + e.what());
    }
  }
}

// ------------------------------------------------------------- converge

ConvergeResult run_converge(const RunConfig& config) {
  const ProblemPreset pre = preset_for(config);
  if (!pre.exact) {
    throw ConfigError("preset '" + pre.name +
                      "' has no exact solution; converge needs one");
  }
  if (config.dts.empty()) throw ConfigError("converge needs at least one dt");
  for (double dt : config.dts) check_dt_positive(dt);
  std::vector<double> dts = config.dts;
  std::sort(dts.begin(), dts.end(), std::greater<>());
  for (std::size_t i = 1; i < dts.size(); ++i) {
    if (dts[i] == dts[i - 1]) {
      throw ConfigError("duplicate dt value " + fmt17(dts[i]));
    }
  }

  const SpectralGrid grid = build_grid(config.n_modes, pre.x_left, pre.x_right);
  const ButcherTableau tab = gauss_legendre(config.stages);

  ConvergeResult result;
  result.cases.resize(dts.size());

  const auto run_case = [&](std::size_t idx) {
    const auto t0 = std::chrono::steady_clock::now();
    EvolveResult ev =
        evolve(grid, pre.params, tab, config.scheme,
               initial_state(config, pre, grid), dts[idx], config.t_end,
               config.solver);
    const auto [e2, einf] =
        error_norms(grid, state_u(ev.final_state), pre.exact, config.t_end);
    const auto t1 = std::chrono::steady_clock::now();
    ConvergeCase& c = result.cases[idx];
    c.row = {dts[idx], e2, einf, std::nullopt, std::nullopt};
    c.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    c.unconverged_steps = count_unconverged(ev.reports);
    long long iter_sum = 0;
    for (const auto& rep : ev.reports) {
      c.max_step_iters = std::max(c.max_step_iters, rep.iters);
      iter_sum += rep.iters;
    }
    if (!ev.reports.empty()) {
      c.mean_step_iters =
          static_cast<double>(iter_sum) / static_cast<double>(ev.reports.size());
    }
  };

  const int jobs =
      std::max(1, std::min<int>(config.jobs, static_cast<int>(dts.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < dts.size(); ++i) run_case(i);
  } else {
    std::vector<std::exception_ptr> errors(dts.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= dts.size()) return;
          try {
            run_case(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<ConvergenceRow> rows;
  rows.reserve(result.cases.size());
  for (const auto& c : result.cases) rows.push_back(c.row);
  rows = estimate_order(std::move(rows));
  double sum2 = 0.0, suminf = 0.0;
  int n2 = 0, ninf = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    result.cases[i].row = rows[i];
    if (rows[i].order2) {
      sum2 += *rows[i].order2;
      ++n2;
    }
    if (rows[i].orderinf) {
      suminf += *rows[i].orderinf;
      ++ninf;
    }
  }
  if (n2 > 0) result.mean_order2 = sum2 / n2;
  if (ninf > 0) result.mean_orderinf = suminf / ninf;
  return result;
}

int cmd_converge(const RunConfig& config) {
  return guarded([&]() {
    const ConvergeResult result = run_converge(config);
    std::filesystem::create_directories(config.output_dir);
    auto out = open_csv(std::filesystem::path(config.output_dir) /
                        "convergence.csv");
    out << "dt,e2,einf,order2,orderinf\n";
    int unconverged = 0;
    for (const auto& c : result.cases) {
      out << fmt17(c.row.dt) << ',' << fmt17(c.row.e2) << ','
          << fmt17(c.row.einf) << ',' << fmt_opt(c.row.order2) << ','
          << fmt_opt(c.row.orderinf) << '\n';
      std::cout << "dt=" << fmt17(c.row.dt) << " e2=" << fmt17(c.row.e2)
                << " einf=" << fmt17(c.row.einf)
                << " iters_mean=" << c.mean_step_iters
                << " iters_max=" << c.max_step_iters
                << " wall_seconds=" << c.wall_seconds << "\n";
      unconverged += c.unconverged_steps;
    }
    warn_unconverged(unconverged);
    std::cout << "mean order: l2=";
    if (result.mean_order2) {
      std::cout << *result.mean_order2;
    } else {
      std::cout << "n/a";
    }
    std::cout << " linf=";
    if (result.mean_orderinf) {
      std::cout << *result.mean_orderinf;
    } else {
      std::cout << "n/a";
    }
    std::cout << "\n";
    return 0;
  });
}

// --------------------------------------------------------------- evolve

EvolveResultCli run_evolve(const RunConfig& config) {
  const ProblemPreset pre = preset_for(config);
  const double dt = single_dt(config);
  const SpectralGrid grid = build_grid(config.n_modes, pre.x_left, pre.x_right);
  const ButcherTableau tab = gauss_legendre(config.stages);

  EvolveResultCli result;
  const EvolveObserver observer = [&](double, const State&,
                                      const InvariantRecord& rec,
                                      const StepReport& rep) {
    result.rows.push_back({rec, rep});
  };
  EvolveResult ev = evolve(grid, pre.params, tab, config.scheme,
                           initial_state(config, pre, grid), dt, config.t_end,
                           config.solver, config.record_every, observer);
  result.final_u = state_u(ev.final_state);
  result.unconverged_steps = count_unconverged(ev.reports);
  if (pre.exact) {
    const auto [e2, einf] =
        error_norms(grid, result.final_u, pre.exact, config.t_end);
    result.final_e2 = e2;
    result.final_einf = einf;
  }
  return result;
}

namespace {

const char* kInvariantHeader =
    "t,mass,momentum,hamiltonian,quad_energy,qav_defect,iters,residual\n";

void write_profile_csv(const std::filesystem::path& path,
                       const SpectralGrid& grid,
                       std::span<const double> u) {
  auto out = open_csv(path);
  out << "x,u\n";
  for (int j = 0; j < grid.n; ++j) {
    out << fmt17(grid.nodes[j]) << ',' << fmt17(u[j]) << '\n';
  }
}

}  // namespace

int cmd_evolve(const RunConfig& config) {
  return guarded([&]() {
    const ProblemPreset pre = preset_for(config);
    std::filesystem::create_directories(config.output_dir);
    const std::filesystem::path dir(config.output_dir);

    if (config.t_end == 0.0) {
      auto inv = open_csv(dir / "invariants.csv");
      inv << kInvariantHeader;
      auto prof = open_csv(dir / "profile.csv");
      prof << "x,u\n";
      return 0;
    }

    const EvolveResultCli result = run_evolve(config);
    auto inv = open_csv(dir / "invariants.csv");
    inv << kInvariantHeader;
    for (const auto& row : result.rows) {
      inv << fmt17(row.record.time) << ',' << fmt17(row.record.mass) << ','
          << fmt17(row.record.momentum) << ',' << fmt17(row.record.hamiltonian)
          << ',' << fmt_opt(row.record.quad_energy) << ','
          << fmt_opt(row.record.qav_defect) << ',' << row.report.iters << ','
          << fmt17(row.report.final_residual) << '\n';
    }
    const SpectralGrid grid =
        build_grid(config.n_modes, pre.x_left, pre.x_right);
    write_profile_csv(dir / "profile.csv", grid, result.final_u);

    warn_unconverged(result.unconverged_steps);
    const auto& first = result.rows.front().record;
    const auto& last = result.rows.back().record;
    std::cout << "mass drift " << std::abs(last.mass - first.mass)
              << ", momentum drift " << std::abs(last.momentum - first.momentum)
              << ", hamiltonian drift "
              << std::abs(last.hamiltonian - first.hamiltonian) << "\n";
    if (result.final_e2) {
      std::cout << "final error vs exact: e2=" << fmt17(*result.final_e2)
                << " einf=" << fmt17(*result.final_einf) << "\n";
    }
    return 0;
  });
}

// -------------------------------------------------------------- profile

int cmd_profile(const RunConfig& config) {
  return guarded([&]() {
    const ProblemPreset pre = preset_for(config);
    const double dt = single_dt(config);
    if (config.times.empty()) {
      throw ConfigError("profile needs at least one --time");
    }
    const SpectralGrid grid =
        build_grid(config.n_modes, pre.x_left, pre.x_right);
    const ButcherTableau tab = gauss_legendre(config.stages);

    // snap times to whole steps, then deduplicate
    std::vector<long long> steps;
    for (double t : config.times) {
      if (t < 0.0) throw ConfigError("profile times must be >= 0");
      const long long k = std::llround(t / dt);
      if (std::abs(k * dt - t) > 1e-12 * std::max(1.0, std::abs(t))) {
        std::cerr << "note: requested t=" << fmt17(t) << " snapped to t="
                  << fmt17(k * dt) << " (offset " << fmt17(k * dt - t)
                  << ")\n";
      }
      steps.push_back(k);
    }
    std::sort(steps.begin(), steps.end());
    const auto dup = std::unique(steps.begin(), steps.end());
    if (dup != steps.end()) {
      std::cerr << "warning: duplicate snapshot times dropped\n";
      steps.erase(dup, steps.end());
    }

    std::filesystem::create_directories(config.output_dir);
    const std::filesystem::path dir(config.output_dir);
    const auto snapshot = [&](long long step, const State& state) {
      char label[32];
      std::snprintf(label, sizeof label, "%g", step * dt);
      write_profile_csv(dir / ("profile_t" + std::string(label) + ".csv"),
                        grid, state_u(state));
      std::cout << "wrote profile at t=" << label << "\n";
    };

    State state = initial_state(config, pre, grid);
    std::size_t next = 0;
    if (steps[0] == 0) {
      snapshot(0, state);
      ++next;
    }
    if (next < steps.size()) {
      // one pass over [0, max time]; snapshot as each target step lands
      int unconverged = 0;
      if (config.scheme == Scheme::momentum) {
        MomentumIntegrator integ(grid, pre.params, tab, config.solver);
        auto& u = std::get<std::vector<double>>(state);
        for (long long k = 1; k <= steps.back(); ++k) {
          unconverged += integ.step(u, dt).converged ? 0 : 1;
          if (k == steps[next]) {
            snapshot(k, state);
            ++next;
          }
        }
      } else {
        EnergyIntegrator integ(grid, pre.params, tab, config.solver);
        auto& qs = std::get<QavState>(state);
        for (long long k = 1; k <= steps.back(); ++k) {
          unconverged += integ.step(qs, dt).converged ? 0 : 1;
          if (k == steps[next]) {
            snapshot(k, state);
            ++next;
          }
        }
      }
      warn_unconverged(unconverged);
    }
    return 0;
  });
}

}  // namespace rosenau
