#include "rosenau/integrator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "rosenau/errors.hpp"

namespace rosenau {

namespace detail {

// Cached inverses of the per-Fourier-mode s x s stage matrices. The
// matrix at mode k is diag-dominant and changes only with dt, so the
// inverse is computed once per step size and reused across sweeps.
struct ModeSolver {
  int n = 0, s = 0;
  std::vector<Complex> inv;  // n * s * s, mode-major

  template <typename EntryFn>
  void build(int n_, int s_, EntryFn&& entry) {
    n = n_;
    s = s_;
    inv.resize(static_cast<std::size_t>(n) * s * s);
    Eigen::MatrixXcd m(s, s);
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) m(i, j) = entry(k, i, j);
      }
      const Eigen::MatrixXcd mi = m.inverse();
      Complex* dst = &inv[static_cast<std::size_t>(k) * s * s];
      for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) dst[i * s + j] = mi(i, j);
      }
    }
  }

  // x_i(k) <- sum_j inv(k)_ij rhs_j(k) across all modes; rhs and x are
  // stage-major spectra.
  void apply(const std::vector<std::vector<Complex>>& rhs,
             std::vector<std::vector<Complex>>& x) const {
    for (int k = 0; k < n; ++k) {
      const Complex* mk = &inv[static_cast<std::size_t>(k) * s * s];
      for (int i = 0; i < s; ++i) {
        Complex acc{0.0, 0.0};
        for (int j = 0; j < s; ++j) acc += mk[i * s + j] * rhs[j][k];
        x[i][k] = acc;
      }
    }
  }
};

}  // namespace detail

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

double helmholtz_symbol(const SpectralGrid& grid, const EquationParams& p,
                        int k) {
  const double t = grid.even_symbol[k].imag();
  const double t2 = t * t;
  return 1.0 + p.delta * t2 + p.alpha * t2 * t2;
}

void check_dt(double dt) {
  if (dt == 0.0 || !std::isfinite(dt)) {
    throw ConfigError("step size dt must be nonzero and finite");
  }
}

// max_j |a_j - b_j|, throwing on NaN/Inf.
double increment_norm(const std::vector<double>& a,
                      const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = std::abs(a[j] - b[j]);
    if (!std::isfinite(d)) {
      throw DivergenceError("NaN/Inf in stage velocities; iteration diverged");
    }
    if (d > m) m = d;
  }
  return m;
}

StepReport finish_report(int iters, double residual, bool converged,
                         const SolverOptions& opts) {
  if (!converged && opts.on_nonconvergence == NonconvergencePolicy::error) {
    throw ConvergenceError(
        "fixed-point iteration did not reach tol=" + std::to_string(opts.tol) +
            " within " + std::to_string(opts.max_iters) + " sweeps (residual " +
            std::to_string(residual) + ")",
        iters, residual);
  }
  return {iters, residual, converged};
}

void validate_solver_options(const SolverOptions& opts) {
  if (!(opts.tol > 0.0)) throw ConfigError("solver tol must be > 0");
  if (opts.max_iters < 1) throw ConfigError("solver max_iters must be >= 1");
}

}  // namespace

// ---------------------------------------------------------------- momentum

MomentumIntegrator::MomentumIntegrator(SpectralGrid grid,
                                       EquationParams params,
                                       ButcherTableau tableau,
                                       SolverOptions opts)
    : grid_(std::move(grid)),
      params_(params),
      tableau_(std::move(tableau)),
      opts_(opts),
      fft_(grid_.n),
      dt_cached_(std::numeric_limits<double>::quiet_NaN()),
      modes_(std::make_unique<detail::ModeSolver>()) {
  validate(params_);
  validate_solver_options(opts_);
  const int n = grid_.n, s = tableau_.s;
  k_.assign(s, std::vector<double>(n));
  k_new_.assign(s, std::vector<double>(n));
  u_stage_.assign(s, std::vector<double>(n));
  f_hat_.assign(s, std::vector<Complex>(n));
  k_hat_.assign(s, std::vector<Complex>(n));
  u_hat_.resize(n);
  lin_hat_.resize(n);
  z_hat_.resize(n);
  theta_.resize(n);
  d1_.resize(n);
  pw_.resize(n);
  nl_.resize(n);
  for (int k = 0; k < n; ++k) {
    const Complex lam = grid_.odd_symbol[k];
    theta_[k] = params_.kappa * lam + params_.b_disp * lam * lam * lam;
  }
}

MomentumIntegrator::~MomentumIntegrator() = default;
MomentumIntegrator::MomentumIntegrator(MomentumIntegrator&&) noexcept =
    default;

void MomentumIntegrator::prepare(double dt) {
  if (dt == dt_cached_) return;
  const int s = tableau_.s;
  modes_->build(grid_.n, s, [&](int k, int i, int j) {
    const Complex diag = (i == j) ? Complex(helmholtz_symbol(grid_, params_, k))
                                  : Complex(0.0);
    return diag + dt * tableau_.aij(i, j) * theta_[k];
  });
  dt_cached_ = dt;
  have_stages_ = false;
}

StepReport MomentumIntegrator::step(std::vector<double>& u, double dt) {
  check_dt(dt);
  const int n = grid_.n, s = tableau_.s;
  if (u.size() != static_cast<std::size_t>(n)) {
    throw DimensionError("step: state length " + std::to_string(u.size()) +
                         " vs grid " + std::to_string(n));
  }
  prepare(dt);

  // Fourier image of kappa D1 u^n + b D3 u^n, fixed over the iteration
  fft_.forward(u, u_hat_);
  for (int k = 0; k < n; ++k) lin_hat_[k] = theta_[k] * u_hat_[k];

  if (!(opts_.warm_start && have_stages_)) {
    for (int i = 0; i < s; ++i) k_[i].assign(u.begin(), u.end());
  }

  const double cnl = params_.p * params_.beta / (params_.p + 1);
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iters = 0;
  while (iters < opts_.max_iters) {
    ++iters;
    for (int i = 0; i < s; ++i) {
      auto& us = u_stage_[i];
      for (int j = 0; j < n; ++j) {
        double acc = u[j];
        for (int l = 0; l < s; ++l) acc += dt * tableau_.aij(i, l) * k_[l][j];
        us[j] = acc;
      }
    }
    for (int i = 0; i < s; ++i) {
      const auto& us = u_stage_[i];
      fft_.forward(us, z_hat_);
      for (int k = 0; k < n; ++k) z_hat_[k] *= grid_.odd_symbol[k];
      fft_.inverse(z_hat_, d1_);
      for (int j = 0; j < n; ++j) {
        const double up1 = ipow(us[j], params_.p - 1);
        nl_[j] = up1 * d1_[j];
        pw_[j] = up1 * us[j];
      }
      fft_.forward(nl_, f_hat_[i]);
      fft_.forward(pw_, z_hat_);
      for (int k = 0; k < n; ++k) {
        f_hat_[i][k] =
            -(lin_hat_[k] +
              cnl * (f_hat_[i][k] + grid_.odd_symbol[k] * z_hat_[k]));
      }
    }
    modes_->apply(f_hat_, k_hat_);
    double res = 0.0;
    for (int i = 0; i < s; ++i) {
      fft_.inverse(k_hat_[i], k_new_[i]);
      res = std::max(res, increment_norm(k_new_[i], k_[i]));
    }
    k_.swap(k_new_);
    residual = res;
    if (res < opts_.tol) {
      converged = true;
      break;
    }
  }
  have_stages_ = true;
  // throws under the strict policy before u is touched
  const StepReport report = finish_report(iters, residual, converged, opts_);

  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < s; ++i) acc += tableau_.b[i] * k_[i][j];
    u[j] += dt * acc;
  }
  return report;
}

// ------------------------------------------------------------------ energy

EnergyIntegrator::EnergyIntegrator(SpectralGrid grid, EquationParams params,
                                   ButcherTableau tableau, SolverOptions opts)
    : grid_(std::move(grid)),
      params_(params),
      tableau_(std::move(tableau)),
      opts_(opts),
      fft_(grid_.n),
      dt_cached_(std::numeric_limits<double>::quiet_NaN()),
      modes_(std::make_unique<detail::ModeSolver>()) {
  validate(params_);
  validate_solver_options(opts_);
  if (params_.p != 2 && params_.p != 3 && params_.p != 5) {
    throw UnsupportedError(
        "energy-preserving stepping needs p in {2, 3, 5}; got p=" +
        std::to_string(params_.p));
  }
  const int n = grid_.n, s = tableau_.s;
  k_.assign(s, std::vector<double>(n));
  k_new_.assign(s, std::vector<double>(n));
  u_stage_.assign(s, std::vector<double>(n));
  l_.assign(s, std::vector<double>(n));
  q_stage_.assign(s, std::vector<double>(n));
  if (params_.p == 5) {
    m_.assign(s, std::vector<double>(n));
    q2_stage_.assign(s, std::vector<double>(n));
  }
  f_hat_.assign(s, std::vector<Complex>(n));
  k_hat_.assign(s, std::vector<Complex>(n));
  u_hat_.resize(n);
  g_lin_hat_.resize(n);
  nl_.resize(n);
  j_sym_.resize(n);
  for (int k = 0; k < n; ++k) {
    j_sym_[k] = -grid_.odd_symbol[k] / helmholtz_symbol(grid_, params_, k);
  }
}

EnergyIntegrator::~EnergyIntegrator() = default;
EnergyIntegrator::EnergyIntegrator(EnergyIntegrator&&) noexcept = default;

void EnergyIntegrator::prepare(double dt) {
  if (dt == dt_cached_) return;
  const int s = tableau_.s;
  modes_->build(grid_.n, s, [&](int k, int i, int j) {
    const Complex lt = grid_.even_symbol[k];
    const Complex coeff =
        j_sym_[k] * (params_.kappa + params_.b_disp * (lt * lt).real());
    const Complex diag = (i == j) ? Complex(1.0) : Complex(0.0);
    return diag - dt * tableau_.aij(i, j) * coeff;
  });
  dt_cached_ = dt;
  have_stages_ = false;
}

StepReport EnergyIntegrator::step(QavState& state, double dt) {
  check_dt(dt);
  const int n = grid_.n, s = tableau_.s;
  const int p = params_.p;
  if (state.u.size() != static_cast<std::size_t>(n)) {
    throw DimensionError("step: state length " +
                         std::to_string(state.u.size()) + " vs grid " +
                         std::to_string(n));
  }
  if (p == 5) {
    if (state.q1.size() != state.u.size() ||
        state.q2.size() != state.u.size()) {
      throw StateError("step: p=5 state needs auxiliaries q1 and q2");
    }
    if (!state.q.empty()) {
      throw StateError("step: p=5 state must not carry q");
    }
  } else {
    if (state.q.size() != state.u.size()) {
      throw StateError("step: p in {2, 3} state needs auxiliary q");
    }
    if (!state.q1.empty() || !state.q2.empty()) {
      throw StateError("step: p in {2, 3} state must not carry q1/q2");
    }
  }
  prepare(dt);

  const auto& u = state.u;
  const auto& q = (p == 5) ? state.q1 : state.q;

  // Fourier image of kappa u^n + b D2 u^n, fixed over the iteration
  fft_.forward(u, u_hat_);
  for (int k = 0; k < n; ++k) {
    const Complex lt = grid_.even_symbol[k];
    g_lin_hat_[k] =
        (params_.kappa + params_.b_disp * (lt * lt).real()) * u_hat_[k];
  }

  if (!(opts_.warm_start && have_stages_)) {
    for (int i = 0; i < s; ++i) k_[i].assign(u.begin(), u.end());
  }

  // Stage auxiliaries are explicit functions of the K iterate and are
  // recomputed every sweep rather than iterated independently.
  auto update_stage_aux = [&]() {
    for (int i = 0; i < s; ++i) {
      auto& us = u_stage_[i];
      for (int j = 0; j < n; ++j) {
        double acc = u[j];
        for (int l = 0; l < s; ++l) acc += dt * tableau_.aij(i, l) * k_[l][j];
        us[j] = acc;
      }
    }
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < n; ++j) l_[i][j] = 2.0 * u_stage_[i][j] * k_[i][j];
    }
    for (int i = 0; i < s; ++i) {
      auto& qs = q_stage_[i];
      for (int j = 0; j < n; ++j) {
        double acc = q[j];
        for (int l = 0; l < s; ++l) acc += dt * tableau_.aij(i, l) * l_[l][j];
        qs[j] = acc;
      }
    }
    if (p == 5) {
      for (int i = 0; i < s; ++i) {
        for (int j = 0; j < n; ++j) {
          const double us = u_stage_[i][j];
          m_[i][j] = k_[i][j] * q_stage_[i][j] + 2.0 * us * us * k_[i][j];
        }
      }
      for (int i = 0; i < s; ++i) {
        auto& q2s = q2_stage_[i];
        for (int j = 0; j < n; ++j) {
          double acc = state.q2[j];
          for (int l = 0; l < s; ++l) {
            acc += dt * tableau_.aij(i, l) * m_[l][j];
          }
          q2s[j] = acc;
        }
      }
    }
  };

  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iters = 0;
  while (iters < opts_.max_iters) {
    ++iters;
    update_stage_aux();
    for (int i = 0; i < s; ++i) {
      switch (p) {
        case 2:
          for (int j = 0; j < n; ++j) {
            const double us = u_stage_[i][j];
            nl_[j] = params_.beta / 3.0 * (q_stage_[i][j] + 2.0 * us * us);
          }
          break;
        case 3:
          for (int j = 0; j < n; ++j) {
            nl_[j] = params_.beta * u_stage_[i][j] * q_stage_[i][j];
          }
          break;
        case 5:
          for (int j = 0; j < n; ++j) {
            const double us = u_stage_[i][j];
            nl_[j] = params_.beta / 3.0 * q2_stage_[i][j] *
                     (q_stage_[i][j] + 2.0 * us * us);
          }
          break;
      }
      fft_.forward(nl_, f_hat_[i]);
      for (int k = 0; k < n; ++k) {
        f_hat_[i][k] = j_sym_[k] * (g_lin_hat_[k] + f_hat_[i][k]);
      }
    }
    modes_->apply(f_hat_, k_hat_);
    double res = 0.0;
    for (int i = 0; i < s; ++i) {
      fft_.inverse(k_hat_[i], k_new_[i]);
      res = std::max(res, increment_norm(k_new_[i], k_[i]));
    }
    k_.swap(k_new_);
    residual = res;
    if (res < opts_.tol) {
      converged = true;
      break;
    }
  }
  have_stages_ = true;
  // throws under the strict policy before the state is touched
  const StepReport report = finish_report(iters, residual, converged, opts_);

  // final update from the converged (or capped) stage velocities
  update_stage_aux();
  for (int j = 0; j < n; ++j) {
    double du = 0.0, dq = 0.0;
    for (int i = 0; i < s; ++i) {
      du += tableau_.b[i] * k_[i][j];
      dq += tableau_.b[i] * l_[i][j];
    }
    state.u[j] += dt * du;
    if (p == 5) {
      state.q1[j] += dt * dq;
    } else {
      state.q[j] += dt * dq;
    }
  }
  if (p == 5) {
    for (int j = 0; j < n; ++j) {
      double dq2 = 0.0;
      for (int i = 0; i < s; ++i) dq2 += tableau_.b[i] * m_[i][j];
      state.q2[j] += dt * dq2;
    }
  }
  state.time += dt;
  return report;
}

// ------------------------------------------------------------ conveniences

std::pair<std::vector<double>, StepReport> step_momentum(
    const SpectralGrid& grid, const EquationParams& params,
    const ButcherTableau& tableau, std::span<const double> u_n, double dt,
    const SolverOptions& opts) {
  MomentumIntegrator integ(grid, params, tableau, opts);
  std::vector<double> u(u_n.begin(), u_n.end());
  StepReport rep = integ.step(u, dt);
  return {std::move(u), rep};
}

std::pair<QavState, StepReport> step_energy(const SpectralGrid& grid,
                                            const EquationParams& params,
                                            const ButcherTableau& tableau,
                                            const QavState& state, double dt,
                                            const SolverOptions& opts) {
  EnergyIntegrator integ(grid, params, tableau, opts);
  QavState s = state;
  StepReport rep = integ.step(s, dt);
  return {std::move(s), rep};
}

EvolveResult evolve(const SpectralGrid& grid, const EquationParams& params,
                    const ButcherTableau& tableau, Scheme scheme,
                    State initial, double dt, double t_end,
                    const SolverOptions& opts, int record_every,
                    const EvolveObserver& observer) {
  check_dt(dt);
  if (t_end < 0.0) throw ConfigError("t_end must be >= 0");
  if (record_every < 1) throw ConfigError("record_every must be >= 1");
  const double nsteps_real = t_end / std::abs(dt);
  const long long nsteps = std::llround(nsteps_real);
  if (std::abs(nsteps * std::abs(dt) - t_end) >
      1e-9 * std::max(1.0, std::abs(t_end))) {
    throw ConfigError("t_end must be an integer multiple of dt");
  }

  EvolveResult result{std::move(initial), {}};
  result.reports.reserve(static_cast<std::size_t>(nsteps));
  Fft fft(grid.n);

  const auto emit = [&](double t, const StepReport& rep) {
    if (!observer) return;
    if (std::holds_alternative<QavState>(result.final_state)) {
      observer(t, result.final_state,
               invariants(grid, params, fft,
                          std::get<QavState>(result.final_state)),
               rep);
    } else {
      observer(t, result.final_state,
               invariants(grid, params, fft,
                          std::get<std::vector<double>>(result.final_state),
                          t),
               rep);
    }
  };

  if (scheme == Scheme::momentum &&
      !std::holds_alternative<std::vector<double>>(result.final_state)) {
    throw StateError("momentum scheme expects a plain solution vector");
  }
  if (scheme == Scheme::energy &&
      !std::holds_alternative<QavState>(result.final_state)) {
    throw StateError("energy scheme expects a QavState");
  }

  emit(0.0, StepReport{});
  if (scheme == Scheme::momentum) {
    MomentumIntegrator integ(grid, params, tableau, opts);
    auto& u = std::get<std::vector<double>>(result.final_state);
    for (long long nstep = 1; nstep <= nsteps; ++nstep) {
      const StepReport rep = integ.step(u, dt);
      result.reports.push_back(rep);
      if (nstep % record_every == 0 || nstep == nsteps) {
        emit(nstep * dt, rep);
      }
    }
  } else {
    EnergyIntegrator integ(grid, params, tableau, opts);
    auto& state = std::get<QavState>(result.final_state);
    for (long long nstep = 1; nstep <= nsteps; ++nstep) {
      const StepReport rep = integ.step(state, dt);
      result.reports.push_back(rep);
      if (nstep % record_every == 0 || nstep == nsteps) {
        emit(nstep * dt, rep);
      }
    }
  }
  return result;
}

}  // namespace rosenau
