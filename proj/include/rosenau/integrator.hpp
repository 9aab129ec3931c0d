#pragma once
// Fully discrete stepping with s-stage Gauss collocation in time:
// a momentum-conserving scheme on the form A_h dU/dt = F_h(U)U and an
// energy-conserving scheme on the quadratized form dU/dt = J_h g.
//
// The implicit stage equations are solved by a fixed-point iteration
// whose linear part is moved to the left-hand side and inverted
// mode-by-mode: after an FFT, every Fourier mode carries an s x s
// complex system whose inverse is cached while dt stays fixed. The
// iteration starts from K_i = U^n, stops when the max-norm increment of
// all stage velocities drops below SolverOptions::tol, and is capped at
// SolverOptions::max_iters sweeps.

#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "rosenau/diagnostics.hpp"
#include "rosenau/dynamics.hpp"
#include "rosenau/params.hpp"
#include "rosenau/spectral.hpp"
#include "rosenau/tableau.hpp"

namespace rosenau {

enum class Scheme { momentum, energy };

enum class NonconvergencePolicy { warn_and_proceed, error };

struct SolverOptions {
  double tol = 1e-14;   // stopping tolerance on stage-increment max-norms
  int max_iters = 30;   // fixed-point sweep cap
  NonconvergencePolicy on_nonconvergence =
      NonconvergencePolicy::warn_and_proceed;
  // Start the iteration from the previous step's stage velocities
  // instead of U^n. Off by default.
  bool warm_start = false;
};

struct StepReport {
  int iters = 0;
  double final_residual = 0.0;
  bool converged = false;
};

namespace detail {
struct ModeSolver;  // cached per-mode s x s inverses
}

// One stepping session of the momentum-conserving scheme. The session
// owns its FFT workspace and stage buffers, so it is single-threaded;
// several sessions over shared grids/tableaux may run in parallel.
class MomentumIntegrator {
 public:
  MomentumIntegrator(SpectralGrid grid, EquationParams params,
                     ButcherTableau tableau, SolverOptions opts = {});
  ~MomentumIntegrator();
  MomentumIntegrator(MomentumIntegrator&&) noexcept;

  // Advances u by one step of size dt (dt may be negative; Gauss methods
  // are symmetric). Updates u in place.
  StepReport step(std::vector<double>& u, double dt);

  const SpectralGrid& grid() const { return grid_; }
  const EquationParams& params() const { return params_; }
  const ButcherTableau& tableau() const { return tableau_; }

 private:
  void prepare(double dt);

  SpectralGrid grid_;
  EquationParams params_;
  ButcherTableau tableau_;
  SolverOptions opts_;
  Fft fft_;
  double dt_cached_;
  bool have_stages_ = false;
  std::unique_ptr<detail::ModeSolver> modes_;
  // work buffers, stage-major
  std::vector<std::vector<double>> k_, k_new_, u_stage_;
  std::vector<std::vector<Complex>> f_hat_, k_hat_;
  std::vector<Complex> u_hat_, lin_hat_, z_hat_, theta_;
  std::vector<double> d1_, pw_, nl_;
};

// Stepping session of the energy-conserving scheme; requires
// params.p in {2, 3, 5} and a state carrying the matching auxiliaries.
class EnergyIntegrator {
 public:
  EnergyIntegrator(SpectralGrid grid, EquationParams params,
                   ButcherTableau tableau, SolverOptions opts = {});
  ~EnergyIntegrator();
  EnergyIntegrator(EnergyIntegrator&&) noexcept;

  // Advances (u, q[, q2]) by one step of size dt, in place; state.time
  // is advanced by dt.
  StepReport step(QavState& state, double dt);

  const SpectralGrid& grid() const { return grid_; }
  const EquationParams& params() const { return params_; }
  const ButcherTableau& tableau() const { return tableau_; }

 private:
  void prepare(double dt);

  SpectralGrid grid_;
  EquationParams params_;
  ButcherTableau tableau_;
  SolverOptions opts_;
  Fft fft_;
  double dt_cached_;
  bool have_stages_ = false;
  std::unique_ptr<detail::ModeSolver> modes_;
  std::vector<std::vector<double>> k_, k_new_, u_stage_, l_, q_stage_, m_,
      q2_stage_;
  std::vector<std::vector<Complex>> f_hat_, k_hat_;
  std::vector<Complex> u_hat_, g_lin_hat_, j_sym_;
  std::vector<double> nl_;
};

// One-off conveniences; each call builds a fresh session.
std::pair<std::vector<double>, StepReport> step_momentum(
    const SpectralGrid& grid, const EquationParams& params,
    const ButcherTableau& tableau, std::span<const double> u_n, double dt,
    const SolverOptions& opts = {});
std::pair<QavState, StepReport> step_energy(const SpectralGrid& grid,
                                            const EquationParams& params,
                                            const ButcherTableau& tableau,
                                            const QavState& state, double dt,
                                            const SolverOptions& opts = {});

// Repeated stepping. `initial` holds a plain vector for Scheme::momentum
// and a QavState for Scheme::energy. t_end is the duration (>= 0) and
// must be an integer multiple of |dt|; dt < 0 runs time-reversed. The
// observer, when set, is called at t = 0 and after every record_every-th
// step (plus the final one) with the elapsed time, the current state,
// its invariants, and the report of the step that produced it. Observer
// exceptions abort the run. Fully deterministic given its inputs.
using State = std::variant<std::vector<double>, QavState>;
using EvolveObserver = std::function<void(
    double t, const State& state, const InvariantRecord& record,
    const StepReport& report)>;

struct EvolveResult {
  State final_state;
  std::vector<StepReport> reports;
};

EvolveResult evolve(const SpectralGrid& grid, const EquationParams& params,
                    const ButcherTableau& tableau, Scheme scheme,
                    State initial, double dt, double t_end,
                    const SolverOptions& opts = {}, int record_every = 1,
                    const EvolveObserver& observer = {});

}  // namespace rosenau
