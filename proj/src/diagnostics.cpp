#include "rosenau/diagnostics.hpp"

#include <cmath>
#include <string>

#include "rosenau/errors.hpp"

namespace rosenau {

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// <D2 u, u>_h via the even symbol.
double d2_quadratic_form(const SpectralGrid& grid, Fft& fft,
                         std::span<const double> u) {
  std::vector<Complex> uhat(grid.n);
  fft.forward(u, uhat);
  for (int k = 0; k < grid.n; ++k) {
    const Complex lt = grid.even_symbol[k];
    uhat[k] *= (lt * lt).real();
  }
  std::vector<double> d2u(grid.n);
  fft.inverse(uhat, d2u);
  return discrete_inner(d2u, u, grid.h);
}

InvariantRecord base_invariants(const SpectralGrid& grid,
                                const EquationParams& params, Fft& fft,
                                std::span<const double> u, double time) {
  if (u.size() != static_cast<std::size_t>(grid.n)) {
    throw DimensionError("invariants: state length " +
                         std::to_string(u.size()) + " vs grid " +
                         std::to_string(grid.n));
  }
  InvariantRecord rec;
  rec.time = time;

  double mass = 0.0;
  for (double x : u) mass += x;
  rec.mass = grid.h * mass;

  const std::vector<double> ahu = apply_helmholtz(grid, params, fft, u);
  rec.momentum = 0.5 * discrete_inner(u, ahu, grid.h);

  double nl = 0.0;  // <U, U^p>_h / h
  for (double x : u) nl += x * ipow(x, params.p);
  rec.hamiltonian = 0.5 * params.kappa * discrete_inner(u, u, grid.h) +
                    0.5 * params.b_disp * d2_quadratic_form(grid, fft, u) +
                    params.beta / (params.p + 1) * grid.h * nl;
  return rec;
}

}  // namespace

InvariantRecord invariants(const SpectralGrid& grid,
                           const EquationParams& params, Fft& fft,
                           std::span<const double> u, double time) {
  return base_invariants(grid, params, fft, u, time);
}

InvariantRecord invariants(const SpectralGrid& grid,
                           const EquationParams& params, Fft& fft,
                           const QavState& state) {
  InvariantRecord rec = base_invariants(grid, params, fft, state.u, state.time);

  const std::size_t n = state.u.size();
  const double quad_base =
      0.5 * params.kappa * discrete_inner(state.u, state.u, grid.h) +
      0.5 * params.b_disp * d2_quadratic_form(grid, fft, state.u);
  double defect = 0.0;
  switch (params.p) {
    case 2:
    case 3: {
      if (state.q.size() != n) {
        throw StateError("invariants: QAV state lacks q for p in {2, 3}");
      }
      double coupling = 0.0;
      if (params.p == 2) {
        coupling = params.beta / 3.0 * discrete_inner(state.u, state.q, grid.h);
      } else {
        coupling = params.beta / 4.0 * discrete_inner(state.q, state.q, grid.h);
      }
      rec.quad_energy = quad_base + coupling;
      for (std::size_t j = 0; j < n; ++j) {
        defect = std::max(defect,
                          std::abs(state.q[j] - state.u[j] * state.u[j]));
      }
      break;
    }
    case 5: {
      if (state.q1.size() != n || state.q2.size() != n) {
        throw StateError("invariants: QAV state lacks q1/q2 for p=5");
      }
      rec.quad_energy = quad_base + params.beta / 6.0 *
                                        discrete_inner(state.q2, state.q2,
                                                       grid.h);
      for (std::size_t j = 0; j < n; ++j) {
        defect = std::max(defect,
                          std::abs(state.q1[j] - state.u[j] * state.u[j]));
        defect = std::max(defect,
                          std::abs(state.q2[j] - state.u[j] * state.q1[j]));
      }
      break;
    }
    default:
      throw UnsupportedError("invariants: QAV states exist for p in {2,3,5}");
  }
  rec.qav_defect = defect;
  return rec;
}

std::pair<double, double> error_norms(
    const SpectralGrid& grid, std::span<const double> numeric,
    const std::function<double(double, double)>& exact, double t) {
  if (numeric.size() != static_cast<std::size_t>(grid.n)) {
    throw DimensionError("error_norms: state length mismatch");
  }
  double sum2 = 0.0, emax = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    const double d = numeric[j] - exact(grid.nodes[j], t);
    sum2 += d * d;
    emax = std::max(emax, std::abs(d));
  }
  return {std::sqrt(grid.h * sum2), emax};
}

std::vector<ConvergenceRow> estimate_order(std::vector<ConvergenceRow> rows) {
  if (rows.size() < 2) return rows;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].dt < rows[i - 1].dt)) {
      throw ConfigError("estimate_order: dt must be strictly decreasing");
    }
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ratio = std::log(rows[i - 1].dt / rows[i].dt);
    if (rows[i - 1].e2 > 0.0 && rows[i].e2 > 0.0) {
      rows[i].order2 = std::log(rows[i - 1].e2 / rows[i].e2) / ratio;
    }
    if (rows[i - 1].einf > 0.0 && rows[i].einf > 0.0) {
      rows[i].orderinf = std::log(rows[i - 1].einf / rows[i].einf) / ratio;
    }
  }
  return rows;
}

}  // namespace rosenau
