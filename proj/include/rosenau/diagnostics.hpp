#pragma once
// Discrete invariants, error norms, and convergence-order estimation.

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rosenau/dynamics.hpp"
#include "rosenau/params.hpp"
#include "rosenau/spectral.hpp"

namespace rosenau {

// Snapshot of the conserved quantities at one time point:
//   mass        M_h = <U, 1>_h
//   momentum    I_h = (1/2) <U, A_h U>_h
//   hamiltonian H_h = (kappa/2)||U||_h^2 + (b/2)<D2 U, U>_h
//                     + beta/(p+1) <U, U^p>_h
// quad_energy and qav_defect are populated only for QAV states:
// quad_energy replaces the nonlinear term by its quadratized form
// ((beta/3)<U,Q>, (beta/4)<Q,Q>, or (beta/6)<Q2,Q2>), and qav_defect is
// the max-norm residual of the auxiliary identities.
//
// The b-term uses <D2 U, U>_h rather than -||D1 U||_h^2; they differ in
// the Nyquist mode only (D1 annihilates it, D2 does not).
struct InvariantRecord {
  double time = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
  double hamiltonian = 0.0;
  std::optional<double> quad_energy;
  std::optional<double> qav_defect;
};

InvariantRecord invariants(const SpectralGrid& grid,
                           const EquationParams& params, Fft& fft,
                           std::span<const double> u, double time = 0.0);
InvariantRecord invariants(const SpectralGrid& grid,
                           const EquationParams& params, Fft& fft,
                           const QavState& state);

// (e2, einf) of numeric against exact(x, t) sampled at the grid nodes;
// e2 is the h-weighted norm.
std::pair<double, double> error_norms(
    const SpectralGrid& grid, std::span<const double> numeric,
    const std::function<double(double, double)>& exact, double t);

struct ConvergenceRow {
  double dt = 0.0;
  double e2 = 0.0;
  double einf = 0.0;
  std::optional<double> order2;    // absent in the first row or when the
  std::optional<double> orderinf;  // pairwise slope is undefined
};

// Fills the pairwise slopes order = log(e_prev/e_curr)/log(dt_prev/dt_curr).
// Requires strictly decreasing dt when more than one row is given; rows
// with a zero error leave the affected slopes absent.
std::vector<ConvergenceRow> estimate_order(std::vector<ConvergenceRow> rows);

}  // namespace rosenau
