#pragma once
// Semi-discrete right-hand sides: the momentum form A_h dU/dt = F_h(U) U
// and the quadratized-energy form dU/dt = J_h g driven by the auxiliary
// variables q = u^2 (p = 2, 3) or q1 = u^2, q2 = u q1 (p = 5).
//
// Elementwise powers are evaluated in physical space and derivatives in
// Fourier space (collocation products, no dealiasing): the discrete
// conservation laws targeted by the integrators hold for exactly this
// pseudo-spectral product.

#include <span>
#include <vector>

#include "rosenau/params.hpp"
#include "rosenau/spectral.hpp"

namespace rosenau {

// Solution vector plus exactly the auxiliary fields demanded by p.
// Unused fields stay empty.
struct QavState {
  std::vector<double> u;
  std::vector<double> q;        // p = 2, 3
  std::vector<double> q1, q2;   // p = 5
  double time = 0.0;
};

// Consistent initialization: q = u0^2 (and q2 = u0 q1), time = 0.
QavState qav_init(std::span<const double> u0, int p);

// Borrowed view of one stage of a QavState; keeps the p-dispatch of
// ep_gradient in one place.
struct QavStageView {
  std::span<const double> u;
  std::span<const double> q;
  std::span<const double> q1, q2;
};

QavStageView stage_view(const QavState& state);

// A_h^{-1} F_h(U)U with
//   F_h(U)U = -[kappa D1 U + b D3 U
//               + p beta/(p+1) (U^{p-1}. D1 U + D1(U^p))].
std::vector<double> stage_velocity_mp(const SpectralGrid& grid,
                                      const EquationParams& params, Fft& fft,
                                      std::span<const double> u_stage);

// Gradient g of the quadratized energy, so that du/dt = J_h g:
//   p = 2:  kappa u + b D2 u + (beta/3) q + (2 beta/3) u^2
//   p = 3:  kappa u + b D2 u + beta u.q
//   p = 5:  kappa u + b D2 u + (beta/3) q2.(q1 + 2 u^2)
std::vector<double> ep_gradient(const SpectralGrid& grid,
                                const EquationParams& params, Fft& fft,
                                const QavStageView& stage);

// J_h g = -A_h^{-1} D1 g, applied mode-by-mode.
std::vector<double> apply_j(const SpectralGrid& grid,
                            const EquationParams& params, Fft& fft,
                            std::span<const double> g);

// Stage rates of the auxiliary variables: l = 2 u.k always, and for
// p = 5 additionally m = k.q1 + 2 u^2.k (the q2 chain).
struct QavRates {
  std::vector<double> l;
  std::vector<double> m;  // empty unless p = 5
};
QavRates qav_stage_rates(const EquationParams& params,
                         std::span<const double> u_stage,
                         std::span<const double> k_stage,
                         std::span<const double> q1_stage = {});

}  // namespace rosenau
