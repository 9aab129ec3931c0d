#pragma once

namespace rosenau {

// Coefficients of the generalized Rosenau-type equation
//
//   u_t + kappa u_x - delta u_xxt + b u_xxx + alpha u_xxxxt + beta (u^p)_x = 0
//
// on a periodic domain. delta, alpha >= 0 keep the Helmholtz-type operator
// I - delta D2 + alpha D4 invertible; p is an integer >= 2.
struct EquationParams {
  double kappa = 1.0;
  double delta = 0.0;
  double b_disp = 0.0;  // coefficient of u_xxx
  double alpha = 0.0;
  double beta = 0.0;
  int p = 2;
};

// Throws ConfigError when a coefficient violates its admissible range.
void validate(const EquationParams& params);

}  // namespace rosenau
