#pragma once
// Equation presets, exact soliton solutions, and initial profiles.
//
// The soliton evaluators compute the t = 0 profile at x - c t (pure
// translation), with sech evaluated as 2 e^{-|z|} / (1 + e^{-2|z|}) so
// large arguments underflow cleanly to zero instead of overflowing.

#include <functional>
#include <string>
#include <vector>

#include "rosenau/params.hpp"

namespace rosenau {

// Solitary wave of the Rosenau-RLW reduction (kappa = delta = alpha =
// beta = 1, b = 0): u = A sech^{4/(p-1)}(B (x - C t - x0)).
double rlw_soliton(int p, double x, double t, double x0 = 0.0);

enum class KdvCase { p2, p3, p5 };

// Solitary wave of the Rosenau-KdV reduction (kappa = b = alpha = 1,
// delta = 0) for the three published parameter sets:
//   p2: beta = 1/2, p = 2;  p3: beta = 1, p = 3;  p5: beta = 1, p = 5.
double kdv_soliton(KdvCase c, double x, double t);

// u(x, 0) = exp(-0.05 (x - 40)^2) on [-50, 250].
double gaussian_profile(double x);

struct ProblemPreset {
  std::string name;
  EquationParams params;
  double x_left = 0.0;
  double x_right = 0.0;
  double x0 = 0.0;  // initial phase of the soliton, when applicable
  std::function<double(double)> initial;          // u(x, 0)
  std::function<double(double, double)> exact;    // u(x, t); empty if unknown
};

// Catalog of the benchmark setups. Names (stable CLI strings):
//   rlw-p2, rlw-p3, rlw-p5          soliton on [-200, 200]
//   kdv-case1, kdv-case2, kdv-case3 soliton on [-100, 100]
//   gaussian-rlw-p2 / -p3 / -p5     Gaussian hump on [-50, 250]
//   gaussian-rlw                    alias for gaussian-rlw-p2
ProblemPreset preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace rosenau
