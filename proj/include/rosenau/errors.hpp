#pragma once

#include <stdexcept>
#include <string>

namespace rosenau {

// Invalid build or run configuration (bad grid sizes, unknown preset, ...).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Operand sizes do not match.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested capability outside the supported range (derivative order,
// stage count, nonlinearity exponent).
struct UnsupportedError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A state object is missing fields required by the equation parameters.
struct StateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Internal numerical failure (root finding, imaginary residue, ...).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// NaN or Inf detected inside an iteration.
struct DivergenceError : NumericError {
  using NumericError::NumericError;
};

// Fixed-point iteration hit the cap without reaching the tolerance.
// Thrown only under the `error` non-convergence policy.
struct ConvergenceError : NumericError {
  ConvergenceError(const std::string& what, int iters_, double residual_)
      : NumericError(what), iters(iters_), residual(residual_) {}
  int iters;
  double residual;
};

}  // namespace rosenau
