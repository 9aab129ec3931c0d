#pragma once
// Gauss-Legendre collocation tableaux of arbitrary stage count.

#include <vector>

namespace rosenau {

// Beyond ten stages the double-precision Vandermonde solves behind the
// stage coefficients lose accuracy, so the generator refuses larger s.
inline constexpr int kMaxGaussStages = 10;

struct ButcherTableau {
  int s = 0;
  std::vector<double> c;  // abscissae, strictly increasing in (0, 1)
  std::vector<double> a;  // s x s stage matrix, row-major
  std::vector<double> b;  // weights
  int order = 0;          // classical order, 2s for Gauss

  double aij(int i, int j) const {
    return a[static_cast<std::size_t>(i) * s + j];
  }
};

// s-stage Gauss-Legendre method: c are the roots of the s-th shifted
// Legendre polynomial, a and b solve the collocation order conditions.
// Computed, not tabulated, so any 1 <= s <= kMaxGaussStages works.
ButcherTableau gauss_legendre(int s);

// max_ij |b_i a_ij + b_j a_ji - b_i b_j|. Zero (to roundoff) exactly for
// methods that conserve quadratic invariants.
double symplectic_defect(const ButcherTableau& t);

}  // namespace rosenau
