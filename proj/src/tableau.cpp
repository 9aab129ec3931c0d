#include "rosenau/tableau.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rosenau/errors.hpp"

namespace rosenau {

namespace {

// Value and x-derivative of the shifted Legendre polynomial
// P_s(2x - 1), by the three-term recurrence. Long double throughout:
// the roots feed Vandermonde solves whose accuracy the tableau
// invariants (1e-13 .. 1e-14) depend on.
std::pair<long double, long double> shifted_legendre(int s, long double x) {
  const long double t = 2.0L * x - 1.0L;
  long double pm1 = 0.0L, p = 1.0L;
  for (int n = 0; n < s; ++n) {
    const long double pn1 = ((2 * n + 1) * t * p - n * pm1) / (n + 1);
    pm1 = p;
    p = pn1;
  }
  // dP_s/dt = s (t P_s - P_{s-1}) / (t^2 - 1); interior roots keep |t| < 1
  const long double dp_dt = s * (t * p - pm1) / (t * t - 1.0L);
  return {p, 2.0L * dp_dt};
}

// Roots of the s-th shifted Legendre polynomial in ascending order.
std::vector<long double> legendre_roots(int s) {
  std::vector<long double> roots(s);
  for (int i = 0; i < s; ++i) {
    // standard Chebyshev-flavored initial guess, mapped to (0, 1)
    const long double theta =
        std::numbers::pi_v<long double> * (i + 0.75L) / (s + 0.5L);
    long double x = 0.5L * (1.0L + std::cos(theta));
    bool done = false;
    for (int it = 0; it < 100; ++it) {
      const auto [f, df] = shifted_legendre(s, x);
      const long double dx = f / df;
      x -= dx;
      if (std::abs(dx) < 1e-19L) {
        done = true;
        break;
      }
    }
    if (!done) {
      throw NumericError("Legendre root iteration failed for s=" +
                         std::to_string(s));
    }
    roots[s - 1 - i] = x;  // guesses come out descending
  }
  return roots;
}

// Solves sum_j c_j^k w_j = rhs_k (k = 0..s-1) by Gaussian elimination
// with partial pivoting in long double.
std::vector<long double> solve_moment_system(
    const std::vector<long double>& c, std::vector<long double> rhs) {
  const int s = static_cast<int>(c.size());
  std::vector<long double> m(static_cast<std::size_t>(s) * s);
  for (int k = 0; k < s; ++k) {
    for (int j = 0; j < s; ++j) {
      m[static_cast<std::size_t>(k) * s + j] =
          (k == 0) ? 1.0L : m[static_cast<std::size_t>(k - 1) * s + j] * c[j];
    }
  }
  auto at = [&](int i, int j) -> long double& {
    return m[static_cast<std::size_t>(i) * s + j];
  };
  for (int col = 0; col < s; ++col) {
    int piv = col;
    for (int i = col + 1; i < s; ++i) {
      if (std::abs(at(i, col)) > std::abs(at(piv, col))) piv = i;
    }
    if (at(piv, col) == 0.0L) {
      throw NumericError("singular Vandermonde system in tableau setup");
    }
    if (piv != col) {
      for (int j = col; j < s; ++j) std::swap(at(piv, j), at(col, j));
      std::swap(rhs[piv], rhs[col]);
    }
    for (int i = col + 1; i < s; ++i) {
      const long double f = at(i, col) / at(col, col);
      for (int j = col; j < s; ++j) at(i, j) -= f * at(col, j);
      rhs[i] -= f * rhs[col];
    }
  }
  std::vector<long double> w(s);
  for (int i = s - 1; i >= 0; --i) {
    long double acc = rhs[i];
    for (int j = i + 1; j < s; ++j) acc -= at(i, j) * w[j];
    w[i] = acc / at(i, i);
  }
  return w;
}

}  // namespace

ButcherTableau gauss_legendre(int s) {
  if (s < 1 || s > kMaxGaussStages) {
    throw UnsupportedError("stage count s=" + std::to_string(s) +
                           " unsupported; expected 1 <= s <= " +
                           std::to_string(kMaxGaussStages));
  }
  const std::vector<long double> c = legendre_roots(s);

  ButcherTableau t;
  t.s = s;
  t.order = 2 * s;
  t.c.resize(s);
  t.a.resize(static_cast<std::size_t>(s) * s);
  t.b.resize(s);
  for (int i = 0; i < s; ++i) t.c[i] = static_cast<double>(c[i]);

  // collocation conditions: sum_j a_ij c_j^{k-1} = c_i^k / k, k = 1..s
  for (int i = 0; i < s; ++i) {
    std::vector<long double> rhs(s);
    long double cik = 1.0L;
    for (int k = 1; k <= s; ++k) {
      cik *= c[i];
      rhs[k - 1] = cik / k;
    }
    const auto row = solve_moment_system(c, std::move(rhs));
    for (int j = 0; j < s; ++j) {
      t.a[static_cast<std::size_t>(i) * s + j] = static_cast<double>(row[j]);
    }
  }

  // quadrature conditions: sum_i b_i c_i^{k-1} = 1/k, k = 1..s
  std::vector<long double> rhs(s);
  for (int k = 1; k <= s; ++k) rhs[k - 1] = 1.0L / k;
  const auto w = solve_moment_system(c, std::move(rhs));
  for (int i = 0; i < s; ++i) t.b[i] = static_cast<double>(w[i]);

  return t;
}

double symplectic_defect(const ButcherTableau& t) {
  double worst = 0.0;
  for (int i = 0; i < t.s; ++i) {
    for (int j = 0; j < t.s; ++j) {
      const double d =
          std::abs(t.b[i] * t.aij(i, j) + t.b[j] * t.aij(j, i) -
                   t.b[i] * t.b[j]);
      worst = std::max(worst, d);
    }
  }
  return worst;
}

}  // namespace rosenau
