#pragma once
// Shared helpers for the test suites: seeded random vectors, dense-matrix
// oracles built from the collocation matrices, finite-difference weights,
// and a fixed-panel Simpson quadrature. Everything here is deliberately
// independent of the FFT production paths it is used to check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rosenau/params.hpp"
#include "rosenau/spectral.hpp"

namespace testutil {

// Deterministic uniform values in [-1, 1); identical across platforms.
inline std::vector<double> rand_vec(int n, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::vector<double> v(n);
  for (auto& x : v) {
    x = 2.0 * (static_cast<double>(gen()) / 4294967296.0) - 1.0;
  }
  return v;
}

inline Eigen::VectorXd to_eigen(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

inline std::vector<double> from_eigen(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline double max_abs_diff(std::span<const double> a,
                           std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

inline double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

inline double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// Dense Helmholtz-type matrix I - delta D2 + alpha D4.
inline Eigen::MatrixXd dense_helmholtz(const rosenau::SpectralGrid& grid,
                                       const rosenau::EquationParams& p) {
  const Eigen::MatrixXd d2 = rosenau::dense_diff_matrix(grid, 2);
  const Eigen::MatrixXd d4 = rosenau::dense_diff_matrix(grid, 4);
  return Eigen::MatrixXd::Identity(grid.n, grid.n) - p.delta * d2 +
         p.alpha * d4;
}

// Dense evaluation of F_h(U)U.
inline Eigen::VectorXd dense_fhu(const rosenau::SpectralGrid& grid,
                                 const rosenau::EquationParams& p,
                                 const Eigen::VectorXd& u) {
  const Eigen::MatrixXd d1 = rosenau::dense_diff_matrix(grid, 1);
  const Eigen::MatrixXd d3 = rosenau::dense_diff_matrix(grid, 3);
  const double cnl = p.p * p.beta / (p.p + 1);
  Eigen::VectorXd up1(u.size()), upp(u.size());
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    up1[j] = ipow(u[j], p.p - 1);
    upp[j] = up1[j] * u[j];
  }
  const Eigen::VectorXd d1u = d1 * u;
  return -(p.kappa * d1u + p.b_disp * (d3 * u) +
           cnl * (up1.cwiseProduct(d1u) + d1 * upp));
}

// Finite-difference weights for the d-th derivative at x0 from the given
// nodes (Fornberg's recursion); the independent stencil generator behind
// the PDE residual checks.
inline std::vector<double> fd_weights(double x0, std::span<const double> xs,
                                      int d) {
  const int n = static_cast<int>(xs.size());
  std::vector<std::vector<std::vector<double>>> c(
      n, std::vector<std::vector<double>>(n, std::vector<double>(d + 1, 0.0)));
  c[0][0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i < n; ++i) {
    double c2 = 1.0;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      for (int k = 0; k <= std::min(i, d); ++k) {
        c[i][j][k] = ((xs[i] - x0) * c[i - 1][j][k] -
                      (k > 0 ? k * c[i - 1][j][k - 1] : 0.0)) /
                     c3;
      }
    }
    for (int k = 0; k <= std::min(i, d); ++k) {
      c[i][i][k] = c1 / c2 *
                   ((k > 0 ? k * c[i - 1][i - 1][k - 1] : 0.0) -
                    (xs[i - 1] - x0) * c[i - 1][i - 1][k]);
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[n - 1][j][d];
  return w;
}

// d-th x-derivative of f at (x, t) on a symmetric stencil of half-width
// `half` and spacing hx.
inline double fd_x(const std::function<double(double, double)>& f, double x,
                   double t, int d, int half, double hx) {
  std::vector<double> xs(2 * half + 1);
  for (int i = 0; i <= 2 * half; ++i) xs[i] = x + (i - half) * hx;
  const auto w = fd_weights(x, xs, d);
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) acc += w[i] * f(xs[i], t);
  return acc;
}

// Composite Simpson over [a, b] with `panels` panels (even count).
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels) {
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    acc += f(a + i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

}  // namespace testutil
