#include "rosenau/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "rosenau/errors.hpp"

namespace rosenau {

namespace {

// FFTW's planner is not thread-safe; plan creation/destruction is
// serialized so sessions can be built from worker threads.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_length(std::size_t got, int expected, const char* what) {
  if (got != static_cast<std::size_t>(expected)) {
    throw DimensionError(std::string(what) + ": vector length " +
                         std::to_string(got) + " does not match grid size " +
                         std::to_string(expected));
  }
}

void check_order(int r) {
  if (r < 1 || r > 4) {
    throw UnsupportedError("derivative order r=" + std::to_string(r) +
                           " unsupported; expected 1 <= r <= 4");
  }
}

}  // namespace

SpectralGrid build_grid(int n, double x_left, double x_right) {
  if (n < 4) {
    throw ConfigError("n=" + std::to_string(n) + " too small; need n >= 4");
  }
  if (n % 2 != 0) {
    throw ConfigError("n=" + std::to_string(n) + " must be even");
  }
  if (!(x_left < x_right)) {
    throw ConfigError("degenerate domain: x_left=" + std::to_string(x_left) +
                      " must be < x_right=" + std::to_string(x_right));
  }
  SpectralGrid g;
  g.n = n;
  g.x_left = x_left;
  g.x_right = x_right;
  g.h = (x_right - x_left) / n;
  g.mu = 2.0 * std::numbers::pi / (x_right - x_left);
  g.nodes.resize(n);
  for (int j = 0; j < n; ++j) g.nodes[j] = x_left + j * g.h;
  g.odd_symbol.resize(n);
  g.even_symbol.resize(n);
  for (int k = 0; k < n; ++k) {
    int kk = (k <= n / 2) ? k : k - n;  // 0..n/2, then negative half
    g.even_symbol[k] = Complex(0.0, g.mu * kk);
    g.odd_symbol[k] = (k == n / 2) ? Complex(0.0, 0.0) : g.even_symbol[k];
  }
  return g;
}

struct Fft::Impl {
  int n = 0;
  fftw_complex* phys = nullptr;  // physical-side buffer
  fftw_complex* spec = nullptr;  // spectral-side buffer
  fftw_plan fwd = nullptr;       // phys -> spec
  fftw_plan bwd = nullptr;       // spec -> phys

  explicit Impl(int n_) : n(n_) {
    phys = fftw_alloc_complex(static_cast<std::size_t>(n));
    spec = fftw_alloc_complex(static_cast<std::size_t>(n));
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_1d(n, phys, spec, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, spec, phys, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Impl() {
    if (fwd || bwd) {
      std::lock_guard<std::mutex> lock(planner_mutex());
      if (fwd) fftw_destroy_plan(fwd);
      if (bwd) fftw_destroy_plan(bwd);
    }
    if (phys) fftw_free(phys);
    if (spec) fftw_free(spec);
  }
};

Fft::Fft(int n) {
  if (n < 1) throw ConfigError("Fft size must be positive");
  impl_ = std::make_unique<Impl>(n);
}
Fft::~Fft() = default;
Fft::Fft(Fft&& other) noexcept = default;
Fft& Fft::operator=(Fft&& other) noexcept = default;

int Fft::size() const { return impl_->n; }

void Fft::forward(std::span<const double> u, std::span<Complex> uhat) {
  const int n = impl_->n;
  check_length(u.size(), n, "Fft::forward input");
  check_length(uhat.size(), n, "Fft::forward output");
  for (int j = 0; j < n; ++j) {
    impl_->phys[j][0] = u[j];
    impl_->phys[j][1] = 0.0;
  }
  fftw_execute(impl_->fwd);
  for (int k = 0; k < n; ++k) {
    uhat[k] = Complex(impl_->spec[k][0], impl_->spec[k][1]);
  }
}

void Fft::inverse(std::span<const Complex> uhat, std::span<double> u) {
  const int n = impl_->n;
  check_length(uhat.size(), n, "Fft::inverse input");
  check_length(u.size(), n, "Fft::inverse output");
  for (int k = 0; k < n; ++k) {
    impl_->spec[k][0] = uhat[k].real();
    impl_->spec[k][1] = uhat[k].imag();
  }
  fftw_execute(impl_->bwd);
  double max_im = 0.0, max_mag = 0.0;
  const double inv_n = 1.0 / n;
  for (int j = 0; j < n; ++j) {
    const double re = impl_->phys[j][0];
    const double im = std::abs(impl_->phys[j][1]);
    max_im = std::max(max_im, im);
    max_mag = std::max(max_mag, std::max(std::abs(re), im));
    u[j] = re * inv_n;
  }
  if (max_mag > 1e-280 && max_im > kImagTol * max_mag) {
    throw NumericError(
        "inverse transform of a nominally real field has imaginary residue " +
        std::to_string(max_im / max_mag) + " (relative); symbol table bug?");
  }
}

std::vector<double> apply_diff(const SpectralGrid& grid, Fft& fft,
                               std::span<const double> u, int r) {
  check_order(r);
  check_length(u.size(), grid.n, "apply_diff");
  const auto& sym = (r % 2 == 1) ? grid.odd_symbol : grid.even_symbol;
  std::vector<Complex> uhat(grid.n);
  fft.forward(u, uhat);
  for (int k = 0; k < grid.n; ++k) {
    Complex f = sym[k];
    Complex fr = f;
    for (int i = 1; i < r; ++i) fr *= f;
    uhat[k] *= fr;
  }
  std::vector<double> out(grid.n);
  fft.inverse(uhat, out);
  return out;
}

Eigen::MatrixXd dense_diff_matrix(const SpectralGrid& grid, int r) {
  check_order(r);
  const int n = grid.n;
  const double mu = grid.mu;
  Eigen::MatrixXd d(n, n);
  const double pi_over_n = std::numbers::pi / n;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) {
        switch (r) {
          case 1:
          case 3:
            d(j, k) = 0.0;
            break;
          case 2:
            d(j, k) = -mu * mu * (static_cast<double>(n) * n + 2.0) / 12.0;
            break;
          case 4: {
            const double n2 = static_cast<double>(n) * n;
            d(j, k) =
                std::pow(mu, 4) * (n2 * n2 / 80.0 + n2 / 12.0 - 1.0 / 30.0);
            break;
          }
        }
        continue;
      }
      // mu (x_j - x_k) / 2 = pi (j - k) / N
      const double t = pi_over_n * (j - k);
      const double sgn = ((j + k) % 2 == 0) ? 1.0 : -1.0;
      const double cot = std::cos(t) / std::sin(t);
      const double csc = 1.0 / std::sin(t);
      switch (r) {
        case 1:
          d(j, k) = 0.5 * mu * sgn * cot;
          break;
        case 2:
          d(j, k) = -0.5 * mu * mu * sgn * csc * csc;
          break;
        case 3:
          d(j, k) = std::pow(mu, 3) * sgn *
                    (0.75 * std::cos(t) * csc * csc * csc -
                     0.125 * static_cast<double>(n) * n * cot);
          break;
        case 4: {
          const double n2 = static_cast<double>(n) * n;
          d(j, k) = std::pow(mu, 4) * sgn * csc * csc *
                    (n2 / 4.0 - 0.5 - 1.5 * cot * cot);
          break;
        }
      }
    }
  }
  return d;
}

namespace {

// 1 + delta (mu k)^2 + alpha (mu k)^4 from the even symbol; >= 1.
inline double helmholtz_factor(const SpectralGrid& grid,
                               const EquationParams& params, int k) {
  const double t = grid.even_symbol[k].imag();
  const double t2 = t * t;
  return 1.0 + params.delta * t2 + params.alpha * t2 * t2;
}

}  // namespace

std::vector<double> apply_helmholtz(const SpectralGrid& grid,
                                    const EquationParams& params, Fft& fft,
                                    std::span<const double> u) {
  check_length(u.size(), grid.n, "apply_helmholtz");
  std::vector<Complex> uhat(grid.n);
  fft.forward(u, uhat);
  for (int k = 0; k < grid.n; ++k) uhat[k] *= helmholtz_factor(grid, params, k);
  std::vector<double> out(grid.n);
  fft.inverse(uhat, out);
  return out;
}

std::vector<double> apply_helmholtz_inverse(const SpectralGrid& grid,
                                            const EquationParams& params,
                                            Fft& fft,
                                            std::span<const double> u) {
  check_length(u.size(), grid.n, "apply_helmholtz_inverse");
  std::vector<Complex> uhat(grid.n);
  fft.forward(u, uhat);
  for (int k = 0; k < grid.n; ++k) uhat[k] /= helmholtz_factor(grid, params, k);
  std::vector<double> out(grid.n);
  fft.inverse(uhat, out);
  return out;
}

double discrete_inner(std::span<const double> u, std::span<const double> v,
                      double h) {
  if (u.size() != v.size()) {
    throw DimensionError("discrete_inner: lengths " +
                         std::to_string(u.size()) + " and " +
                         std::to_string(v.size()) + " differ");
  }
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * v[j];
  return h * s;
}

double discrete_norm2(std::span<const double> u, double h) {
  return std::sqrt(discrete_inner(u, u, h));
}

double discrete_norm_inf(std::span<const double> u) {
  double m = 0.0;
  for (double x : u) m = std::max(m, std::abs(x));
  return m;
}

void validate(const EquationParams& params) {
  if (params.delta < 0.0) throw ConfigError("delta must be >= 0");
  if (params.alpha < 0.0) throw ConfigError("alpha must be >= 0");
  if (params.p < 2) throw ConfigError("nonlinearity exponent p must be >= 2");
}

}  // namespace rosenau
