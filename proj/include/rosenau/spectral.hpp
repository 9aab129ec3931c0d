#pragma once
// Periodic Fourier pseudo-spectral grid, differentiation, and discrete
// inner products.
//
// Mode ordering -- the single convention used throughout the library:
// spectra are indexed k = 0, 1, ..., N/2-1, +-N/2, -N/2+1, ..., -1
// (standard DFT layout). Odd derivative orders use `odd_symbol`, whose
// Nyquist entry is zero; even orders use `even_symbol`, which keeps
// i*mu*N/2 there. With this split the FFT-diagonal operators reproduce
// the dense collocation matrices D1..D4 to roundoff.
//
// All state vectors are real. Every inverse transform verifies that the
// imaginary residue is below Fft::kImagTol (relative) before discarding
// it; a larger residue means a symbol-table bug and raises NumericError.
//
// The dense matrices returned by dense_diff_matrix exist as test oracles
// for the FFT paths (use them for N <= 128); production code should stay
// on the O(N log N) FFT-diagonal routes.

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rosenau/params.hpp"

namespace rosenau {

using Complex = std::complex<double>;

struct SpectralGrid {
  int n = 0;                         // number of collocation nodes, even
  double x_left = 0.0;
  double x_right = 0.0;
  double h = 0.0;                    // mesh size (x_right - x_left) / n
  double mu = 0.0;                   // wavenumber scale 2*pi / (x_right - x_left)
  std::vector<double> nodes;         // x_j = x_left + j h, j = 0..n-1
  std::vector<Complex> odd_symbol;   // i*mu*[0, 1, ..., n/2-1, 0, -n/2+1, ..., -1]
  std::vector<Complex> even_symbol;  // i*mu*[0, 1, ..., n/2-1, n/2, -n/2+1, ..., -1]
};

// Builds the grid; n must be even and >= 4, x_left < x_right.
SpectralGrid build_grid(int n, double x_left, double x_right);

// Complex-to-complex FFT workspace of fixed size (wraps FFTW plans and
// aligned buffers). Not copyable; each solver session owns its own
// instance, which makes the spectral operations reentrant.
class Fft {
 public:
  explicit Fft(int n);
  ~Fft();
  Fft(Fft&& other) noexcept;
  Fft& operator=(Fft&& other) noexcept;
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  int size() const;

  // uhat_k = sum_j u_j e^{-2 pi i j k / N} (unnormalized forward DFT).
  void forward(std::span<const double> u, std::span<Complex> uhat);

  // u_j = (1/N) sum_k uhat_k e^{+2 pi i j k / N}; verifies and strips the
  // imaginary residue.
  void inverse(std::span<const Complex> uhat, std::span<double> u);

  static constexpr double kImagTol = 1e-10;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// r-th spectral derivative via the FFT-diagonal route, r in 1..4.
std::vector<double> apply_diff(const SpectralGrid& grid, Fft& fft,
                               std::span<const double> u, int r);

// Dense collocation differentiation matrix D_r from the closed-form
// cotangent/cosecant entries. Test oracle for the FFT path.
Eigen::MatrixXd dense_diff_matrix(const SpectralGrid& grid, int r);

// Helmholtz-type operator A_h u = (I - delta D2 + alpha D4) u and its
// inverse, both applied mode-by-mode. The per-mode factor
// 1 + delta (mu k)^2 + alpha (mu k)^4 is real and >= 1.
std::vector<double> apply_helmholtz(const SpectralGrid& grid,
                                    const EquationParams& params, Fft& fft,
                                    std::span<const double> u);
std::vector<double> apply_helmholtz_inverse(const SpectralGrid& grid,
                                            const EquationParams& params,
                                            Fft& fft,
                                            std::span<const double> u);

// <U,V>_h = h sum_j u_j v_j and the norms it induces.
double discrete_inner(std::span<const double> u, std::span<const double> v,
                      double h);
double discrete_norm2(std::span<const double> u, double h);
double discrete_norm_inf(std::span<const double> u);

}  // namespace rosenau
