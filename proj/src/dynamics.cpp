#include "rosenau/dynamics.hpp"

#include <cmath>
#include <string>

#include "rosenau/errors.hpp"

namespace rosenau {

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

void check_len(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": length " +
                         std::to_string(got) + ", expected " +
                         std::to_string(want));
  }
}

void check_p_supported_ep(int p) {
  if (p != 2 && p != 3 && p != 5) {
    throw UnsupportedError(
        "quadratic auxiliary variables are available for p in {2, 3, 5}; "
        "got p=" +
        std::to_string(p));
  }
}

}  // namespace

QavState qav_init(std::span<const double> u0, int p) {
  check_p_supported_ep(p);
  QavState s;
  s.u.assign(u0.begin(), u0.end());
  const std::size_t n = s.u.size();
  if (p == 5) {
    s.q1.resize(n);
    s.q2.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      s.q1[j] = s.u[j] * s.u[j];
      s.q2[j] = s.u[j] * s.q1[j];
    }
  } else {
    s.q.resize(n);
    for (std::size_t j = 0; j < n; ++j) s.q[j] = s.u[j] * s.u[j];
  }
  s.time = 0.0;
  return s;
}

QavStageView stage_view(const QavState& state) {
  return QavStageView{state.u, state.q, state.q1, state.q2};
}

std::vector<double> stage_velocity_mp(const SpectralGrid& grid,
                                      const EquationParams& params, Fft& fft,
                                      std::span<const double> u_stage) {
  check_len(u_stage.size(), grid.n, "stage_velocity_mp");
  const int n = grid.n;
  const double cnl = params.p * params.beta / (params.p + 1);

  std::vector<Complex> uhat(n);
  fft.forward(u_stage, uhat);

  // D1 u in physical space for the product term
  std::vector<Complex> zhat(n);
  for (int k = 0; k < n; ++k) zhat[k] = grid.odd_symbol[k] * uhat[k];
  std::vector<double> d1u(n);
  fft.inverse(zhat, d1u);

  std::vector<double> prod(n), upow(n);
  for (int j = 0; j < n; ++j) {
    const double up1 = ipow(u_stage[j], params.p - 1);
    prod[j] = up1 * d1u[j];
    upow[j] = up1 * u_stage[j];
  }
  std::vector<Complex> phat(n), qhat(n);
  fft.forward(prod, phat);
  fft.forward(upow, qhat);

  // F_h(U)U in Fourier space, then divide by the Helmholtz symbol
  for (int k = 0; k < n; ++k) {
    const Complex lam = grid.odd_symbol[k];
    const Complex lin = (params.kappa * lam +
                         params.b_disp * lam * lam * lam) *
                        uhat[k];
    const Complex rhs = -(lin + cnl * (phat[k] + lam * qhat[k]));
    const double t = grid.even_symbol[k].imag();
    const double t2 = t * t;
    const double ah = 1.0 + params.delta * t2 + params.alpha * t2 * t2;
    zhat[k] = rhs / ah;
  }
  std::vector<double> out(n);
  fft.inverse(zhat, out);
  return out;
}

std::vector<double> ep_gradient(const SpectralGrid& grid,
                                const EquationParams& params, Fft& fft,
                                const QavStageView& stage) {
  check_p_supported_ep(params.p);
  const int n = grid.n;
  check_len(stage.u.size(), n, "ep_gradient u");
  if (params.p == 5) {
    if (stage.q1.empty() || stage.q2.empty()) {
      throw StateError("ep_gradient: p=5 needs auxiliary fields q1 and q2");
    }
    check_len(stage.q1.size(), n, "ep_gradient q1");
    check_len(stage.q2.size(), n, "ep_gradient q2");
  } else {
    if (stage.q.empty()) {
      throw StateError("ep_gradient: p in {2, 3} needs auxiliary field q");
    }
    check_len(stage.q.size(), n, "ep_gradient q");
  }

  // kappa u + b D2 u
  std::vector<Complex> uhat(n);
  fft.forward(stage.u, uhat);
  for (int k = 0; k < n; ++k) {
    const Complex lt = grid.even_symbol[k];
    uhat[k] *= params.kappa + params.b_disp * (lt * lt).real();
  }
  std::vector<double> g(n);
  fft.inverse(uhat, g);

  switch (params.p) {
    case 2:
      for (int j = 0; j < n; ++j) {
        const double u = stage.u[j];
        g[j] += params.beta / 3.0 * stage.q[j] +
                2.0 * params.beta / 3.0 * u * u;
      }
      break;
    case 3:
      for (int j = 0; j < n; ++j) {
        g[j] += params.beta * stage.u[j] * stage.q[j];
      }
      break;
    case 5:
      for (int j = 0; j < n; ++j) {
        const double u = stage.u[j];
        g[j] += params.beta / 3.0 * stage.q2[j] *
                (stage.q1[j] + 2.0 * u * u);
      }
      break;
  }
  return g;
}

std::vector<double> apply_j(const SpectralGrid& grid,
                            const EquationParams& params, Fft& fft,
                            std::span<const double> g) {
  check_len(g.size(), grid.n, "apply_j");
  const int n = grid.n;
  std::vector<Complex> ghat(n);
  fft.forward(g, ghat);
  for (int k = 0; k < n; ++k) {
    const double t = grid.even_symbol[k].imag();
    const double t2 = t * t;
    const double ah = 1.0 + params.delta * t2 + params.alpha * t2 * t2;
    ghat[k] *= -grid.odd_symbol[k] / ah;
  }
  std::vector<double> out(n);
  fft.inverse(ghat, out);
  return out;
}

QavRates qav_stage_rates(const EquationParams& params,
                         std::span<const double> u_stage,
                         std::span<const double> k_stage,
                         std::span<const double> q1_stage) {
  check_len(k_stage.size(), u_stage.size(), "qav_stage_rates k");
  const std::size_t n = u_stage.size();
  QavRates r;
  r.l.resize(n);
  for (std::size_t j = 0; j < n; ++j) r.l[j] = 2.0 * u_stage[j] * k_stage[j];
  if (params.p == 5) {
    if (q1_stage.empty()) {
      throw StateError("qav_stage_rates: p=5 needs the q1 stage values");
    }
    check_len(q1_stage.size(), n, "qav_stage_rates q1");
    r.m.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      r.m[j] = k_stage[j] * q1_stage[j] +
               2.0 * u_stage[j] * u_stage[j] * k_stage[j];
    }
  }
  return r;
}

}  // namespace rosenau
