// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any fails. Thresholds are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rosenau/cli.hpp"
#include "rosenau/errors.hpp"
#include "rosenau/integrator.hpp"
#include "rosenau/problems.hpp"
#include "rosenau/tableau.hpp"
#include "test_util.hpp"

using namespace rosenau;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      detail = why;
    }
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------- criterion 1

void tableau_regression(Check& c) {
  const double r3 = std::sqrt(3.0), r15 = std::sqrt(15.0);
  const ButcherTableau g2 = gauss_legendre(2);
  const double c2[] = {0.5 - r3 / 6, 0.5 + r3 / 6};
  const double a2[] = {0.25, 0.25 - r3 / 6, 0.25 + r3 / 6, 0.25};
  const double b2[] = {0.5, 0.5};
  for (int i = 0; i < 2; ++i) {
    c.require(std::abs(g2.c[i] - c2[i]) < 1e-14, "s=2 c mismatch");
    c.require(std::abs(g2.b[i] - b2[i]) < 1e-14, "s=2 b mismatch");
    for (int j = 0; j < 2; ++j) {
      c.require(std::abs(g2.aij(i, j) - a2[2 * i + j]) < 1e-14,
                "s=2 a mismatch");
    }
  }
  const ButcherTableau g3 = gauss_legendre(3);
  const double c3[] = {0.5 - r15 / 10, 0.5, 0.5 + r15 / 10};
  const double a3[] = {5.0 / 36,            2.0 / 9 - r15 / 15,
                       5.0 / 36 - r15 / 30, 5.0 / 36 + r15 / 24,
                       2.0 / 9,             5.0 / 36 - r15 / 24,
                       5.0 / 36 + r15 / 30, 2.0 / 9 + r15 / 15,
                       5.0 / 36};
  const double b3[] = {5.0 / 18, 4.0 / 9, 5.0 / 18};
  for (int i = 0; i < 3; ++i) {
    c.require(std::abs(g3.c[i] - c3[i]) < 1e-14, "s=3 c mismatch");
    c.require(std::abs(g3.b[i] - b3[i]) < 1e-14, "s=3 b mismatch");
    for (int j = 0; j < 3; ++j) {
      c.require(std::abs(g3.aij(i, j) - a3[3 * i + j]) < 1e-14,
                "s=3 a mismatch");
    }
  }
  for (int s = 1; s <= 6; ++s) {
    const double d = symplectic_defect(gauss_legendre(s));
    c.require(d < 1e-13, "symplectic defect " + fmt(d) + " at s=" +
                             std::to_string(s));
  }
}

// ---------------------------------------------------------- criterion 2

void operator_equivalence(Check& c) {
  int seed = 9000;
  for (int n : {8, 16, 32}) {
    const SpectralGrid g = build_grid(n, -1.0, 2.5);
    Fft fft(n);
    for (int r = 1; r <= 4; ++r) {
      const auto u = testutil::rand_vec(n, static_cast<std::uint32_t>(seed++));
      const auto fast = apply_diff(g, fft, u, r);
      const Eigen::VectorXd dense =
          dense_diff_matrix(g, r) * testutil::to_eigen(u);
      const double err = testutil::max_abs_diff(
          fast, testutil::from_eigen(dense));
      const double scale = dense.cwiseAbs().maxCoeff();
      c.require(err < 1e-10 * scale, "N=" + std::to_string(n) + " r=" +
                                         std::to_string(r) + " rel err " +
                                         fmt(err / scale));
    }
  }
}

// ---------------------------------------------------------- criterion 3

void table2_reproduction(Check& c) {
  const std::vector<double> ep_ref = {1.585e-09, 9.905e-11, 6.191e-12,
                                      3.867e-13};
  const std::vector<double> mp_ref = {1.518e-09, 9.490e-11, 5.932e-12,
                                      3.706e-13};
  for (const bool energy : {true, false}) {
    RunConfig cfg;
    cfg.preset = "kdv-case1";
    cfg.scheme = energy ? Scheme::energy : Scheme::momentum;
    cfg.stages = 2;
    cfg.n_modes = 1024;
    cfg.dts = {1.0 / 10, 1.0 / 20, 1.0 / 40, 1.0 / 80};
    cfg.t_end = 1.0;
    const ConvergeResult res = run_converge(cfg);
    const auto& ref = energy ? ep_ref : mp_ref;
    const char* tag = energy ? "EP" : "MP";
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const double e2 = res.cases[i].row.e2;
      c.require(std::abs(e2 / ref[i] - 1.0) <= 0.25,
                std::string(tag) + " e2[" + std::to_string(i) + "]=" +
                    fmt(e2) + " vs " + fmt(ref[i]));
      if (i > 0) {
        const double order = res.cases[i].row.order2.value_or(0.0);
        c.require(std::abs(order - 4.0) <= 0.05,
                  std::string(tag) + " order " + fmt(order));
      }
    }
  }
}

// ---------------------------------------------------------- criterion 4

void sixth_order(Check& c) {
  for (const bool energy : {false, true}) {
    RunConfig cfg;
    cfg.preset = "rlw-p2";
    cfg.scheme = energy ? Scheme::energy : Scheme::momentum;
    cfg.stages = 3;
    cfg.n_modes = 512;
    cfg.dts = {1.0, 0.5, 0.25, 0.125};
    cfg.t_end = 2.0;
    const ConvergeResult res = run_converge(cfg);
    const double order = res.mean_order2.value_or(0.0);
    c.require(order >= 5.7 && order <= 6.3,
              std::string(energy ? "EP" : "MP") + " mean order " + fmt(order));
  }
}

// ---------------------------------------------------------- criterion 5

void long_run_drifts(Check& c) {
  for (int p : {2, 3, 5}) {
    for (const bool energy : {false, true}) {
      RunConfig cfg;
      cfg.preset = "gaussian-rlw-p" + std::to_string(p);
      cfg.scheme = energy ? Scheme::energy : Scheme::momentum;
      cfg.stages = 2;
      cfg.n_modes = 3000;  // h = 0.1 on [-50, 250]
      cfg.dts = {0.1};
      cfg.t_end = 100.0;
      cfg.record_every = 100;
      const EvolveResultCli res = run_evolve(cfg);
      const auto& first = res.rows.front().record;
      const std::string tag =
          std::string(energy ? "EP" : "MP") + " p=" + std::to_string(p);
      double mass = 0, mom = 0, ham = 0, quad = 0, defect = 0;
      for (const auto& row : res.rows) {
        mass = std::max(mass, std::abs(row.record.mass - first.mass));
        mom = std::max(mom, std::abs(row.record.momentum - first.momentum));
        ham = std::max(ham,
                       std::abs(row.record.hamiltonian - first.hamiltonian));
        if (row.record.quad_energy) {
          quad = std::max(quad, std::abs(*row.record.quad_energy -
                                         *first.quad_energy));
          defect = std::max(defect, *row.record.qav_defect);
        }
      }
      if (!energy) {
        c.require(mom < 1e-9, tag + " momentum drift " + fmt(mom));
        if (p == 2) c.require(mass < 1e-9, tag + " mass drift " + fmt(mass));
      } else {
        c.require(ham < 1e-9, tag + " hamiltonian drift " + fmt(ham));
        c.require(quad < 1e-9, tag + " quad-energy drift " + fmt(quad));
        c.require(mass < 1e-9, tag + " mass drift " + fmt(mass));
        c.require(defect < 1e-9, tag + " QAV defect " + fmt(defect));
      }
    }
  }
}

// ---------------------------------------------------------- criterion 6

void property_suite(Check& c) {
  // operator symmetry classes
  for (int n : {8, 16, 32}) {
    const SpectralGrid g = build_grid(n, -1.5, 2.0);
    for (int r : {1, 3}) {
      const Eigen::MatrixXd d = dense_diff_matrix(g, r);
      c.require((d + d.transpose()).cwiseAbs().maxCoeff() < 1e-10,
                "D" + std::to_string(r) + " not antisymmetric");
    }
    for (int r : {2, 4}) {
      const Eigen::MatrixXd d = dense_diff_matrix(g, r);
      c.require((d - d.transpose()).cwiseAbs().maxCoeff() < 1e-10,
                "D" + std::to_string(r) + " not symmetric");
    }
  }

  // anti-adjointness of the discrete flows
  {
    const SpectralGrid g = build_grid(64, -3.0, 3.0);
    Fft fft(g.n);
    for (int p_exp : {2, 3, 5}) {
      const EquationParams p{1.1, 0.7, 0.5, 0.9, 1.2, p_exp};
      const auto u = testutil::rand_vec(g.n, 500 + p_exp);
      const auto fhu = apply_helmholtz(g, p, fft,
                                       stage_velocity_mp(g, p, fft, u));
      const double ip = discrete_inner(fhu, u, g.h);
      c.require(std::abs(ip) < 1e-10 * discrete_inner(u, u, g.h),
                "<F_h(U)U, U> = " + fmt(ip));
    }
    const EquationParams p{1.0, 0.6, 0.0, 0.8, 1.0, 2};
    const auto gv = testutil::rand_vec(g.n, 510);
    const auto jg = apply_j(g, p, fft, gv);
    c.require(std::abs(discrete_inner(jg, gv, g.h)) <
                  1e-11 * discrete_inner(gv, gv, g.h),
              "<J g, g> too large");
  }

  // time-reversibility round trip
  {
    const ProblemPreset pre = preset("kdv-case1");
    const SpectralGrid g = build_grid(128, pre.x_left, pre.x_right);
    std::vector<double> u0(g.n);
    for (int j = 0; j < g.n; ++j) u0[j] = pre.initial(g.nodes[j]);
    MomentumIntegrator integ(g, pre.params, gauss_legendre(2));
    auto u = u0;
    for (int k = 0; k < 10; ++k) integ.step(u, 0.1);
    for (int k = 0; k < 10; ++k) integ.step(u, -0.1);
    c.require(testutil::max_abs_diff(u, u0) < 1e-9,
              "round trip error " + fmt(testutil::max_abs_diff(u, u0)));
  }

  // QAV consistency identities
  {
    const SpectralGrid g = build_grid(64, -2.0, 2.0);
    Fft fft(g.n);
    for (int p_exp : {2, 3, 5}) {
      const EquationParams p{0.9, 1.0, 0.8, 1.0, 1.4, p_exp};
      const auto u = testutil::rand_vec(g.n, 520 + p_exp);
      const QavState s = qav_init(u, p_exp);
      const auto rec = invariants(g, p, fft, s);
      c.require(*rec.qav_defect == 0.0, "fresh QAV defect nonzero");
      const auto grad = ep_gradient(g, p, fft, stage_view(s));
      const auto d2u = apply_diff(g, fft, u, 2);
      double worst = 0.0;
      for (int j = 0; j < g.n; ++j) {
        const double expect = p.kappa * u[j] + p.b_disp * d2u[j] +
                              p.beta * testutil::ipow(u[j], p_exp);
        worst = std::max(worst, std::abs(grad[j] - expect));
      }
      c.require(worst < 1e-12, "gradient consistency " + fmt(worst));
    }
  }

  // exact solutions satisfy the equation (finite-difference residual)
  {
    struct CaseDef {
      std::function<double(double, double)> u;
      EquationParams p;
      double speed;
    };
    std::vector<CaseDef> cases;
    for (int p_exp : {2, 3, 5}) {
      cases.push_back({[p_exp](double x, double t) {
                         return rlw_soliton(p_exp, x, t);
                       },
                       EquationParams{1.0, 1.0, 0.0, 1.0, 1.0, p_exp},
                       0.0});
    }
    cases.push_back({[](double x, double t) {
                       return kdv_soliton(KdvCase::p2, x, t);
                     },
                     EquationParams{1.0, 0.0, 1.0, 1.0, 0.5, 2}, 0.0});
    cases.push_back({[](double x, double t) {
                       return kdv_soliton(KdvCase::p3, x, t);
                     },
                     EquationParams{1.0, 0.0, 1.0, 1.0, 1.0, 3}, 0.0});
    cases.push_back({[](double x, double t) {
                       return kdv_soliton(KdvCase::p5, x, t);
                     },
                     EquationParams{1.0, 0.0, 1.0, 1.0, 1.0, 5}, 0.0});

    const auto pts = testutil::rand_vec(40, 4242);
    for (const auto& cd : cases) {
      for (int i = 0; i < 20; ++i) {
        const double x = 5.0 * pts[(2 * i) % pts.size()];
        const double t = 1.0 + pts[(2 * i + 1) % pts.size()];
        const double hx = 0.1, ht = 0.05;
        // residual assembled exactly as in the unit oracle
        const auto fdx = [&](int d, double tt) {
          return testutil::fd_x(cd.u, x, tt, d, 5, hx);
        };
        const auto dt_of = [&](const std::function<double(double)>& f) {
          std::vector<double> ts(7);
          for (int k = 0; k < 7; ++k) ts[k] = t + (k - 3) * ht;
          const auto w = testutil::fd_weights(t, ts, 1);
          double acc = 0.0;
          for (int k = 0; k < 7; ++k) acc += w[k] * f(ts[k]);
          return acc;
        };
        const double res =
            dt_of([&](double tt) { return cd.u(x, tt); }) +
            cd.p.kappa * fdx(1, t) -
            cd.p.delta * dt_of([&](double tt) { return fdx(2, tt); }) +
            cd.p.b_disp * fdx(3, t) +
            cd.p.alpha * dt_of([&](double tt) { return fdx(4, tt); }) +
            cd.p.beta * testutil::fd_x(
                            [&](double xx, double tt) {
                              return testutil::ipow(cd.u(xx, tt), cd.p.p);
                            },
                            x, t, 1, 5, hx);
        c.require(std::abs(res) < 1e-6, "PDE residual " + fmt(res));
      }
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"1. tableau regression (Table-1 coefficients, symplectic defect)",
       tableau_regression},
      {"2. FFT-diagonal operators match the dense entry formulas",
       operator_equivalence},
      {"3. kdv-case1 error table reproduction (4th-order schemes)",
       table2_reproduction},
      {"4. sixth-order temporal accuracy (s = 3, both schemes)", sixth_order},
      {"5. long-run invariant drifts (gaussian, t = 100, tau = h = 0.1)",
       long_run_drifts},
      {"6. property suite (symmetry, anti-adjointness, reversibility, "
       "QAV identities, PDE residuals)",
       property_suite},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criterion.run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%s] %s (%.1fs)%s%s\n", c.ok ? "PASS" : "FAIL",
                criterion.name.c_str(), secs, c.ok ? "" : " -- ",
                c.detail.c_str());
    std::fflush(stdout);
    failures += c.ok ? 0 : 1;
  }
  std::printf(
      "[SKIP] 7. CPU-time frontier against external schemes: out of scope "
      "(external baselines/hardware); wall-clock is reported per converge "
      "case instead\n");
  return failures;
}
