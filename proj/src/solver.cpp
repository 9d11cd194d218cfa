#include "wg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wg {

namespace {

YGrid make_ygrid(const BaseInterval& base, std::size_t J) {
  const std::size_t n = std::max<std::size_t>(2 * J + 1, 5);
  return uniform_trapezoid_grid(base.a, base.b, n);
}

double cfl_limit(const GridSpec& grid, const ModeSpectrum& spec) {
  const double lam_max = spec.lambdas.empty() ? 0.0 : spec.lambdas.back();
  double lim = 0.7 * grid.dr();
  if (lam_max > 0.0) lim = std::min(lim, 1.4 / lam_max);
  return lim;
}

struct ModeWork {
  // per-mode scratch arrays, [j][i]
  std::vector<std::vector<double>> vpp, u, ut, ur, utr, urr, lin, fj;
  std::vector<std::vector<double>> accel;  // output: d2v/dt2
  void resize(std::size_t J, std::size_t n) {
    auto rs = [&](std::vector<std::vector<double>>& a) {
      a.assign(J, std::vector<double>(n, 0.0));
    };
    rs(vpp); rs(u); rs(ut); rs(ur); rs(utr); rs(urr); rs(lin); rs(fj); rs(accel);
  }
};

// gamma^{jk} = -sum_l B^{jk}_l d_l u must stay well inside the hyperbolic
// window; sum |gamma| <= 1/2 mirrors the energy-estimate smallness assumption.
double gamma_sum(const Nonlinearity& nl, const double du[5]) {
  double s = 0.0;
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k) {
      double g = 0.0;
      for (int l = 0; l < 5; ++l) g += nl.B[j][k][l] * du[l];
      s += std::abs(g);
    }
  return s;
}

}  // namespace

double WaveguideState::u_of(std::size_t j, std::size_t i) const {
  if (i == 0) {
    // parabolic-odd limit: u(0) = v'(0) from the first two interior nodes
    const double dr = grid.dr();
    return (8.0 * v[j][1] - v[j][2]) / (6.0 * dr);
  }
  return v[j][i] / (static_cast<double>(i) * grid.dr());
}

double WaveguideState::ut_of(std::size_t j, std::size_t i) const {
  if (i == 0) {
    const double dr = grid.dr();
    return (8.0 * vt[j][1] - vt[j][2]) / (6.0 * dr);
  }
  return vt[j][i] / (static_cast<double>(i) * grid.dr());
}

double WaveguideState::u_phys(std::size_t i, std::size_t q) const {
  double s = 0.0;
  for (std::size_t j = 1; j <= spec.J; ++j) {
    const double e = eigenfunction_values(spec, j, ygrid)[q];
    s += u_of(j - 1, i) * e;
  }
  return s;
}

WaveguideState make_state(const InitialData& data, const BaseInterval& base,
                          std::size_t J, const GridSpec& grid, double t0) {
  WaveguideState st;
  st.t = t0;
  st.grid = grid;
  st.spec = build_spectrum(base, J);
  st.ygrid = make_ygrid(base, J);
  st.v.assign(J, std::vector<double>(grid.M + 1, 0.0));
  st.vt.assign(J, std::vector<double>(grid.M + 1, 0.0));
  const double dr = grid.dr();
  for (std::size_t j = 0; j < J; ++j) {
    const double af = j < data.mode_f.size() ? data.mode_f[j] : 0.0;
    const double ag = j < data.mode_g.size() ? data.mode_g[j] : 0.0;
    for (std::size_t i = 0; i <= grid.M; ++i) {
      const double r = static_cast<double>(i) * dr;
      st.v[j][i] = r * data.eps * af * data.profile(r);
      st.vt[j][i] = r * data.eps * ag * data.profile(r);
    }
  }
  return st;
}

namespace {

// Assembles d2v/dt2 for the current (v, vt) at time t.
void eval_accel(const WaveguideState& st, const Nonlinearity& nl,
                const ModeForcing& forcing, double t,
                const std::vector<std::vector<double>>& v,
                const std::vector<std::vector<double>>& vt, ModeWork& w,
                const std::vector<std::vector<double>>& E,
                const std::vector<std::vector<double>>& Ep) {
  const std::size_t J = st.spec.J;
  const std::size_t M = st.grid.M;
  const double dr = st.grid.dr();
  const bool quasi = nl.has_quasilinear();
  bool nonlinear = quasi;
  if (!nonlinear)
    for (int a = 0; a < 5 && !nonlinear; ++a)
      for (int b = 0; b < 5; ++b)
        if (nl.R[a][b] != 0.0) { nonlinear = true; break; }

  for (std::size_t j = 0; j < J; ++j) {
    auto& vpp = w.vpp[j];
    for (std::size_t i = 1; i < M; ++i)
      vpp[i] = (v[j][i + 1] - 2.0 * v[j][i] + v[j][i - 1]) / (dr * dr);
    vpp[0] = 0.0;
    vpp[M] = 0.0;
    if (forcing)
      for (std::size_t i = 0; i <= M; ++i)
        w.fj[j][i] = forcing(t, static_cast<double>(i) * dr, j);
  }

  if (!nonlinear) {
    for (std::size_t j = 0; j < J; ++j) {
      const double lam2 = st.spec.lambdas[j] * st.spec.lambdas[j];
      auto& acc = w.accel[j];
      for (std::size_t i = 1; i < M; ++i) {
        const double r = static_cast<double>(i) * dr;
        acc[i] = w.vpp[j][i] - lam2 * v[j][i] + (forcing ? r * w.fj[j][i] : 0.0);
      }
      acc[0] = 0.0;
      acc[M] = 0.0;
    }
    return;
  }

  // physical-space assembly of the nonlinear correction
  for (std::size_t j = 0; j < J; ++j) {
    const double lam2 = st.spec.lambdas[j] * st.spec.lambdas[j];
    for (std::size_t i = 1; i < M; ++i) {
      const double r = static_cast<double>(i) * dr;
      const double vm = v[j][i - 1], v0 = v[j][i], vp = v[j][i + 1];
      const double wm = vt[j][i - 1], w0 = vt[j][i], wp = vt[j][i + 1];
      const double vr = (vp - vm) / (2.0 * dr);
      const double wr = (wp - wm) / (2.0 * dr);
      w.u[j][i] = v0 / r;
      w.ut[j][i] = w0 / r;
      w.ur[j][i] = vr / r - v0 / (r * r);
      w.utr[j][i] = wr / r - w0 / (r * r);
      // u_rr = v''/r - 2 v'/r^2 + 2 v/r^3
      w.urr[j][i] = w.vpp[j][i] / r - 2.0 * vr / (r * r) + 2.0 * v0 / (r * r * r);
      w.lin[j][i] = (w.vpp[j][i] - lam2 * v0) / r;
    }
  }

  const std::size_t Ny = st.ygrid.size();
  std::vector<double> nlc(Ny);
  for (std::size_t j = 0; j < J; ++j) {
    w.accel[j][0] = 0.0;
    w.accel[j][M] = 0.0;
  }
  for (std::size_t i = 1; i < M; ++i) {
    const double r = static_cast<double>(i) * dr;
    for (std::size_t q = 0; q < Ny; ++q) {
      double ut = 0, ur = 0, uy = 0, utr = 0, urr = 0, uty = 0, ury = 0, uyy = 0,
             lin = 0, fext = 0;
      for (std::size_t j = 0; j < J; ++j) {
        const double e = E[j][q], ep = Ep[j][q];
        const double lam2 = st.spec.lambdas[j] * st.spec.lambdas[j];
        ut += w.ut[j][i] * e;
        ur += w.ur[j][i] * e;
        utr += w.utr[j][i] * e;
        urr += w.urr[j][i] * e;
        lin += w.lin[j][i] * e;
        uy += w.u[j][i] * ep;
        uty += w.ut[j][i] * ep;
        ury += w.ur[j][i] * ep;
        uyy += -lam2 * w.u[j][i] * e;
        if (forcing) fext += w.fj[j][i] * e;
      }
      const double du[5] = {ut, ur, 0.0, 0.0, uy};
      double rest = 0.0;
      double dtt_coeff = 0.0;
      if (quasi) {
        double d2u[5][5] = {};
        d2u[0][1] = d2u[1][0] = utr;
        d2u[1][1] = urr;
        d2u[2][2] = d2u[3][3] = ur / r;
        d2u[0][4] = d2u[4][0] = uty;
        d2u[1][4] = d2u[4][1] = ury;
        d2u[4][4] = uyy;
        for (int a = 0; a < 5; ++a)
          for (int b = 0; b < 5; ++b) {
            double c = 0.0;
            for (int l = 0; l < 5; ++l) c += nl.B[a][b][l] * du[l];
            if (a == 0 && b == 0)
              dtt_coeff = c;
            else
              rest += c * d2u[a][b];
          }
        const double gs = gamma_sum(nl, du);
        if (gs > 0.5)
          throw HyperbolicityLoss("quasilinear coefficient sum " +
                                  std::to_string(gs) + " exceeded 1/2 at t=" +
                                  std::to_string(t));
      }
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
          if (nl.R[a][b] != 0.0) rest += nl.R[a][b] * du[a] * du[b];
      const double denom = 1.0 - dtt_coeff;
      if (std::abs(denom) < 0.5)
        throw HyperbolicityLoss("time-slice coefficient 1-c = " +
                                std::to_string(denom) + " below 1/2 at t=" +
                                std::to_string(t));
      nlc[q] = (rest + fext + dtt_coeff * lin) / denom;
    }
    // project the correction back onto the retained modes
    for (std::size_t j = 0; j < J; ++j) {
      double s = 0.0;
      for (std::size_t q = 0; q < Ny; ++q)
        s += st.ygrid.weights[q] * nlc[q] * E[j][q];
      const double lam2 = st.spec.lambdas[j] * st.spec.lambdas[j];
      w.accel[j][i] = w.vpp[j][i] - lam2 * v[j][i] + r * s;
    }
  }
}

struct BasisCache {
  std::vector<std::vector<double>> E, Ep;  // [j][q]
};

BasisCache basis_cache(const WaveguideState& st) {
  BasisCache b;
  b.E.resize(st.spec.J);
  b.Ep.resize(st.spec.J);
  for (std::size_t j = 1; j <= st.spec.J; ++j) {
    b.E[j - 1] = eigenfunction_values(st.spec, j, st.ygrid);
    b.Ep[j - 1] = eigenfunction_derivative_values(st.spec, j, st.ygrid);
  }
  return b;
}

}  // namespace

namespace {

void step_with_basis(WaveguideState& st, const Nonlinearity& nl, double dt,
                     const ModeForcing& forcing, const BasisCache& basis,
                     ModeWork& work) {
  if (dt > cfl_limit(st.grid, st.spec))
    throw StepRejected("step_physical: dt=" + std::to_string(dt) +
                       " violates the CFL limit " +
                       std::to_string(cfl_limit(st.grid, st.spec)));
  const std::size_t J = st.spec.J, n = st.grid.M + 1;
  work.resize(J, n);

  auto axpy = [&](std::vector<std::vector<double>>& out,
                  const std::vector<std::vector<double>>& a, double c,
                  const std::vector<std::vector<double>>& b) {
    for (std::size_t j = 0; j < out.size(); ++j)
      for (std::size_t i = 0; i < out[j].size(); ++i)
        out[j][i] = a[j][i] + c * b[j][i];
  };

  std::vector<std::vector<double>> v1 = st.v, w1 = st.vt;
  std::vector<std::vector<double>> k1v, k1w, k2v, k2w, k3v, k3w, k4v, k4w;

  eval_accel(st, nl, forcing, st.t, st.v, st.vt, work, basis.E, basis.Ep);
  k1v = st.vt;
  k1w = work.accel;

  axpy(v1, st.v, dt / 2, k1v);
  axpy(w1, st.vt, dt / 2, k1w);
  eval_accel(st, nl, forcing, st.t + dt / 2, v1, w1, work, basis.E, basis.Ep);
  k2v = w1;
  k2w = work.accel;

  axpy(v1, st.v, dt / 2, k2v);
  axpy(w1, st.vt, dt / 2, k2w);
  eval_accel(st, nl, forcing, st.t + dt / 2, v1, w1, work, basis.E, basis.Ep);
  k3v = w1;
  k3w = work.accel;

  axpy(v1, st.v, dt, k3v);
  axpy(w1, st.vt, dt, k3w);
  eval_accel(st, nl, forcing, st.t + dt, v1, w1, work, basis.E, basis.Ep);
  k4v = w1;
  k4w = work.accel;

  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      st.v[j][i] += dt / 6.0 *
                    (k1v[j][i] + 2.0 * k2v[j][i] + 2.0 * k3v[j][i] + k4v[j][i]);
      st.vt[j][i] += dt / 6.0 *
                     (k1w[j][i] + 2.0 * k2w[j][i] + 2.0 * k3w[j][i] + k4w[j][i]);
    }
  st.t += dt;
}

}  // namespace

void step_physical(WaveguideState& st, const Nonlinearity& nl, double dt,
                   const ModeForcing& forcing) {
  const BasisCache basis = basis_cache(st);
  ModeWork work;
  step_with_basis(st, nl, dt, forcing, basis, work);
}

double discrete_energy(const WaveguideState& st) {
  const double dr = st.grid.dr();
  double total = 0.0;
  for (std::size_t j = 0; j < st.spec.J; ++j) {
    const double lam2 = st.spec.lambdas[j] * st.spec.lambdas[j];
    double s = 0.0;
    for (std::size_t i = 0; i <= st.grid.M; ++i) {
      s += st.vt[j][i] * st.vt[j][i] + lam2 * st.v[j][i] * st.v[j][i];
      if (i < st.grid.M) {
        const double d = (st.v[j][i + 1] - st.v[j][i]) / dr;
        s += d * d;
      }
    }
    total += s * dr;
  }
  return 2.0 * M_PI * total;
}

double forcing_l2_norm(const ModeForcing& f, double t, const GridSpec& grid,
                       std::size_t J) {
  if (!f) return 0.0;
  const double dr = grid.dr();
  double total = 0.0;
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t i = 0; i <= grid.M; ++i) {
      const double r = static_cast<double>(i) * dr;
      const double v = f(t, r, j);
      double w = 4.0 * M_PI * r * r * dr;
      if (i == 0 || i == grid.M) w *= 0.5;
      total += w * v * v;
    }
  }
  return std::sqrt(total);
}

namespace {

void gate_compatibility(const Nonlinearity& nl) {
  bool quasi_y = false;
  for (int j = 0; j < 5 && !quasi_y; ++j)
    for (int k = 0; k < 5 && !quasi_y; ++k)
      for (int l = 0; l < 5; ++l)
        if (nl.B[j][k][l] != 0.0 && (j == 4 || k == 4 || l == 4)) {
          quasi_y = true;
          break;
        }
  if (!quasi_y) return;
  const CompatReport rep = check_neumann_compatibility(nl);
  if (!rep.compatible)
    throw IncompatibleNonlinearity(
        "evolve: quasilinear y-terms violate the Neumann compatibility "
        "condition (closed-form defect " +
        std::to_string(rep.closed_form_max) + ")");
}

}  // namespace

RunResult evolve(WaveguideState st, const Nonlinearity& nl,
                 const EvolveOptions& opts) {
  gate_compatibility(nl);
  RunResult out;
  out.spec = st.spec;
  out.grid = st.grid;
  out.t0 = st.t;

  const double lim = cfl_limit(st.grid, st.spec);
  double dt = std::min(opts.cfl * st.grid.dr(), lim * 0.95);
  if (!st.spec.lambdas.empty() && st.spec.lambdas.back() > 0.0)
    dt = std::min(dt, opts.cfl * 2.0 / st.spec.lambdas.back());
  const double span = opts.T_end - st.t;
  if (span <= 0.0) throw std::invalid_argument("evolve: T_end must exceed t0");
  const std::size_t steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / dt)));
  dt = span / static_cast<double>(steps);
  out.dt = dt;

  const std::size_t out_stride =
      opts.out_every <= 0.0
          ? 1
          : std::max<std::size_t>(1, std::llround(opts.out_every / dt));

  const BasisCache basis = basis_cache(st);
  ModeWork work;
  const double dr = st.grid.dr();
  const std::size_t J = st.spec.J, M = st.grid.M;
  double support_r0 = -1.0;
  std::size_t steps_done = 0;

  double theta = 0.0;
  auto sup_ut_phys = [&]() {
    double m = 0.0;
    for (std::size_t i = 0; i <= M; ++i)
      for (std::size_t q = 0; q < st.ygrid.size(); ++q) {
        double s = 0.0;
        for (std::size_t j = 0; j < J; ++j) s += st.ut_of(j, i) * basis.E[j][q];
        m = std::max(m, std::abs(s));
      }
    return m;
  };
  auto sup_du_initial = [&]() {
    double m = sup_ut_phys();
    for (std::size_t j = 0; j < J; ++j)
      for (std::size_t i = 1; i < M; ++i) {
        const double r = static_cast<double>(i) * dr;
        const double vr = (st.v[j][i + 1] - st.v[j][i - 1]) / (2.0 * dr);
        m = std::max(m, std::abs(vr / r - st.v[j][i] / (r * r)));
      }
    return m;
  };
  theta = opts.theta_factor * std::max(sup_du_initial(), 1e-6);

  auto record = [&]() {
    out.sups.t.push_back(st.t);
    std::vector<double> su(J, 0.0), sdu(J, 0.0);
    for (std::size_t j = 0; j < J; ++j) {
      for (std::size_t i = 0; i <= M; ++i) {
        const double u = st.u_of(j, i);
        su[j] = std::max(su[j], std::abs(u));
        double urv = 0.0;
        if (i >= 1 && i < M) {
          const double r = static_cast<double>(i) * dr;
          const double vr = (st.v[j][i + 1] - st.v[j][i - 1]) / (2.0 * dr);
          urv = vr / r - st.v[j][i] / (r * r);
        }
        const double du = std::hypot(st.ut_of(j, i), urv);
        sdu[j] = std::max(sdu[j], du);
      }
    }
    out.sups.sup_u.push_back(su);
    out.sups.sup_du.push_back(sdu);
    double sdy = 0.0;
    if (J > 1) {
      for (std::size_t i = 0; i <= M; ++i)
        for (std::size_t q = 0; q < st.ygrid.size(); ++q) {
          double s = 0.0;
          for (std::size_t j = 0; j < J; ++j)
            s += st.u_of(j, i) * basis.Ep[j][q];
          sdy = std::max(sdy, std::abs(s));
        }
    }
    out.sups.sup_dy.push_back(sdy);
    out.sups.sup_ut_all.push_back(sup_ut_phys());

    out.energy.t.push_back(st.t);
    out.energy.energy.push_back(discrete_energy(st));
    const double fl2 = forcing_l2_norm(opts.forcing, st.t, st.grid, J);
    out.energy.forcing_l2.push_back(fl2);
    if (out.energy.forcing_int.empty())
      out.energy.forcing_int.push_back(0.0);
    else {
      const double prev = out.energy.forcing_l2[out.energy.forcing_l2.size() - 2];
      const double dt_out = out.energy.t.back() - out.energy.t[out.energy.t.size() - 2];
      out.energy.forcing_int.push_back(out.energy.forcing_int.back() +
                                       0.5 * dt_out * (prev + fl2));
    }

    if (opts.store_snapshots) out.snapshots.push_back({st.t, st.v, st.vt});

    // finite propagation + artificial boundary activity
    double support_now = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
      out.boundary_activity = std::max(
          out.boundary_activity,
          std::max(std::abs(st.v[j][M]), std::abs(st.v[j][M - 1])));
      double vmax = 0.0;
      for (std::size_t i = 0; i <= M; ++i)
        vmax = std::max(vmax, std::max(std::abs(st.v[j][i]), std::abs(st.vt[j][i])));
      for (std::size_t i = M + 1; i-- > 0;) {
        if (std::abs(st.v[j][i]) > 1e-12 * std::max(vmax, 1e-30) ||
            std::abs(st.vt[j][i]) > 1e-12 * std::max(vmax, 1e-30)) {
          support_now = std::max(support_now, static_cast<double>(i) * dr);
          break;
        }
      }
    }
    if (support_r0 < 0.0) {
      support_r0 = support_now;
    } else {
      // unit speed plus one stencil cell per step (the discrete cone)
      const double allowed = support_r0 + (st.t - out.t0) +
                             static_cast<double>(steps_done) * dr +
                             static_cast<double>(opts.support_margin_cells) * dr;
      if (support_now > allowed) out.support_ok = false;
    }
  };

  record();
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t_before = st.t;
    steps_done = s;
    try {
      step_with_basis(st, nl, dt, opts.forcing, basis, work);
    } catch (const HyperbolicityLoss& e) {
      out.blowup.blew_up = true;
      out.blowup.t_last_good = t_before;
      out.blowup.t_fail = t_before + dt;
      out.blowup.reason = e.what();
      return out;
    }
    bool bad = false;
    for (std::size_t j = 0; j < J && !bad; ++j)
      for (std::size_t i = 0; i <= M; i += 7)
        if (!std::isfinite(st.v[j][i])) {
          bad = true;
          break;
        }
    if (opts.detect_blowup || bad) {
      const double m = sup_ut_phys();
      if (bad || m > theta) {
        out.blowup.blew_up = true;
        out.blowup.t_last_good = t_before;
        out.blowup.t_fail = st.t;
        out.blowup.reason = bad ? "non-finite state" : "amplitude guard";
        return out;
      }
    }
    if (s % out_stride == 0 || s == steps) record();
  }
  return out;
}

RunResult evolve(const InitialData& data, const BaseInterval& base, std::size_t J,
                 const GridSpec& grid, double t0, const Nonlinearity& nl,
                 const EvolveOptions& opts) {
  return evolve(make_state(data, base, J, grid, t0), nl, opts);
}

// --- standalone radial path --------------------------------------------------

Radial3dState make_radial3d_state(const InitialData& data, const GridSpec& grid,
                                  double t0) {
  Radial3dState st;
  st.t = t0;
  st.grid = grid;
  st.u.assign(grid.M + 1, 0.0);
  st.ut.assign(grid.M + 1, 0.0);
  const double amp_f = data.mode_f.empty() ? 0.0 : data.mode_f[0];
  const double amp_g = data.mode_g.empty() ? 0.0 : data.mode_g[0];
  for (std::size_t i = 0; i <= grid.M; ++i) {
    const double r = static_cast<double>(i) * grid.dr();
    st.u[i] = data.eps * amp_f * data.profile(r);
    st.ut[i] = data.eps * amp_g * data.profile(r);
  }
  return st;
}

namespace {

void radial3d_accel(const Radial3dState& st, const Nonlinearity& nl,
                    const RadialForcing& forcing, double t,
                    const std::vector<double>& u, const std::vector<double>& ut,
                    std::vector<double>& acc) {
  const std::size_t M = st.grid.M;
  const double dr = st.grid.dr();
  acc.assign(M + 1, 0.0);
  const bool quasi = nl.has_quasilinear();
  for (std::size_t i = 0; i < M; ++i) {
    double lap, ur, urr, utr;
    if (i == 0) {
      urr = 2.0 * (u[1] - u[0]) / (dr * dr);
      lap = 3.0 * urr;
      ur = 0.0;
      utr = 0.0;
    } else {
      const double r = static_cast<double>(i) * dr;
      urr = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dr * dr);
      ur = (u[i + 1] - u[i - 1]) / (2.0 * dr);
      utr = (ut[i + 1] - ut[i - 1]) / (2.0 * dr);
      lap = urr + 2.0 / r * ur;
    }
    const double du[5] = {ut[i], ur, 0.0, 0.0, 0.0};
    double rest = 0.0, dtt_coeff = 0.0;
    if (quasi) {
      const double r = static_cast<double>(i) * dr;
      double d2u[5][5] = {};
      d2u[0][1] = d2u[1][0] = utr;
      d2u[1][1] = urr;
      const double ang = (i == 0) ? urr : ur / r;
      d2u[2][2] = d2u[3][3] = ang;
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
          double c = 0.0;
          for (int l = 0; l < 5; ++l) c += nl.B[a][b][l] * du[l];
          if (a == 0 && b == 0)
            dtt_coeff = c;
          else
            rest += c * d2u[a][b];
        }
      const double gs = gamma_sum(nl, du);
      if (gs > 0.5)
        throw HyperbolicityLoss("radial3d: quasilinear coefficient sum " +
                                std::to_string(gs) + " exceeded 1/2");
    }
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        if (nl.R[a][b] != 0.0) rest += nl.R[a][b] * du[a] * du[b];
    const double denom = 1.0 - dtt_coeff;
    if (std::abs(denom) < 0.5)
      throw HyperbolicityLoss("radial3d: 1-c below 1/2");
    const double fext = forcing ? forcing(t, static_cast<double>(i) * dr) : 0.0;
    acc[i] = (lap + rest + fext) / denom;
  }
  acc[M] = 0.0;
}

}  // namespace

void step_radial3d(Radial3dState& st, const Nonlinearity& nl, double dt,
                   const RadialForcing& forcing) {
  if (nl.has_y_terms())
    throw std::invalid_argument("step_radial3d: y-dependent nonlinearity");
  if (dt > 0.7 * st.grid.dr())
    throw StepRejected("step_radial3d: CFL violation");
  const std::size_t n = st.grid.M + 1;
  std::vector<double> k1u(n), k1w(n), k2u(n), k2w(n), k3u(n), k3w(n), k4u(n), k4w(n);
  std::vector<double> tu(n), tw(n);

  radial3d_accel(st, nl, forcing, st.t, st.u, st.ut, k1w);
  k1u = st.ut;
  for (std::size_t i = 0; i < n; ++i) {
    tu[i] = st.u[i] + dt / 2 * k1u[i];
    tw[i] = st.ut[i] + dt / 2 * k1w[i];
  }
  radial3d_accel(st, nl, forcing, st.t + dt / 2, tu, tw, k2w);
  k2u = tw;
  for (std::size_t i = 0; i < n; ++i) {
    tu[i] = st.u[i] + dt / 2 * k2u[i];
    tw[i] = st.ut[i] + dt / 2 * k2w[i];
  }
  radial3d_accel(st, nl, forcing, st.t + dt / 2, tu, tw, k3w);
  k3u = tw;
  for (std::size_t i = 0; i < n; ++i) {
    tu[i] = st.u[i] + dt * k3u[i];
    tw[i] = st.ut[i] + dt * k3w[i];
  }
  radial3d_accel(st, nl, forcing, st.t + dt, tu, tw, k4w);
  k4u = tw;
  for (std::size_t i = 0; i < n; ++i) {
    st.u[i] += dt / 6.0 * (k1u[i] + 2 * k2u[i] + 2 * k3u[i] + k4u[i]);
    st.ut[i] += dt / 6.0 * (k1w[i] + 2 * k2w[i] + 2 * k3w[i] + k4w[i]);
  }
  st.t += dt;
}

Radial3dRun evolve_radial3d(Radial3dState st, const Nonlinearity& nl,
                            const Radial3dOptions& opts) {
  Radial3dRun out;
  out.grid = st.grid;
  out.t0 = st.t;
  double dt = opts.cfl * st.grid.dr();
  const double span = opts.T_end - st.t;
  if (span <= 0.0) throw std::invalid_argument("evolve_radial3d: T_end <= t0");
  const std::size_t steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / dt)));
  dt = span / static_cast<double>(steps);
  out.dt = dt;
  const std::size_t out_stride =
      opts.out_every <= 0.0
          ? 1
          : std::max<std::size_t>(1, std::llround(opts.out_every / dt));
  const double dr = st.grid.dr();
  const std::size_t M = st.grid.M;

  auto sups = [&](double& su, double& sdu, double& sut) {
    su = sdu = sut = 0.0;
    for (std::size_t i = 0; i <= M; ++i) {
      su = std::max(su, std::abs(st.u[i]));
      sut = std::max(sut, std::abs(st.ut[i]));
      double ur = 0.0;
      if (i >= 1 && i < M) ur = (st.u[i + 1] - st.u[i - 1]) / (2.0 * dr);
      sdu = std::max(sdu, std::hypot(st.ut[i], ur));
    }
  };
  double su, sdu, sut;
  sups(su, sdu, sut);
  const double theta = opts.theta_factor * std::max(sdu, 1e-6);

  auto record = [&]() {
    sups(su, sdu, sut);
    out.times.push_back(st.t);
    out.sup_u.push_back(su);
    out.sup_du.push_back(sdu);
    out.sup_ut.push_back(sut);
    if (opts.store_snapshots) {
      out.snapshots_u.push_back(st.u);
      out.snapshots_ut.push_back(st.ut);
    }
  };
  record();
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t_before = st.t;
    try {
      step_radial3d(st, nl, dt, opts.forcing);
    } catch (const HyperbolicityLoss& e) {
      out.blowup.blew_up = true;
      out.blowup.t_last_good = t_before;
      out.blowup.t_fail = t_before + dt;
      out.blowup.reason = e.what();
      return out;
    }
    bool bad = !std::isfinite(st.u[M / 2]) || !std::isfinite(st.ut[M / 2]);
    if (!bad)
      for (std::size_t i = 0; i <= M; i += 11)
        if (!std::isfinite(st.ut[i])) {
          bad = true;
          break;
        }
    if (opts.detect_blowup || bad) {
      double m = 0.0;
      for (std::size_t i = 0; i <= M; ++i) m = std::max(m, std::abs(st.ut[i]));
      if (bad || m > theta) {
        out.blowup.blew_up = true;
        out.blowup.t_last_good = t_before;
        out.blowup.t_fail = st.t;
        out.blowup.reason = bad ? "non-finite state" : "amplitude guard";
        return out;
      }
    }
    if (s % out_stride == 0 || s == steps) record();
  }
  return out;
}

// --- cutoff -------------------------------------------------------------------

namespace {
// C^4 smoothstep on [0,1]: 1 -> 0 with four vanishing derivatives at the ends.
double p_bridge(double s) {
  const double s5 = s * s * s * s * s;
  return 1.0 - s5 * (126.0 + s * (-420.0 + s * (540.0 + s * (-315.0 + s * 70.0))));
}
double p1(double s) {  // dP/ds = -630 s^4 (1-s)^4
  const double a = s * (1.0 - s);
  return -630.0 * a * a * a * a;
}
double p2(double s) {
  const double a = s * (1.0 - s);
  return -2520.0 * a * a * a * (1.0 - 2.0 * s);
}
double p3(double s) {
  const double a = s * (1.0 - s);
  const double b = 1.0 - 2.0 * s;
  return -2520.0 * a * a * (3.0 * b * b - 2.0 * a);
}
double p4(double s) {
  const double a = s * (1.0 - s);
  const double b = 1.0 - 2.0 * s;
  return -2520.0 * a * b * (6.0 * b * b - 18.0 * a);
}
}  // namespace

double CutoffEta::value(double t) const {
  if (t <= t_on) return 1.0;
  if (t >= t_off) return 0.0;
  return p_bridge((t - t_on) / (t_off - t_on));
}
double CutoffEta::d1(double t) const {
  if (t <= t_on || t >= t_off) return 0.0;
  const double d = t_off - t_on;
  return p1((t - t_on) / d) / d;
}
double CutoffEta::d2(double t) const {
  if (t <= t_on || t >= t_off) return 0.0;
  const double d = t_off - t_on;
  return p2((t - t_on) / d) / (d * d);
}
double CutoffEta::d3(double t) const {
  if (t <= t_on || t >= t_off) return 0.0;
  const double d = t_off - t_on;
  return p3((t - t_on) / d) / (d * d * d);
}
double CutoffEta::d4(double t) const {
  if (t <= t_on || t >= t_off) return 0.0;
  const double d = t_off - t_on;
  return p4((t - t_on) / d) / (d * d * d * d);
}

}  // namespace wg
