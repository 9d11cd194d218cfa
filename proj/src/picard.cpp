#include "wg/picard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wg {

History History::from_run(const RunResult& run) {
  History h;
  if (run.snapshots.size() < 2)
    throw std::invalid_argument("History::from_run: need dense snapshots");
  h.t_begin = run.snapshots.front().t;
  h.t_end = run.snapshots.back().t;
  h.dt = run.snapshots[1].t - run.snapshots[0].t;
  h.J = run.spec.J;
  h.grid = run.grid;
  const std::size_t S = run.snapshots.size();
  h.v.resize(S);
  h.vt.resize(S);
  h.at.resize(S);
  for (std::size_t s = 0; s < S; ++s) {
    h.v[s] = run.snapshots[s].v;
    h.vt[s] = run.snapshots[s].vt;
  }
  // acceleration via centered differences of vt (one-sided at the ends)
  for (std::size_t s = 0; s < S; ++s) {
    h.at[s].assign(h.J, std::vector<double>(h.grid.M + 1, 0.0));
    for (std::size_t j = 0; j < h.J; ++j)
      for (std::size_t i = 0; i <= h.grid.M; ++i) {
        if (s == 0)
          h.at[s][j][i] = (h.vt[1][j][i] - h.vt[0][j][i]) / h.dt;
        else if (s + 1 == S)
          h.at[s][j][i] = (h.vt[S - 1][j][i] - h.vt[S - 2][j][i]) / h.dt;
        else
          h.at[s][j][i] = (h.vt[s + 1][j][i] - h.vt[s - 1][j][i]) / (2.0 * h.dt);
      }
  }
  return h;
}

History History::zero(double t_begin, double t_end, std::size_t J,
                      const GridSpec& grid) {
  History h;
  h.t_begin = t_begin;
  h.t_end = t_end;
  h.dt = t_end - t_begin;
  h.J = J;
  h.grid = grid;
  const std::vector<std::vector<double>> z(J,
                                           std::vector<double>(grid.M + 1, 0.0));
  h.v = {z, z};
  h.vt = {z, z};
  h.at = {z, z};
  return h;
}

void History::eval(double t, std::vector<std::vector<double>>* v_out,
                   std::vector<std::vector<double>>* vt_out,
                   std::vector<std::vector<double>>* vtt_out) const {
  const std::size_t S = v.size();
  double s_real = (t - t_begin) / dt;
  s_real = std::clamp(s_real, 0.0, static_cast<double>(S - 1) - 1e-12);
  const std::size_t n = static_cast<std::size_t>(s_real);
  const double h = dt;
  const double s = s_real - static_cast<double>(n);
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  // derivatives of the basis w.r.t. t
  const double g00 = 6 * s * (s - 1) / h;
  const double g10 = (3 * s - 1) * (s - 1) / h * h;  // times h below
  const double g01 = -6 * s * (s - 1) / h;
  const double g11 = s * (3 * s - 2) / h * h;
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t i = 0; i <= grid.M; ++i) {
      const double y0 = v[n][j][i], y1 = v[n + 1][j][i];
      const double d0 = vt[n][j][i], d1 = vt[n + 1][j][i];
      if (v_out)
        (*v_out)[j][i] = h00 * y0 + h * h10 * d0 + h01 * y1 + h * h11 * d1;
      const double a0 = at[n][j][i], a1 = at[n + 1][j][i];
      if (vt_out)
        (*vt_out)[j][i] = h00 * d0 + h * h10 * a0 + h01 * d1 + h * h11 * a1;
      if (vtt_out)
        (*vtt_out)[j][i] =
            g00 * d0 + g10 * a0 + g01 * d1 + g11 * a1;
    }
}

namespace {

struct Basis {
  std::vector<std::vector<double>> E, Ep;
};

Basis make_basis(const ModeSpectrum& spec, const YGrid& yg) {
  Basis b;
  b.E.resize(spec.J);
  b.Ep.resize(spec.J);
  for (std::size_t j = 1; j <= spec.J; ++j) {
    b.E[j - 1] = eigenfunction_values(spec, j, yg);
    b.Ep[j - 1] = eigenfunction_derivative_values(spec, j, yg);
  }
  return b;
}

// radial reductions of one mode family at node i (combined arrays)
struct FieldsAtNode {
  double u, ut, ur, utr, urr, lin;
};

struct PicardStepper {
  const ModeSpectrum& spec;
  GridSpec grid;
  YGrid yg;
  Basis basis;
  const Nonlinearity& nl;
  CutoffEta eta;
  const History* prev;     // w_{k-1}; null for k = 1
  const History* segment;  // local solution on [2B, 2B+1]
  bool quasi = false;
  bool semi = false;

  // scratch
  std::vector<std::vector<double>> vP, vtP, vttP;  // w_{k-1}(t)
  std::vector<std::vector<double>> vS, vtS, vttS;  // segment(t)

  PicardStepper(const ModeSpectrum& s, GridSpec g, const YGrid& y,
                const Nonlinearity& n, double B, const History* p,
                const History* seg)
      : spec(s), grid(g), yg(y), basis(make_basis(s, y)), nl(n), eta(B),
        prev(p), segment(seg) {
    quasi = nl.has_quasilinear();
    for (int a = 0; a < 5 && !semi; ++a)
      for (int b = 0; b < 5; ++b)
        if (nl.R[a][b] != 0.0) {
          semi = true;
          break;
        }
    auto sz = [&](std::vector<std::vector<double>>& x) {
      x.assign(spec.J, std::vector<double>(grid.M + 1, 0.0));
    };
    sz(vP); sz(vtP); sz(vttP); sz(vS); sz(vtS); sz(vttS);
  }

  // acceleration of w_k at (v, vt), time t
  void accel(double t, const std::vector<std::vector<double>>& v,
             const std::vector<std::vector<double>>& vt,
             std::vector<std::vector<double>>& out) {
    const std::size_t J = spec.J, M = grid.M;
    const double dr = grid.dr();
    const double et = eta.value(t), e1 = eta.d1(t), e2 = eta.d2(t);

    if (prev) prev->eval(t, &vP, &vtP, nullptr);
    const bool seg_active = segment && t <= segment->t_end + 1e-12;
    if (seg_active) segment->eval(t, &vS, &vtS, &vttS);

    // u0 in v-form: v_{u0} = eta vS, time derivatives by the product rule
    // combined A = u0 + w_{k-1} (coefficient slot), B = u0 + w_k (deriv slot)
    const std::size_t Ny = yg.size();
    std::vector<double> corr(Ny);
    for (std::size_t j = 0; j < J; ++j) {
      out[j].assign(M + 1, 0.0);
    }

    for (std::size_t i = 1; i < M; ++i) {
      const double r = static_cast<double>(i) * dr;
      // per-mode reductions at this node
      struct PerMode {
        double uA_t, uA_r, uA_y_coeff, uA;  // coefficient-slot fields
        double uB, uB_t, uB_r, uB_tr, uB_rr, uB_tt;  // derivative-slot fields
        double w, w_t;                               // bare w_k for [Box, eta]
        double u0, u0_t;
        double lin;
      };
      static thread_local std::vector<PerMode> pm;
      pm.assign(J, PerMode{});
      for (std::size_t j = 0; j < J; ++j) {
        const double lam2 = spec.lambdas[j] * spec.lambdas[j];
        auto dv = [&](const std::vector<double>& a) {
          return (a[i + 1] - a[i - 1]) / (2.0 * dr);
        };
        auto dvv = [&](const std::vector<double>& a) {
          return (a[i + 1] - 2.0 * a[i] + a[i - 1]) / (dr * dr);
        };
        const double v0 = v[j][i], vt0 = vt[j][i];
        const double vr = dv(v[j]), vpp = dvv(v[j]);
        const double vtr = dv(vt[j]);
        // u0 pieces
        const double s0 = seg_active ? vS[j][i] : 0.0;
        const double s1 = seg_active ? vtS[j][i] : 0.0;
        const double s2 = seg_active ? vttS[j][i] : 0.0;
        const double v_u0 = et * s0;
        const double vt_u0 = e1 * s0 + et * s1;
        const double vtt_u0 = e2 * s0 + 2.0 * e1 * s1 + et * s2;
        const double vr_u0 = seg_active ? et * dv(vS[j]) : 0.0;
        const double vpp_u0 = seg_active ? et * dvv(vS[j]) : 0.0;
        const double vtr_u0 = seg_active ? (e1 * dv(vS[j]) + et * dv(vtS[j])) : 0.0;
        // coefficient slot A = u0 + w_{k-1}
        const double vA = v_u0 + (prev ? vP[j][i] : 0.0);
        const double vtA = vt_u0 + (prev ? vtP[j][i] : 0.0);
        const double vrA = vr_u0 + (prev ? dv(vP[j]) : 0.0);
        // derivative slot B = u0 + w_k (w_k = current state)
        const double vB = v_u0 + v0;
        const double vtB = vt_u0 + vt0;
        const double vrB = vr_u0 + vr;
        const double vppB = vpp_u0 + vpp;
        const double vtrB = vtr_u0 + vtr;

        PerMode& m = pm[j];
        m.uA = vA / r;
        m.uA_t = vtA / r;
        m.uA_r = vrA / r - vA / (r * r);
        m.uB = vB / r;
        m.uB_t = vtB / r;
        m.uB_r = vrB / r - vB / (r * r);
        m.uB_tr = vtrB / r - vtB / (r * r);
        m.uB_rr = vppB / r - 2.0 * vrB / (r * r) + 2.0 * vB / (r * r * r);
        m.uB_tt = vtt_u0 / r;  // only the known u0 part; w-part is implicit
        m.w = v0 / r;
        m.w_t = vt0 / r;
        m.u0 = v_u0 / r;
        m.u0_t = vt_u0 / r;
        m.lin = (vpp - lam2 * v0) / r;
        m.uA_y_coeff = vA / r;  // recombined with Ep below
      }

      for (std::size_t q = 0; q < Ny; ++q) {
        double uA_t = 0, uA_r = 0, uA_y = 0;
        double uB_t = 0, uB_r = 0, uB_y = 0;
        double uB_tr = 0, uB_rr = 0, uB_ty = 0, uB_ry = 0, uB_yy = 0, uB_tt = 0;
        double w_val = 0, w_t = 0, u0_val = 0, u0_t = 0, lin = 0;
        for (std::size_t j = 0; j < J; ++j) {
          const double e = basis.E[j][q], ep = basis.Ep[j][q];
          const double lam2 = spec.lambdas[j] * spec.lambdas[j];
          const PerMode& m = pm[j];
          uA_t += m.uA_t * e;
          uA_r += m.uA_r * e;
          uA_y += m.uA * ep;
          uB_t += m.uB_t * e;
          uB_r += m.uB_r * e;
          uB_y += m.uB * ep;
          uB_tr += m.uB_tr * e;
          uB_rr += m.uB_rr * e;
          uB_ty += m.uB_t * ep;
          uB_ry += m.uB_r * ep;
          uB_yy += -lam2 * m.uB * e;
          uB_tt += m.uB_tt * e;
          w_val += m.w * e;
          w_t += m.w_t * e;
          u0_val += m.u0 * e;
          u0_t += m.u0_t * e;
          lin += m.lin * e;
        }
        const double duA[5] = {uA_t, uA_r, 0.0, 0.0, uA_y};
        double c = 0.0, q_known = 0.0;
        if (quasi) {
          double d2B[5][5] = {};
          d2B[0][0] = uB_tt;  // u0's second time derivative (w part implicit)
          d2B[0][1] = d2B[1][0] = uB_tr;
          d2B[1][1] = uB_rr;
          d2B[2][2] = d2B[3][3] = uB_r / r;
          d2B[0][4] = d2B[4][0] = uB_ty;
          d2B[1][4] = d2B[4][1] = uB_ry;
          d2B[4][4] = uB_yy;
          for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b) {
              double cc = 0.0;
              for (int l = 0; l < 5; ++l) cc += nl.B[a][b][l] * duA[l];
              if (a == 0 && b == 0)
                c = cc;
              q_known += cc * d2B[a][b];  // includes c * u0_tt
            }
        }
        if (semi)
          for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b)
              if (nl.R[a][b] != 0.0) q_known += nl.R[a][b] * duA[a] * duA[b];
        // [Box, eta](u0 + w) = eta''(u0+w) + 2 eta' d_t(u0+w)
        const double comm = e2 * (u0_val + w_val) + 2.0 * e1 * (u0_t + w_t);
        const double om = 1.0 - et;
        const double denom = 1.0 - om * c;
        if (std::abs(denom) < 0.5)
          throw HyperbolicityLoss("picard: frozen coefficient 1-(1-eta)c below 1/2");
        corr[q] = (om * q_known - comm + om * c * lin) / denom;
      }
      for (std::size_t j = 0; j < J; ++j) {
        double s = 0.0;
        for (std::size_t q = 0; q < Ny; ++q)
          s += yg.weights[q] * corr[q] * basis.E[j][q];
        const double lam2 = spec.lambdas[j] * spec.lambdas[j];
        out[j][i] = (v[j][i + 1] - 2.0 * v[j][i] + v[j][i - 1]) / (dr * dr) -
                    lam2 * v[j][i] + r * s;
      }
    }
  }
};

// RK4 march of one Picard stage storing every step
History run_stage(PicardStepper& stepper, double t0, double T_end, double dt_req) {
  const std::size_t J = stepper.spec.J;
  const GridSpec grid = stepper.grid;
  const std::size_t steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((T_end - t0) / dt_req)));
  const double dt = (T_end - t0) / static_cast<double>(steps);

  History h;
  h.t_begin = t0;
  h.t_end = T_end;
  h.dt = dt;
  h.J = J;
  h.grid = grid;

  std::vector<std::vector<double>> v(J, std::vector<double>(grid.M + 1, 0.0));
  std::vector<std::vector<double>> vt = v;
  std::vector<std::vector<double>> a1 = v, a2 = v, a3 = v, a4 = v;
  std::vector<std::vector<double>> tv = v, tw = v;

  auto push = [&](double, const std::vector<std::vector<double>>& acc) {
    h.v.push_back(v);
    h.vt.push_back(vt);
    h.at.push_back(acc);
  };

  stepper.accel(t0, v, vt, a1);
  push(t0, a1);

  double t = t0;
  for (std::size_t s = 0; s < steps; ++s) {
    stepper.accel(t, v, vt, a1);
    for (std::size_t j = 0; j < J; ++j)
      for (std::size_t i = 0; i <= grid.M; ++i) {
        tv[j][i] = v[j][i] + dt / 2 * vt[j][i];
        tw[j][i] = vt[j][i] + dt / 2 * a1[j][i];
      }
    stepper.accel(t + dt / 2, tv, tw, a2);
    std::vector<std::vector<double>> k2v = tw;
    for (std::size_t j = 0; j < J; ++j)
      for (std::size_t i = 0; i <= grid.M; ++i) {
        tv[j][i] = v[j][i] + dt / 2 * k2v[j][i];
        tw[j][i] = vt[j][i] + dt / 2 * a2[j][i];
      }
    stepper.accel(t + dt / 2, tv, tw, a3);
    std::vector<std::vector<double>> k3v = tw;
    for (std::size_t j = 0; j < J; ++j)
      for (std::size_t i = 0; i <= grid.M; ++i) {
        tv[j][i] = v[j][i] + dt * k3v[j][i];
        tw[j][i] = vt[j][i] + dt * a3[j][i];
      }
    stepper.accel(t + dt, tv, tw, a4);
    std::vector<std::vector<double>> k4v = tw;
    for (std::size_t j = 0; j < J; ++j)
      for (std::size_t i = 0; i <= grid.M; ++i) {
        v[j][i] += dt / 6.0 *
                   (vt[j][i] + 2.0 * k2v[j][i] + 2.0 * k3v[j][i] + k4v[j][i]);
        vt[j][i] +=
            dt / 6.0 * (a1[j][i] + 2.0 * a2[j][i] + 2.0 * a3[j][i] + a4[j][i]);
      }
    t += dt;
    stepper.accel(t, v, vt, a1);
    push(t, a1);
  }
  return h;
}

// profiles of d_t^a (u = v/r) for the word-norm evaluator, sampled at the
// stored step nearest to the requested time (snapped time returned)
std::vector<RadialSnapshotField> history_fields(const History& h, double& t,
                                                const History* minus) {
  const std::size_t J = h.J;
  const GridSpec grid = h.grid;
  const double dr = grid.dr();
  const std::size_t n = static_cast<std::size_t>(std::clamp(
      std::round((t - h.t_begin) / h.dt), 1.0,
      static_cast<double>(h.v.size()) - 2.0));
  t = h.t_begin + static_cast<double>(n) * h.dt;
  auto over_r = [&](const std::vector<double>& a, std::size_t i) {
    if (i == 0) return (8.0 * a[1] - a[2]) / (6.0 * dr);
    return a[i] / (static_cast<double>(i) * dr);
  };
  std::vector<RadialSnapshotField> out;
  for (std::size_t j = 0; j < J; ++j) {
    std::vector<std::vector<double>> profs(4,
                                           std::vector<double>(grid.M + 1, 0.0));
    for (std::size_t i = 0; i <= grid.M; ++i) {
      double v0 = h.v[n][j][i], v1 = h.vt[n][j][i], v2 = h.at[n][j][i];
      double v3 = (h.at[n + 1][j][i] - h.at[n - 1][j][i]) / (2.0 * h.dt);
      if (minus) {
        v0 -= minus->v[n][j][i];
        v1 -= minus->vt[n][j][i];
        v2 -= minus->at[n][j][i];
        v3 -= (minus->at[n + 1][j][i] - minus->at[n - 1][j][i]) / (2.0 * h.dt);
      }
      profs[0][i] = v0;
      profs[1][i] = v1;
      profs[2][i] = v2;
      profs[3][i] = v3;
    }
    // convert v-profiles to u-profiles
    for (int a = 0; a < 4; ++a) {
      std::vector<double> up(grid.M + 1);
      for (std::size_t i = 0; i <= grid.M; ++i) up[i] = over_r(profs[a], i);
      profs[a] = up;
    }
    out.emplace_back(t, grid, std::move(profs));
  }
  return out;
}

double norm_bundle(const std::vector<RadialSnapshotField>& fields,
                   const ModeSpectrum& spec, const WordNormOptions& words,
                   double t, bool with_y_deriv) {
  WordNormData d = word_norms_radial(fields, kGammaLetters, words, true);
  const double l2 = sum_word_norms_tilde(
      d, spec.lambdas, words.max_len,
      with_y_deriv ? NormSlot::DtxyDeriv : NormSlot::DtxDeriv);
  const double sup = sum_word_sups_tilde(fields, spec, words);
  return l2 + (1.0 + t) * sup;
}

}  // namespace

PicardResult picard_iterate(const InitialData& data, const BaseInterval& base,
                            std::size_t J, const GridSpec& grid,
                            const Nonlinearity& nl, const PicardOptions& opts) {
  PicardResult res;
  const double B = data.B;
  const double t0 = 2.0 * B;
  res.grid = grid;
  res.spec = build_spectrum(base, J);

  // local segment on [2B, 2B+1] by direct integration
  EvolveOptions seg_opts;
  seg_opts.T_end = t0 + 1.0;
  seg_opts.cfl = opts.cfl;
  seg_opts.out_every = 0.0;  // every step
  RunResult seg_run = evolve(data, base, J, grid, t0, nl, seg_opts);
  if (seg_run.blowup.blew_up) {
    res.aborted = true;
    res.abort_reason = "local segment failed: " + seg_run.blowup.reason;
    return res;
  }
  History segment = History::from_run(seg_run);

  const YGrid yg = uniform_trapezoid_grid(base.a, base.b,
                                          std::max<std::size_t>(2 * J + 1, 5));
  const double lam_max = res.spec.lambdas.back();
  double dt = opts.cfl * grid.dr();
  if (lam_max > 0.0) dt = std::min(dt, opts.cfl * 2.0 / lam_max);

  std::vector<double> analysis_ts;
  for (double t = t0 + opts.analysis_every; t < opts.T_end - 1e-9;
       t += opts.analysis_every)
    analysis_ts.push_back(t);
  analysis_ts.push_back(opts.T_end - 2.0 * grid.dr());

  History h_prev_real;  // empty means w_0 = 0
  bool have_prev = false;

  for (std::size_t k = 1; k <= opts.k_max; ++k) {
    PicardStepper stepper(res.spec, grid, yg, nl, B,
                          have_prev ? &h_prev_real : nullptr, &segment);
    History h_k;
    try {
      h_k = run_stage(stepper, t0, opts.T_end, dt);
    } catch (const HyperbolicityLoss& e) {
      res.aborted = true;
      res.abort_reason = e.what();
      return res;
    }
    // A_k over the analysis times
    double A_k = 0.0, M_k = 0.0;
    for (double t_req : analysis_ts) {
      double ta = t_req;
      std::vector<RadialSnapshotField> diff =
          history_fields(h_k, ta, have_prev ? &h_prev_real : nullptr);
      A_k = std::max(A_k, norm_bundle(diff, res.spec, opts.words, ta, false));
      double tm = t_req;
      std::vector<RadialSnapshotField> wk = history_fields(h_k, tm, nullptr);
      M_k = std::max(M_k, norm_bundle(wk, res.spec, opts.words, tm, true));
    }
    res.A.push_back(A_k);
    res.M.push_back(M_k);
    if (res.A.size() >= 2) {
      const double prev = res.A[res.A.size() - 2];
      res.contraction.push_back(prev > 0.0 ? A_k / prev : 0.0);
    }
    h_prev_real = std::move(h_k);
    have_prev = true;
  }
  res.final_v = h_prev_real.v.back();
  res.final_vt = h_prev_real.vt.back();
  res.final_t = h_prev_real.t_end;
  return res;
}

}  // namespace wg
