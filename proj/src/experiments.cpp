#include "wg/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace wg {

namespace {

DecayFit fit_series(const std::vector<double>& ts, const std::vector<double>& vals,
                    double lo, double hi, double expected) {
  DecayFit f;
  f.window_lo = lo;
  f.window_hi = hi;
  f.expected = expected;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (ts[k] < lo || ts[k] > hi) continue;
    f.t.push_back(ts[k]);
    f.value.push_back(vals[k]);
  }
  if (f.t.empty() || hi / std::max(lo, 1e-12) < 10.0 || f.t.size() < 10)
    throw InsufficientWindow("decay fit: window spans less than a decade or "
                             "holds fewer than 10 samples");
  double vmax = 0.0;
  for (double v : f.value) vmax = std::max(vmax, std::abs(v));
  if (vmax < 1e-14) {
    f.degenerate = true;
    return f;
  }
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < f.t.size(); ++k) {
    if (f.value[k] <= 0.0) continue;
    lx.push_back(std::log(f.t[k]));
    ly.push_back(std::log(f.value[k]));
  }
  const LineFit lf = fit_line(lx, ly);
  f.slope = lf.slope;
  f.slope_ci = lf.slope_stderr;
  f.r2 = lf.r2;
  return f;
}

}  // namespace

DecayFit measure_mode_decay(const RunResult& run, std::size_t j, double window_lo,
                            double window_hi) {
  if (j < 1 || j > run.spec.J)
    throw std::invalid_argument("measure_mode_decay: mode out of range");
  std::vector<double> vals;
  vals.reserve(run.sups.t.size());
  for (std::size_t k = 0; k < run.sups.t.size(); ++k)
    vals.push_back(j == 1 ? run.sups.sup_du[k][0] : run.sups.sup_u[k][j - 1]);
  const double expected = (j == 1) ? -1.0 : -1.5;
  return fit_series(run.sups.t, vals, window_lo, window_hi, expected);
}

DecayFit dy_decay_check(const RunResult& run, double window_lo, double window_hi) {
  return fit_series(run.sups.t, run.sups.sup_dy, window_lo, window_hi, -1.0);
}

namespace {

struct JohnRun {
  BlowupInfo blowup;
  double dt = 0.0;
};

JohnRun run_john(double eps, const LifespanOptions& o, double dr, double cfl) {
  InitialData d;
  d.B = o.B;
  d.eps = eps;
  d.mode_f = {0.0};
  d.mode_g = {o.amp};
  const double t0 = 2.0 * o.B;
  const double R = o.B + o.T_budget + 5.0 * dr;
  GridSpec grid{R, static_cast<std::size_t>(std::lround(R / dr))};
  Radial3dState st = make_radial3d_state(d, grid, t0);
  Radial3dOptions ro;
  ro.T_end = t0 + o.T_budget;
  ro.cfl = cfl;
  ro.out_every = 1.0;
  ro.theta_factor = o.theta_factor;
  ro.detect_blowup = true;
  Radial3dRun run = evolve_radial3d(st, nonlinearity_preset("john"), ro);
  return {run.blowup, run.dt};
}

}  // namespace

LifespanFit lifespan_sweep(const LifespanOptions& opts) {
  LifespanFit fit;
  fit.resolution_tag = "dr=" + std::to_string(opts.dr);

  for (double eps : opts.eps_list) {
    LifespanPoint p;
    p.eps = eps;
    JohnRun a = run_john(eps, opts, opts.dr, opts.cfl);
    if (!a.blowup.blew_up) {
      p.censored = true;
      p.T = opts.T_budget;
      fit.points.push_back(p);
      continue;
    }
    p.bracket_lo = a.blowup.t_last_good;
    p.bracket_hi = a.blowup.t_fail;
    p.T = a.blowup.bracket_mid();
    JohnRun b = run_john(eps, opts, opts.dr, opts.cfl * 0.5);
    if (b.blowup.blew_up) {
      p.T_confirm = b.blowup.bracket_mid();
      p.confirmed = std::abs(p.T - p.T_confirm) <=
                    std::max(opts.confirm_rel_tol * p.T, 4.0 * a.dt);
    }
    fit.points.push_back(p);
  }

  // monotone: smaller eps must not blow up earlier
  for (std::size_t k = 1; k < fit.points.size(); ++k)
    if (fit.points[k].eps < fit.points[k - 1].eps &&
        fit.points[k].T <= fit.points[k - 1].T)
      fit.monotone = false;

  std::size_t censored = 0;
  std::vector<double> x, y;
  for (const LifespanPoint& p : fit.points) {
    if (p.censored) {
      ++censored;
      continue;
    }
    x.push_back(1.0 / p.eps);
    y.push_back(std::log(p.T));
  }
  if (censored > 1 || x.size() < 3) {
    fit.fit_valid = false;
    return fit;
  }
  const LineFit lf = fit_line(x, y);
  fit.kappa = lf.slope;
  fit.intercept = lf.intercept;
  fit.r2 = lf.r2;
  return fit;
}

std::vector<RegimeRow> theorem_regimes_report(double eps, double T_budget,
                                              const GridSpec& grid) {
  std::vector<RegimeRow> rows;
  const BaseInterval base{0.0, M_PI, BoundaryCondition::Neumann};
  const double B = 1.0;
  const double t0 = 2.0 * B;
  struct Entry {
    const char* preset;
    std::size_t J;
  };
  const Entry entries[] = {{"none", 1},        {"john", 1},   {"thm11", 1},
                           {"qt_lapx", 1},     {"thm12", 2},  {"dy_compat", 2},
                           {"dy_incompat", 2}};
  for (const Entry& e : entries) {
    RegimeRow row;
    row.preset = e.preset;
    row.eps = eps;
    row.T_or_budget = T_budget;
    InitialData d;
    d.B = B;
    d.eps = eps;
    d.mode_f.assign(e.J, 0.0);
    d.mode_g.assign(e.J, 0.0);
    d.mode_f[0] = 1.0;
    if (e.J > 1) d.mode_f[1] = 0.7;
    EvolveOptions opts;
    opts.T_end = t0 + T_budget;
    opts.out_every = 1.0;
    opts.store_snapshots = false;
    opts.detect_blowup = true;
    try {
      RunResult r = evolve(d, base, e.J, grid, t0, nonlinearity_preset(e.preset),
                           opts);
      if (r.blowup.blew_up) {
        row.outcome = "blowup";
        row.T_or_budget = r.blowup.bracket_mid();
      } else {
        row.outcome = "survived";
        double m = 0.0;
        for (double v : r.sups.sup_du.back()) m = std::max(m, v);
        row.sup_du_final = m;
      }
    } catch (const IncompatibleNonlinearity&) {
      row.outcome = "refused";
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wg
