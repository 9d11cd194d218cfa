#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wg/fit.hpp"
#include "wg/solver.hpp"

namespace wg {

struct InsufficientWindow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DecayFit {
  std::vector<double> t, value;  // the fitted series (within the window)
  double window_lo = 0.0, window_hi = 0.0;
  double slope = 0.0;
  double slope_ci = 0.0;  // least-squares standard error
  double expected = 0.0;
  double r2 = 0.0;
  bool degenerate = false;  // identically-zero channel
};

// log-log fit of the decay channel of mode j over [window_lo, window_hi]:
// zero mode fits sup |d u_1| (expected -1), modes j >= 2 fit sup |u_j|
// (expected -3/2).  Throws InsufficientWindow when the window spans less than
// a decade or holds fewer than 10 samples.
DecayFit measure_mode_decay(const RunResult& run, std::size_t j,
                            double window_lo = 20.0, double window_hi = 200.0);

// sup |d_y u| channel of a y-dependent run; expected at least -1, faster allowed
DecayFit dy_decay_check(const RunResult& run, double window_lo = 20.0,
                        double window_hi = 200.0);

struct LifespanPoint {
  double eps = 0.0;
  double T = 0.0;             // bracket midpoint
  double bracket_lo = 0.0, bracket_hi = 0.0;
  double T_confirm = 0.0;     // dt-halved rerun
  bool confirmed = false;
  bool censored = false;      // no blowup within the budget
};

struct LifespanFit {
  std::vector<LifespanPoint> points;
  double kappa = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  bool monotone = true;       // eps down => T up
  std::string resolution_tag;
  bool fit_valid = true;      // refused when > 1 censored point
};

struct LifespanOptions {
  std::vector<double> eps_list = {1.0, 0.8, 0.65, 0.5, 0.42, 0.36};
  double amp = 4.0;           // base amplitude of the u_t bump (times eps)
  double B = 1.0;
  double dr = 0.1;
  double cfl = 0.4;
  double T_budget = 400.0;
  double theta_factor = 10.0;
  double confirm_rel_tol = 0.02;  // |T - T_half| <= max(tol*T, 4 dt)
};

// The John model Box u = (d_t u)^2 swept over eps; every blowup time is
// confirmed by a dt-halved rerun and the law log T = kappa/eps + c is fitted.
LifespanFit lifespan_sweep(const LifespanOptions& opts);

struct RegimeRow {
  std::string preset;
  double eps = 0.0;
  std::string outcome;  // "survived" | "blowup" | "refused"
  double T_or_budget = 0.0;
  double sup_du_final = 0.0;
};

// Theorem-regime survey: compatible families at small eps must survive the
// budget; incompatible quasilinear y-terms must be refused by the gate.
std::vector<RegimeRow> theorem_regimes_report(double eps, double T_budget,
                                              const GridSpec& grid);

}  // namespace wg
