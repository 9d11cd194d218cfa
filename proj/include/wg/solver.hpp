#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wg/data.hpp"
#include "wg/nonlinearity.hpp"
#include "wg/spectral.hpp"

namespace wg {

struct HyperbolicityLoss : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StepRejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IncompatibleNonlinearity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double R = 10.0;
  std::size_t M = 200;  // intervals; nodes 0..M
  double dr() const { return R / static_cast<double>(M); }
};

// Per-mode forcing F_j(t, r) added to Box u = Q + F.
using ModeForcing = std::function<double(double t, double r, std::size_t j)>;

// The evolving waveguide solution under radial symmetry: per-mode radial
// profiles of v_j = r u_j (the substitution removes the (2/r) d_r singularity;
// v_j(t,0) = 0 encodes regularity at the origin).  Physical (r,y) values are
// reconstructed on demand.
struct WaveguideState {
  double t = 0.0;
  GridSpec grid;
  ModeSpectrum spec;
  YGrid ygrid;
  std::vector<std::vector<double>> v;   // [j][i]
  std::vector<std::vector<double>> vt;  // [j][i]

  double u_of(std::size_t j, std::size_t i) const;   // v/r with origin limit
  double ut_of(std::size_t j, std::size_t i) const;
  // physical value at (r_i, y_q)
  double u_phys(std::size_t i, std::size_t q) const;
};

WaveguideState make_state(const InitialData& data, const BaseInterval& base,
                          std::size_t J, const GridSpec& grid, double t0);

// One RK4 step of the first-order system (v, v_t).  Throws StepRejected on a
// CFL violation and HyperbolicityLoss when the quasilinear coefficient sum
// leaves the hyperbolic window (that is the blowup signal for quasilinear runs).
void step_physical(WaveguideState& st, const Nonlinearity& nl, double dt,
                   const ModeForcing& forcing = {});

struct Snapshot {
  double t;
  std::vector<std::vector<double>> v, vt;
};

struct EnergyLedger {
  std::vector<double> t;
  std::vector<double> energy;       // scheme-conserved discrete energy
  std::vector<double> forcing_l2;   // ||F(t)||_2
  std::vector<double> forcing_int;  // int_0^t ||F|| ds (trapezoid per step)
};

struct BlowupInfo {
  bool blew_up = false;
  double t_last_good = 0.0;
  double t_fail = 0.0;
  std::string reason;
  double bracket_mid() const { return 0.5 * (t_last_good + t_fail); }
  double bracket_width() const { return t_fail - t_last_good; }
};

struct ModeSupSeries {
  std::vector<double> t;
  // [time][mode]
  std::vector<std::vector<double>> sup_u;
  std::vector<std::vector<double>> sup_du;   // sup sqrt(u_t^2 + u_r^2)
  std::vector<double> sup_dy;                // sup over (r,y) of |d_y u|
  std::vector<double> sup_ut_all;            // sup over modes/grid of |u_t|
};

struct RunResult {
  ModeSpectrum spec;
  GridSpec grid;
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<Snapshot> snapshots;
  ModeSupSeries sups;
  EnergyLedger energy;
  BlowupInfo blowup;
  bool support_ok = true;          // finite-speed support growth respected
  double boundary_activity = 0.0;  // max |v| near the artificial boundary
};

struct EvolveOptions {
  double T_end = 10.0;     // absolute end time
  double cfl = 0.4;
  double out_every = 0.5;  // 0 = record every step
  double theta_factor = 10.0;
  bool detect_blowup = false;
  bool store_snapshots = true;
  std::size_t support_margin_cells = 3;
  ModeForcing forcing;
};

// Integrates from state.t to T_end (or to detected blowup).  The nonlinear
// compatibility gate refuses quasilinear y-terms that violate the Neumann
// compatibility condition.
RunResult evolve(WaveguideState state, const Nonlinearity& nl,
                 const EvolveOptions& opts);

RunResult evolve(const InitialData& data, const BaseInterval& base, std::size_t J,
                 const GridSpec& grid, double t0, const Nonlinearity& nl,
                 const EvolveOptions& opts);

// --- standalone radial 3D integrator (zero-mode / pure R^3 problems) -------

using RadialForcing = std::function<double(double t, double r)>;

struct Radial3dState {
  double t = 0.0;
  GridSpec grid;
  std::vector<double> u, ut;
};

Radial3dState make_radial3d_state(const InitialData& data, const GridSpec& grid,
                                  double t0);

// Direct radial stencil path: Laplacian u_rr + (2/r) u_r with the origin limit
// Delta u(0) = 3 u_rr(0).  Nonlinearities must not involve y.
void step_radial3d(Radial3dState& st, const Nonlinearity& nl, double dt,
                   const RadialForcing& forcing = {});

struct Radial3dRun {
  GridSpec grid;
  double t0 = 0.0, dt = 0.0;
  std::vector<double> times;
  std::vector<double> sup_u, sup_du, sup_ut;
  std::vector<std::vector<double>> snapshots_u, snapshots_ut;
  BlowupInfo blowup;
};

struct Radial3dOptions {
  double T_end = 10.0;
  double cfl = 0.4;
  double out_every = 0.5;
  double theta_factor = 10.0;
  bool detect_blowup = false;
  bool store_snapshots = false;
  RadialForcing forcing;
};

Radial3dRun evolve_radial3d(Radial3dState state, const Nonlinearity& nl,
                            const Radial3dOptions& opts);

// --- cutoff construction ----------------------------------------------------

// C^4 bridge: 1 for t <= 2B + 1/2, 0 for t >= 2B + 1, monotone in between.
struct CutoffEta {
  double t_on;   // 2B + 1/2
  double t_off;  // 2B + 1
  explicit CutoffEta(double B) : t_on(2 * B + 0.5), t_off(2 * B + 1.0) {}
  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;
  double d3(double t) const;
  double d4(double t) const;
};

// Discrete energy of the current state (the quantity the linear scheme
// conserves exactly in the semi-discrete limit): for each mode
//   2 pi dr [ sum vt^2 + lambda^2 sum v^2 + sum ((v_{i+1}-v_i)/dr)^2 ].
double discrete_energy(const WaveguideState& st);

// L2(R^3 x Omega) norm of a per-mode radial forcing at time t.
double forcing_l2_norm(const ModeForcing& f, double t, const GridSpec& grid,
                       std::size_t J);

}  // namespace wg
