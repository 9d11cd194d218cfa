#pragma once

#include "wg/estimates.hpp"
#include "wg/radial_jet.hpp"
#include "wg/solver.hpp"

namespace wg {

// Dyadic RHS bookkeeping shared by the decay meters: given per-snapshot norms
// n(tau), RHS(t) = sum_k sup_{tau in [2^{k-1}, 2^{k+1}] cap [2B, t]} 2^k n(tau).
double dyadic_rhs(const std::vector<double>& taus, const std::vector<double>& norms,
                  double B, double t);

struct DyadicDecayReport {
  std::vector<double> t;
  std::vector<double> lhs, rhs;
  double ratio = 0.0;
  double rhs_floor = 0.0;
  bool degenerate = false;
  bool sampling_ok = true;  // enough snapshots inside every active block
  std::string flags;        // provenance: the snapshot path is lower order
};

// Decay meter for the cutoff problem w = (1-eta) u built from a linear run
// started at t0 = 2B with data supported in r <= B.
//   wave (zero mode):      (1+t)    sup |d_{t,x} w|   vs forcing words <= 2
//   klein-gordon (mode j): (1+t)^{3/2} sup |w_j|      vs forcing words <= 2
DyadicDecayReport check_wave_decay(const RunResult& run, double B,
                                   const WordNormOptions& words = {});
DyadicDecayReport check_kg_decay(const RunResult& run, std::size_t mode_j, double B,
                                 const WordNormOptions& words = {});

struct MuSweepReport {
  std::vector<double> mus;
  std::vector<double> ratios;
  bool nonincreasing_ok = true;  // ratio must not grow with mu (slack applied)
};

// runs the kg meter at mu = lambda of modes of bases scaled to {1, 2, 5}
MuSweepReport kg_mu_uniformity(const InitialData& data, const GridSpec& grid,
                               double T_end, const WordNormOptions& words = {});

// basic energy inequality on a forced vanishing-data run:
//   sup_t ||d u(t)|| / int_0^t ||F|| ds
RatioReport energy_inequality_check(const EnergyLedger& led);

// Prop-4.4-style commutation on stored snapshots: E_j Box u vs
// (d_t^2 - Delta + lambda_j^2) E_j u, using centered time differences across
// three consecutive snapshots.  Requires out_every = 0 recording.
double mode_commutation_residual(const RunResult& run, const BaseInterval& base);

}  // namespace wg
