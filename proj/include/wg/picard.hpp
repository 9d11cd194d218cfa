#pragma once

#include "wg/radial_jet.hpp"
#include "wg/solver.hpp"

namespace wg {

// Dense step-by-step storage of one evolution, with cubic Hermite access at
// arbitrary times (the stored v_t doubles as the interpolation slope).
struct History {
  double t_begin = 0.0;
  double t_end = 0.0;
  double dt = 0.0;
  std::size_t J = 0;
  GridSpec grid;
  // [step][mode][node]
  std::vector<std::vector<std::vector<double>>> v, vt, at;

  static History from_run(const RunResult& run);
  static History zero(double t_begin, double t_end, std::size_t J,
                      const GridSpec& grid);

  bool empty() const { return v.empty(); }
  // Hermite-interpolated state; outputs sized [J][M+1]
  void eval(double t, std::vector<std::vector<double>>* v_out,
            std::vector<std::vector<double>>* vt_out,
            std::vector<std::vector<double>>* vtt_out) const;
};

struct PicardOptions {
  double T_end = 20.0;
  double cfl = 0.4;
  std::size_t k_max = 6;
  double analysis_every = 3.0;  // A_k / M_k sampling interval
  double out_every = 1.0;       // sup series sampling for the final iterate
  WordNormOptions words;
};

struct PicardResult {
  std::vector<double> A;            // A_k, k = 1..k_max
  std::vector<double> M;            // M_k
  std::vector<double> contraction;  // A_k / A_{k-1}, k = 2..k_max
  bool aborted = false;
  std::string abort_reason;
  // final iterate: u = u0 + w_k equals w_k for t past the bridge
  std::vector<std::vector<double>> final_v, final_vt;
  double final_t = 0.0;
  GridSpec grid;
  ModeSpectrum spec;
};

// The cutoff iteration: w_0 = 0 and each w_k solves the linearized problem
// with quasilinear coefficients frozen at u0 + w_{k-1}, forced through the
// bridge commutator.  Norms are truncated to vector-field words of length <= 2.
PicardResult picard_iterate(const InitialData& data, const BaseInterval& base,
                            std::size_t J, const GridSpec& grid,
                            const Nonlinearity& nl, const PicardOptions& opts);

}  // namespace wg
