#pragma once

#include <vector>

#include "wg/jet.hpp"
#include "wg/solver.hpp"
#include "wg/words.hpp"

namespace wg {

// Derivative table of a radial field at one instant, built from solver output:
// time derivatives are supplied per order (from equation closures or stored
// time levels), radial derivatives come from finite differences.  This is the
// lower-order path for grid-sampled data, as opposed to the exact jets of the
// manufactured corpus; reports that consume it are flagged accordingly.
class RadialSnapshotField {
 public:
  // time_derivs[a][i] = d_t^a F(t0, r_i), a = 0..A
  RadialSnapshotField(double t0, GridSpec grid,
                      std::vector<std::vector<double>> time_derivs);

  double t0() const { return t0_; }
  const GridSpec& grid() const { return grid_; }
  int max_dt_order() const { return static_cast<int>(profs_.size()) - 1; }

  // d_t^a d_r^b at node i (central differences in r; needs stencil margin)
  double partial(int a, int b, std::size_t i) const;

  // full (t,x) Taylor jet at x with |x| = r_i, total order <= maxord
  Jet jet_at(const Vec3& x, std::size_t i, int order) const;

 private:
  double t0_;
  GridSpec grid_;
  std::vector<std::vector<double>> profs_;
};

struct WordNormOptions {
  std::size_t max_len = 2;
  std::size_t radial_stride = 2;
  std::size_t margin = 3;  // FD stencil margin in nodes
  std::size_t n_mu = 5;
  std::size_t n_phi = 10;
};

// Per-word data for one instant of a multi-mode radial field family.
// Gamma words are indexed in the level order of enumerate_words(kGammaLetters).
struct WordNormData {
  std::size_t n_words = 0;
  std::size_t n_modes = 0;
  // [word][mode]: squared L2(R^3) norms
  std::vector<std::vector<double>> value_sq;   // || Gamma^a F_j ||^2
  std::vector<std::vector<double>> deriv_sq;   // || |d_{t,x} Gamma^a F_j| ||^2
  double sq(const std::vector<std::vector<double>>& tab, std::size_t w,
            std::size_t j) const {
    return tab[w][j];
  }
};

WordNormData word_norms_radial(const std::vector<RadialSnapshotField>& modes,
                               const std::vector<Letter>& alphabet,
                               const WordNormOptions& opt, bool need_derivs);

// sum over Gamma words |alpha| <= max_len of sqrt(sum_j value_sq) -- the RHS
// aggregation used by the dyadic decay estimates (single route through modes).
double sum_word_value_norms(const WordNormData& d);

enum class NormSlot { Value, DtxDeriv, DtxyDeriv };

// Gamma-tilde aggregation: sum over words over {Gamma, d_y} with |word| <=
// max_len of the L2(R^3 x Omega) norms; each d_y letter contributes a factor
// lambda_j to mode j.  The slot picks the inner quantity: the field value,
// |d_{t,x} .|, or |d_{t,x,y} .| (the y component adds lambda_j^2 value terms).
double sum_word_norms_tilde(const WordNormData& d, const std::vector<double>& lambdas,
                            std::size_t max_len, NormSlot slot);

// sum over Gamma-tilde words of sup_{x,y} |Gamma-tilde^beta d_{t,x} w|; modes
// recombine through the y eigenbasis before the sup.
double sum_word_sups_tilde(const std::vector<RadialSnapshotField>& modes,
                           const ModeSpectrum& spec, const WordNormOptions& opt);

}  // namespace wg
