#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "wg/field.hpp"
#include "wg/grid3.hpp"

namespace wg {

struct SupportOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// <s> = sqrt(1+s^2)
inline double japanese_bracket(double s) { return std::sqrt(1.0 + s * s); }

enum class PointWeight { RHalf, ROne, RHalfTmr, Tmr, Tpr };

double point_weight(PointWeight w, double t, double r);
std::string point_weight_name(PointWeight w);

struct WeightedNormReport {
  double l2 = 0.0;
  double sup = 0.0;
  std::map<PointWeight, double> weighted_sup;
  double refinement_ratio = 1.0;  // l2(refined grid) / l2(grid)
};

WeightedNormReport weighted_norms(const FieldJet& f, double t, const SpaceGrid3& grid);

struct BoostIdentityReport {
  double sum_boost_sq = 0.0;  // sum_k ||O_{0k} f||_2^2
  double omega_r_sq = 0.0;    // ||(t d_r + r d_t) f||_2^2
  double rel_diff = 0.0;
};

// For radial f the three boosts reduce to the single radial boost
// Omega_r = t d_r + r d_t; the two norm routes must agree.
BoostIdentityReport radial_boost_norm_identity(const FieldJet& f, double t,
                                               double R = 0.0);

}  // namespace wg
