#include "wg/data.hpp"

#include <cmath>

namespace wg {

double InitialData::profile(double r) const {
  const double s = r / B;
  if (s >= 1.0) return 0.0;
  return std::pow(1.0 - s * s, poly_power);
}

double InitialData::profile_deriv(double r) const {
  const double s = r / B;
  if (s >= 1.0) return 0.0;
  return poly_power * std::pow(1.0 - s * s, poly_power - 1) * (-2.0 * s / B);
}

InitialData InitialData::pure_mode(std::size_t j, double amp_f, double amp_g,
                                   double B, double eps) {
  InitialData d;
  d.B = B;
  d.eps = eps;
  d.mode_f.assign(j, 0.0);
  d.mode_g.assign(j, 0.0);
  d.mode_f[j - 1] = amp_f;
  d.mode_g[j - 1] = amp_g;
  return d;
}

}  // namespace wg
