#pragma once

#include <cstddef>
#include <vector>

namespace wg {

// Compactly supported initial data for the waveguide problem: radial polynomial
// bump profiles times a Neumann mode content in y, scaled by the smallness
// parameter eps.  f = g = 0 for r > B by construction, and the y-profile is
// built from Neumann eigenfunctions so the boundary condition holds exactly.
struct InitialData {
  double B = 1.0;
  double eps = 1.0;
  int poly_power = 6;  // (1-(r/B)^2)^m; C^{m-1} at the support edge
  std::vector<double> mode_f;  // amplitude of f in mode j (index j-1)
  std::vector<double> mode_g;

  double profile(double r) const;
  double profile_deriv(double r) const;

  static InitialData pure_mode(std::size_t j, double amp_f, double amp_g,
                               double B = 1.0, double eps = 1.0);
};

}  // namespace wg
