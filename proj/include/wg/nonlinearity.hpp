#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace wg {

// Quadratic nonlinearity for the waveguide problem:
//   Q = sum_{0<=j,k,l<=4} B[j][k][l] d_l u d_j d_k u + sum_{0<=j,k<=4} R[j][k] d_j u d_k u
// with index 4 = y.  B is stored symmetrized in (j,k) since d_j d_k u is
// symmetric; construction symmetrizes whatever is supplied.
struct Nonlinearity {
  double B[5][5][5] = {};
  double R[5][5] = {};
  bool rotation_invariant = true;

  bool has_quasilinear() const;
  bool has_y_terms() const;

  Nonlinearity& add_quasilinear(int j, int k, int l, double coeff);
  Nonlinearity& add_semilinear(int j, int k, double coeff);
};

struct CompatWitness {
  std::array<double, 5> theta, xi, eta;
  double value = 0.0;
};

struct CompatReport {
  bool compatible = true;
  std::vector<CompatWitness> witnesses;
  // closed-form route: max over j,l <= 3 of |B[j][4][l] + B[4][j][l]|
  double closed_form_max = 0.0;
  bool closed_form_compatible = true;
  bool routes_agree = true;
};

// The nonlinear Neumann compatibility condition: the form
// sum B^{jk}_l xi_l eta_j theta_k must vanish whenever theta is the unit
// normal slot (0,0,0,0,nu) and xi, eta are orthogonal to it.  Checked two
// independent ways: dense sampling over X (basis pairs plus random draws) and
// the closed-form d=1 criterion B^{j4}_l + B^{4j}_l = 0 for j,l <= 3.
CompatReport check_neumann_compatibility(const Nonlinearity& nl,
                                         std::uint64_t seed = 2026,
                                         std::size_t random_pairs = 32,
                                         double tol = 1e-12);

// Named presets used by the CLI and the experiments.
//   none          : linear problem
//   john          : Q = (d_t u)^2
//   qt_dtt        : Q = d_t u * d_t^2 u
//   qt_lapx       : Q = d_t u * Delta_x u
//   grad_dot_dtt  : Q = sum_i d_i u d_i d_t u
//   dy_incompat   : Q = d_t u * d_t d_y u   (fails the compatibility gate)
//   dy_compat     : Q = d_t u * d_y^2 u
//   thm11         : Q = d_t u * d_t^2 u + (d_t u)^2
//   thm12         : Q = d_t u * d_y^2 u + (d_t u)^2
Nonlinearity nonlinearity_preset(const std::string& name);

// Numerical rotation-invariance probe: evaluates Q on a generic jet sample at
// random rotations of the x-frame and reports the worst mismatch.
double rotation_invariance_defect(const Nonlinearity& nl, std::uint64_t seed = 7);

}  // namespace wg
