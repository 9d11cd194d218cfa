#include "wg/nonlinearity.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace wg {

bool Nonlinearity::has_quasilinear() const {
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k)
      for (int l = 0; l < 5; ++l)
        if (B[j][k][l] != 0.0) return true;
  return false;
}

bool Nonlinearity::has_y_terms() const {
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k)
      for (int l = 0; l < 5; ++l)
        if (B[j][k][l] != 0.0 && (j == 4 || k == 4 || l == 4)) return true;
  for (int j = 0; j < 5; ++j)
    if (R[j][4] != 0.0 || R[4][j] != 0.0) return true;
  return false;
}

Nonlinearity& Nonlinearity::add_quasilinear(int j, int k, int l, double coeff) {
  if (j < 0 || j > 4 || k < 0 || k > 4 || l < 0 || l > 4)
    throw std::invalid_argument("add_quasilinear: index out of range");
  if (j == k) {
    B[j][k][l] += coeff;
  } else {
    B[j][k][l] += 0.5 * coeff;
    B[k][j][l] += 0.5 * coeff;
  }
  return *this;
}

Nonlinearity& Nonlinearity::add_semilinear(int j, int k, double coeff) {
  if (j < 0 || j > 4 || k < 0 || k > 4)
    throw std::invalid_argument("add_semilinear: index out of range");
  if (j == k) {
    R[j][k] += coeff;
  } else {
    R[j][k] += 0.5 * coeff;
    R[k][j] += 0.5 * coeff;
  }
  return *this;
}

namespace {

double contract(const Nonlinearity& nl, const std::array<double, 5>& theta,
                const std::array<double, 5>& xi, const std::array<double, 5>& eta) {
  double s = 0.0;
  for (int j = 0; j < 5; ++j) {
    if (eta[j] == 0.0) continue;
    for (int k = 0; k < 5; ++k) {
      if (theta[k] == 0.0) continue;
      for (int l = 0; l < 5; ++l)
        s += nl.B[j][k][l] * xi[l] * eta[j] * theta[k];
    }
  }
  return s;
}

double max_abs_B(const Nonlinearity& nl) {
  double m = 0.0;
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k)
      for (int l = 0; l < 5; ++l) m = std::max(m, std::abs(nl.B[j][k][l]));
  return m;
}

}  // namespace

CompatReport check_neumann_compatibility(const Nonlinearity& nl, std::uint64_t seed,
                                         std::size_t random_pairs, double tol) {
  CompatReport rep;
  const double scale = std::max(1.0, max_abs_B(nl));
  const double thresh = tol * scale;

  // Closed-form route (d=1): B^{j4}_l + B^{4j}_l = 0 for all j,l <= 3.
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l)
      rep.closed_form_max =
          std::max(rep.closed_form_max, std::abs(nl.B[j][4][l] + nl.B[4][j][l]));
  rep.closed_form_compatible = rep.closed_form_max <= thresh;

  // Sampling route over X: theta = (0,0,0,0,nu), xi.theta = eta.theta = 0.
  auto try_sample = [&](double nu, const std::array<double, 5>& xi,
                        const std::array<double, 5>& eta) {
    const std::array<double, 5> theta = {0, 0, 0, 0, nu};
    const double v = contract(nl, theta, xi, eta);
    if (std::abs(v) > thresh) {
      rep.compatible = false;
      if (rep.witnesses.size() < 4) rep.witnesses.push_back({theta, xi, eta, v});
    }
  };
  for (double nu : {1.0, -1.0}) {
    // Basis pairs are exhaustive for the bilinear form in (xi, eta).
    for (int l = 0; l < 4; ++l)
      for (int j = 0; j < 4; ++j) {
        std::array<double, 5> xi = {0, 0, 0, 0, 0}, eta = {0, 0, 0, 0, 0};
        xi[l] = 1.0;
        eta[j] = 1.0;
        try_sample(nu, xi, eta);
      }
    std::mt19937_64 rng(seed + (nu > 0 ? 0 : 1));
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t s = 0; s < random_pairs; ++s) {
      std::array<double, 5> xi = {g(rng), g(rng), g(rng), g(rng), 0.0};
      std::array<double, 5> eta = {g(rng), g(rng), g(rng), g(rng), 0.0};
      try_sample(nu, xi, eta);
    }
  }
  rep.routes_agree = rep.compatible == rep.closed_form_compatible;
  return rep;
}

Nonlinearity nonlinearity_preset(const std::string& name) {
  Nonlinearity nl;
  if (name == "none" || name.empty()) return nl;
  if (name == "john") return nl.add_semilinear(0, 0, 1.0);
  if (name == "qt_dtt") return nl.add_quasilinear(0, 0, 0, 1.0);
  if (name == "qt_lapx") {
    for (int i = 1; i <= 3; ++i) nl.add_quasilinear(i, i, 0, 1.0);
    return nl;
  }
  if (name == "grad_dot_dtt") {
    for (int i = 1; i <= 3; ++i) nl.add_quasilinear(i, 0, i, 1.0);
    return nl;
  }
  if (name == "dy_incompat") return nl.add_quasilinear(0, 4, 0, 1.0);
  if (name == "dy_compat") return nl.add_quasilinear(4, 4, 0, 1.0);
  if (name == "thm11") {
    nl.add_quasilinear(0, 0, 0, 1.0);
    nl.add_semilinear(0, 0, 1.0);
    return nl;
  }
  if (name == "thm12") {
    nl.add_quasilinear(4, 4, 0, 1.0);
    nl.add_semilinear(0, 0, 1.0);
    return nl;
  }
  throw std::invalid_argument("nonlinearity_preset: unknown preset '" + name + "'");
}

double rotation_invariance_defect(const Nonlinearity& nl, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);

  auto evaluate = [&](const double du[5], const double d2u[5][5]) {
    double q = 0.0;
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        for (int l = 0; l < 5; ++l) q += nl.B[j][k][l] * du[l] * d2u[j][k];
        q += nl.R[j][k] * du[j] * du[k];
      }
    return q;
  };

  double worst = 0.0;
  for (int rep = 0; rep < 24; ++rep) {
    double du[5];
    double d2u[5][5];
    for (int j = 0; j < 5; ++j) {
      du[j] = g(rng);
      for (int k = j; k < 5; ++k) d2u[j][k] = d2u[k][j] = g(rng);
    }
    // random rotation via Rodrigues
    double ax[3] = {g(rng), g(rng), g(rng)};
    const double an = std::sqrt(ax[0] * ax[0] + ax[1] * ax[1] + ax[2] * ax[2]);
    for (double& a : ax) a /= an;
    const double th = g(rng);
    const double c = std::cos(th), s = std::sin(th);
    // O = c I + s [ax]_x + (1-c) ax ax^T
    double O[3][3];
    const double K[3][3] = {{0, -ax[2], ax[1]}, {ax[2], 0, -ax[0]}, {-ax[1], ax[0], 0}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        O[i][j] = c * (i == j ? 1.0 : 0.0) + s * K[i][j] + (1 - c) * ax[i] * ax[j];

    // extended 5x5 transform acting on slots 1..3
    double E[5][5] = {};
    E[0][0] = 1.0;
    E[4][4] = 1.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) E[1 + i][1 + j] = O[i][j];

    double du2[5] = {};
    double d2u2[5][5] = {};
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) du2[a] += E[a][b] * du[b];
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        for (int p = 0; p < 5; ++p)
          for (int q = 0; q < 5; ++q) d2u2[a][b] += E[a][p] * E[b][q] * d2u[p][q];

    worst = std::max(worst, std::abs(evaluate(du2, d2u2) - evaluate(du, d2u)));
  }
  return worst;
}

}  // namespace wg
