#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "wg/nonlinearity.hpp"

using namespace wg;

TEST_CASE("all-x quasilinear terms are automatically compatible") {
  Nonlinearity nl;
  nl.add_quasilinear(0, 0, 0, 1.0);
  nl.add_quasilinear(1, 2, 3, -0.7);
  nl.add_quasilinear(3, 3, 0, 2.0);
  CompatReport r = check_neumann_compatibility(nl);
  CHECK(r.compatible);
  CHECK(r.closed_form_compatible);
  CHECK(r.routes_agree);
}

TEST_CASE("d_t u d_t d_y u is incompatible with a clean witness") {
  Nonlinearity nl;
  nl.add_quasilinear(0, 4, 0, 1.0);
  CompatReport r = check_neumann_compatibility(nl);
  CHECK(!r.compatible);
  CHECK(!r.closed_form_compatible);
  CHECK(r.routes_agree);
  REQUIRE(!r.witnesses.empty());
  // theta in the normal slot, xi = eta = e_0
  CHECK(r.witnesses[0].theta[4] != 0.0);
}

TEST_CASE("d_t u d_y^2 u is compatible (eta.theta = 0 kills j = 4)") {
  Nonlinearity nl;
  nl.add_quasilinear(4, 4, 0, 1.0);
  CompatReport r = check_neumann_compatibility(nl);
  CHECK(r.compatible);
  CHECK(r.closed_form_compatible);
  CHECK(r.routes_agree);
}

TEST_CASE("symmetrization stores half the mixed coefficient on each side") {
  Nonlinearity nl;
  nl.add_quasilinear(0, 4, 0, 1.0);
  CHECK(nl.B[0][4][0] == doctest::Approx(0.5));
  CHECK(nl.B[4][0][0] == doctest::Approx(0.5));
  CHECK(nl.B[0][4][0] + nl.B[4][0][0] == doctest::Approx(1.0));
}

TEST_CASE("sampling and closed-form routes agree on random coefficient sets") {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int n_compat = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    Nonlinearity nl;
    for (int j = 0; j < 5; ++j)
      for (int k = j; k < 5; ++k)
        for (int l = 0; l < 5; ++l) nl.add_quasilinear(j, k, l, u(rng));
    const bool force_compatible = (rep % 2 == 0);
    if (force_compatible) {
      // project out the symmetrized B^{j4}_l, j,l <= 3
      for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
          const double avg = 0.5 * (nl.B[j][4][l] + nl.B[4][j][l]);
          nl.B[j][4][l] -= avg;
          nl.B[4][j][l] -= avg;
        }
    }
    CompatReport r = check_neumann_compatibility(nl, 99 + rep);
    CHECK(r.routes_agree);
    if (force_compatible) CHECK(r.compatible);
    if (r.compatible) ++n_compat;
  }
  CHECK(n_compat >= 500);   // every projected set
  CHECK(n_compat <= 510);   // unprojected random sets are a.s. incompatible
}

TEST_CASE("presets are rotation invariant in the x slots") {
  for (const char* name :
       {"john", "qt_dtt", "qt_lapx", "grad_dot_dtt", "dy_compat", "thm11", "thm12"}) {
    CHECK(rotation_invariance_defect(nonlinearity_preset(name)) < 1e-12);
  }
}

TEST_CASE("a single-direction quasilinear term is not rotation invariant") {
  Nonlinearity nl;
  nl.add_quasilinear(1, 1, 0, 1.0);  // d_t u * d_1^2 u alone
  CHECK(rotation_invariance_defect(nl) > 0.05);
}

TEST_CASE("unknown preset is rejected") {
  CHECK_THROWS_AS(nonlinearity_preset("bogus"), std::invalid_argument);
}
