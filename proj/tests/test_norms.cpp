#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wg/norms.hpp"

using namespace wg;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(5, x, w);
  double s0 = 0.0, s2 = 0.0, s8 = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    s0 += w[i];
    s2 += w[i] * x[i] * x[i];
    s8 += w[i] * std::pow(x[i], 8);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(s8 == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("spherical grid total weight is the ball volume") {
  SpaceGrid3 g = SpaceGrid3::spherical(2.0, 201);
  double vol = 0.0;
  for (const GridNode& n : g.nodes) vol += n.weight;
  CHECK(vol == doctest::Approx(4.0 / 3.0 * M_PI * 8.0).epsilon(1e-4));
}

TEST_CASE("gaussian L2 norm matches the closed form") {
  // ||exp(-|x|^2)||^2 = (pi/2)^{3/2} = 1.9687012432153025
  FieldJet f = gaussian_bump({0, 0, 0}, 1.0);
  const double expect2 = std::pow(M_PI / 2.0, 1.5);
  SUBCASE("radial backend") {
    WeightedNormReport r = weighted_norms(f, 0.0, SpaceGrid3::radial(8.0, 1601));
    CHECK(r.l2 * r.l2 == doctest::Approx(expect2).epsilon(1e-6));
    CHECK(std::abs(r.refinement_ratio - 1.0) < 1e-6);
  }
  SUBCASE("cartesian and radial backends agree") {
    WeightedNormReport rr = weighted_norms(f, 0.0, SpaceGrid3::radial(8.0, 1601));
    WeightedNormReport rc = weighted_norms(f, 0.0, SpaceGrid3::cartesian(8.0, 0.25));
    CHECK(std::abs(rc.l2 - rr.l2) / rr.l2 < 1e-4);
  }
}

TEST_CASE("sup of a height-one bump is one") {
  FieldJet f = static_bump(1.0);
  WeightedNormReport r = weighted_norms(f, 0.0, SpaceGrid3::radial(2.0, 801));
  CHECK(r.sup == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("weighted sups carry the japanese-bracket weights") {
  FieldJet f = static_bump(1.0);
  WeightedNormReport r = weighted_norms(f, 3.0, SpaceGrid3::radial(2.0, 801));
  // the <t-r> weight at the bump center (r ~ 0, t = 3) is sqrt(10)
  CHECK(r.weighted_sup[PointWeight::Tmr] ==
        doctest::Approx(std::sqrt(10.0)).epsilon(1e-2));
  CHECK(r.weighted_sup[PointWeight::RHalf] <= r.weighted_sup[PointWeight::ROne] + 1e-12);
}

TEST_CASE("support overflow is detected") {
  FieldJet f = smoothed_outgoing(1.0);
  // at t=10 the shell lives near r=10, far outside a radius-4 grid
  CHECK_THROWS_AS(weighted_norms(f, 10.0, SpaceGrid3::radial(4.0, 401)),
                  SupportOverflow);
}

TEST_CASE("norm quadrature is stable under halving") {
  FieldJet f = gaussian_bump({0, 0, 0}, 2.0);
  WeightedNormReport r = weighted_norms(f, 0.5, SpaceGrid3::radial(16.0, 401));
  CHECK(std::abs(r.refinement_ratio - 1.0) < 0.01);
}

TEST_CASE("radial boost norm identity") {
  SUBCASE("time-independent radial field at t=0 gives zero on both sides") {
    FieldJet f = static_bump(1.5);
    BoostIdentityReport r = radial_boost_norm_identity(f, 0.0);
    CHECK(r.sum_boost_sq == doctest::Approx(0.0));
    CHECK(r.omega_r_sq == doctest::Approx(0.0));
  }
  SUBCASE("outgoing field at t=5") {
    FieldJet f = smoothed_outgoing(1.0);
    BoostIdentityReport r = radial_boost_norm_identity(f, 5.0);
    CHECK(r.sum_boost_sq > 0.0);
    CHECK(r.rel_diff < 1e-8);
  }
  SUBCASE("time-dependent gaussian at t=1") {
    FieldJet f = gaussian_bump({0, 0, 0}, 1.0);
    BoostIdentityReport r = radial_boost_norm_identity(f, 1.0);
    CHECK(r.rel_diff < 1e-8);
  }
  SUBCASE("non-radial input is rejected") {
    FieldJet f = plane_packet({1, 0, 0}, 1.0);
    CHECK_THROWS_AS(radial_boost_norm_identity(f, 1.0), std::invalid_argument);
  }
}
