#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wg/estimates.hpp"

using namespace wg;

namespace {
VerifierOptions fast_opts() {
  VerifierOptions o;
  o.radial_nodes = 121;
  o.cartesian_spacing = 0.7;
  return o;
}
}  // namespace

TEST_CASE("sobolev.1 ratio is finite and refinement-stable on the gaussian") {
  RatioReport r = check_sobolev1(gaussian_bump({0, 0, 0}, 1.0), {0.5, 2.0}, fast_opts());
  CHECK(!r.degenerate);
  CHECK(r.ratio > 0.0);
  CHECK(r.ratio < 50.0);
  CHECK(r.refinement_drift < 0.05);
}

TEST_CASE("sobolev.1 flags the zero field as degenerate") {
  RatioReport r =
      check_sobolev1(scale_field(gaussian_bump({0, 0, 0}, 1.0), 0.0), {1.0}, fast_opts());
  CHECK(r.degenerate);
}

TEST_CASE("ratios are scale invariant") {
  VerifierOptions o = fast_opts();
  o.with_refinement = false;
  FieldJet f = gaussian_bump({0, 0, 0}, 1.0);
  RatioReport a = check_sobolev1(f, {1.0}, o);
  RatioReport b = check_sobolev1(scale_field(f, 10.0), {1.0}, o);
  CHECK(std::abs(a.ratio - b.ratio) / a.ratio < 1e-10);
  RatioReport ka = check_ks_pointwise(f, {1.0}, KsWhich::Delta, o);
  RatioReport kb = check_ks_pointwise(scale_field(f, 10.0), {1.0}, KsWhich::Delta, o);
  CHECK(std::abs(ka.ratio - kb.ratio) / ka.ratio < 1e-10);
}

TEST_CASE("sobolev.2 with a rotation word on a radial field has zero LHS") {
  VerifierOptions o = fast_opts();
  o.with_refinement = false;
  RatioReport r = check_sobolev2(static_bump(1.0), {0.5}, {{Letter::O12}}, o);
  CHECK(!r.degenerate);  // RHS is healthy, the rotation only kills the LHS
  CHECK(r.ratio < 1e-10);
}

TEST_CASE("sobolev.2 empty word on the outgoing solution") {
  RatioReport r =
      check_sobolev2(smoothed_outgoing(1.0), {2.0, 5.0}, {}, fast_opts());
  CHECK(!r.degenerate);
  CHECK(r.ratio < 50.0);
  CHECK(r.refinement_drift < 0.05);
}

TEST_CASE("hidano.1 with a time-derivative word") {
  RatioReport r =
      check_hidano1(gaussian_bump({0, 0, 0}, 1.0), {0.5, 2.0}, {{Letter::Dt}}, fast_opts());
  CHECK(!r.degenerate);
  CHECK(r.ratio < 50.0);
  CHECK(r.refinement_drift < 0.05);
}

TEST_CASE("KS pointwise estimates hold on both sides of r = t/2") {
  VerifierOptions o = fast_opts();
  o.exclusion_radius = 5e-2;
  RatioReport r = check_ks_pointwise(smoothed_outgoing(1.0), {3.0}, KsWhich::Delta, o);
  CHECK(!r.degenerate);
  CHECK(r.ratio < 50.0);
  CHECK(r.ratio_inner >= 0.0);
  CHECK(r.ratio_outer > 0.0);
  CHECK(r.refinement_drift < 0.05);
}

TEST_CASE("KS dtdt and dtdx on the kg mode (pointwise only)") {
  VerifierOptions o = fast_opts();
  for (KsWhich which : {KsWhich::DtDt, KsWhich::DtDx}) {
    RatioReport r = check_ks_pointwise(kg_free_mode(2.0, {0.7, 0, 0}), {0.5, 3.0},
                                       which, o);
    CHECK(!r.degenerate);
    CHECK(r.ratio < 50.0);
    CHECK(r.refinement_drift < 0.05);
  }
}

TEST_CASE("radial laplacian identity: Delta = d_r^2 + (2/r) d_r + r^-2 Omega.Omega") {
  FieldJet f = gaussian_bump({0, 0, 0}, 1.3);
  const Vec3 pts[] = {{0.7, 0.4, -0.2}, {1.5, 0, 0.3}, {0.2, 1.1, 0.9}};
  for (const Vec3& x : pts) {
    const double t = 0.8;
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    Jet j = f.evaluate(t, x, 2);
    const double lap = j.partial(0, 2, 0, 0) + j.partial(0, 0, 2, 0) + j.partial(0, 0, 0, 2);
    // d_r^2 via the Hessian
    double drr = 0.0;
    const Vec3 nh = {x[0] / r, x[1] / r, x[2] / r};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        int m[4] = {0, 0, 0, 0};
        m[a + 1] += 1;
        m[b + 1] += 1;
        drr += nh[a] * nh[b] * j.partial(m[0], m[1], m[2], m[3]);
      }
    double dr1 = 0.0;
    for (int a = 0; a < 3; ++a) {
      int m[4] = {0, 0, 0, 0};
      m[a + 1] = 1;
      dr1 += nh[a] * j.partial(m[0], m[1], m[2], m[3]);
    }
    // Omega.Omega = sum of squared rotations
    double omom = 0.0;
    for (Letter l : {Letter::O12, Letter::O13, Letter::O23}) {
      FieldJet g = apply_word({{l, l}}, f);
      omom += g.value(t, x);
    }
    CHECK(lap == doctest::Approx(drr + 2.0 / r * dr1 + omom / (r * r)).epsilon(1e-8));
  }
}

TEST_CASE("Delta.drdr: the two routes cancel exactly for w = x1") {
  // w = x1: Delta w = 0 and d_r^2 w = 0, while the identity decomposes the
  // difference as (2/r) d_r w + r^-2 Omega.Omega w = 2 x1/r^2 - 2 x1/r^2.
  FieldJet f("linear_x1", FieldKind::General, 6,
             std::numeric_limits<double>::infinity(), 0.0,
             [](double, const Vec3& x, int order) {
               return Jet::variable(order, 1, x[0]);
             });
  const Vec3 x = {0.8, -0.5, 1.1};
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  const double t = 1.0;
  Jet j = f.evaluate(t, x, 1);
  double dr1 = (x[0] / r) * j.partial(0, 1, 0, 0);  // only d_1 is nonzero
  const double radial_term = 2.0 / r * dr1;
  CHECK(radial_term == doctest::Approx(2.0 * x[0] / (r * r)).epsilon(1e-12));
  double omom = 0.0;
  for (Letter l : {Letter::O12, Letter::O13, Letter::O23}) {
    FieldJet g = apply_word({{l, l}}, f);
    omom += g.value(t, x);
  }
  CHECK(omom / (r * r) == doctest::Approx(-2.0 * x[0] / (r * r)).epsilon(1e-10));
  CHECK(radial_term + omom / (r * r) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("Delta.drdr ratio on the plane packet") {
  RatioReport r = check_delta_drdr(plane_packet({1, 0, 0}, 1.0), {0.5, 2.0}, fast_opts());
  CHECK(!r.degenerate);
  CHECK(r.ratio < 50.0);
  CHECK(r.refinement_drift < 0.05);
}

TEST_CASE("KS.L2 on the gaussian with and without a word") {
  RatioReport r0 = check_ks_l2(gaussian_bump({0, 0, 0}, 1.0), {0.5, 2.0}, {}, fast_opts());
  CHECK(!r0.degenerate);
  CHECK(r0.ratio < 50.0);
  CHECK(r0.refinement_drift < 0.05);
  RatioReport r1 =
      check_ks_l2(gaussian_bump({0, 0, 0}, 1.0), {0.5}, {{Letter::Dt}}, fast_opts());
  CHECK(!r1.degenerate);
  CHECK(r1.ratio < 50.0);
}

TEST_CASE("unbounded-support fields are rejected by the L2 checks") {
  CHECK_THROWS_AS(check_sobolev1(kg_free_mode(1.0, {0.5, 0, 0}), {1.0}, fast_opts()),
                  SupportOverflow);
}
