#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wg/experiments.hpp"

using namespace wg;

TEST_CASE("line fit recovers an exact line") {
  std::vector<double> x = {1, 2, 3, 4, 5}, y;
  for (double v : x) y.push_back(-1.5 * v + 0.3);
  LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.slope_stderr < 1e-12);
}

namespace {
RunResult synthetic_run(double slope, std::size_t J = 2) {
  RunResult r;
  r.spec = build_spectrum({0.0, M_PI, BoundaryCondition::Neumann}, J);
  for (double t = 2.0; t <= 260.0; t += 1.0) {
    r.sups.t.push_back(t);
    std::vector<double> su(J), sdu(J);
    for (std::size_t j = 0; j < J; ++j) {
      su[j] = 3.0 * std::pow(t, j == 0 ? slope : -1.5);
      sdu[j] = 2.0 * std::pow(t, slope);
    }
    r.sups.sup_u.push_back(su);
    r.sups.sup_du.push_back(sdu);
    r.sups.sup_dy.push_back(0.0);
    r.sups.sup_ut_all.push_back(0.0);
  }
  return r;
}
}  // namespace

TEST_CASE("mode decay fit on synthetic power laws") {
  RunResult r = synthetic_run(-1.0);
  DecayFit wave = measure_mode_decay(r, 1);
  CHECK(wave.slope == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(wave.expected == -1.0);
  DecayFit kg = measure_mode_decay(r, 2);
  CHECK(kg.slope == doctest::Approx(-1.5).epsilon(1e-10));
  CHECK(kg.expected == -1.5);
}

TEST_CASE("window narrower than a decade is refused") {
  RunResult r = synthetic_run(-1.0);
  CHECK_THROWS_AS(measure_mode_decay(r, 1, 30.0, 100.0), InsufficientWindow);
}

TEST_CASE("y-independent run gives a degenerate d_y channel") {
  RunResult r = synthetic_run(-1.0);
  DecayFit dy = dy_decay_check(r);
  CHECK(dy.degenerate);
}

TEST_CASE("mini lifespan sweep: monotone, confirmed, positive kappa") {
  LifespanOptions o;
  o.eps_list = {1.0, 0.72, 0.55};
  o.amp = 4.0;
  o.dr = 0.2;
  o.T_budget = 120.0;
  LifespanFit fit = lifespan_sweep(o);
  REQUIRE(fit.points.size() == 3);
  for (const LifespanPoint& p : fit.points) {
    CHECK(!p.censored);
    CHECK(p.confirmed);
    CHECK(p.bracket_hi > p.bracket_lo);
  }
  CHECK(fit.monotone);
  CHECK(fit.fit_valid);
  CHECK(fit.kappa > 0.0);
}

TEST_CASE("regimes: compatible families survive, the incompatible one is refused") {
  GridSpec grid{14.0, 280};
  std::vector<RegimeRow> rows = theorem_regimes_report(0.02, 10.0, grid);
  bool saw_refused = false, saw_survived = false;
  for (const RegimeRow& r : rows) {
    if (r.preset == "dy_incompat") {
      CHECK(r.outcome == "refused");
      saw_refused = true;
    }
    if (r.preset == "thm11" || r.preset == "john" || r.preset == "none") {
      CHECK(r.outcome == "survived");
      saw_survived = true;
    }
  }
  CHECK(saw_refused);
  CHECK(saw_survived);
}
