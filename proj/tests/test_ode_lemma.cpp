#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "wg/ode_lemma.hpp"

using namespace wg;

TEST_CASE("equality case: h = 0, v(a)=1, v'(a)=0") {
  // v = cos(mu (rho-a)): sup = 1 and the bound is exactly 1
  OdeLemmaResult r = check_ode_lemma(3.0, [](double) { return 0.0; }, 0.0, 5.0, 1.0, 0.0);
  CHECK(r.sup_v == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("mu=5, h=1 on [0,1], zero data: closed form v = (1-cos(5 rho))/25") {
  OdeLemmaResult r = check_ode_lemma(5.0, [](double) { return 1.0; }, 0.0, 1.0, 0.0, 0.0);
  CHECK(r.sup_v == doctest::Approx(2.0 / 25.0).epsilon(1e-9));
  CHECK(r.bound == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(r.ratio == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(r.ratio <= 1.0 + 1e-6);
}

TEST_CASE("random smooth forcings never beat the bound") {
  std::mt19937_64 rng(321);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  for (int rep = 0; rep < 12; ++rep) {
    double a0 = amp(rng), a1 = amp(rng), a2 = amp(rng), a3 = amp(rng);
    auto h = [=](double rho) {
      return a0 + a1 * std::cos(M_PI * rho) + a2 * std::sin(2 * M_PI * rho) +
             a3 * std::cos(3 * M_PI * rho + 0.7);
    };
    const double mu = 1.0 + 4.0 * std::abs(amp(rng));
    OdeLemmaResult r = check_ode_lemma(mu, h, 0.0, 2.0, amp(rng), amp(rng), 100000);
    CHECK(r.ratio <= 1.0 + 1e-6);
  }
}

TEST_CASE("mu below 1 is rejected") {
  CHECK_THROWS_AS(check_ode_lemma(0.5, [](double) { return 0.0; }, 0.0, 1.0, 1.0, 0.0),
                  std::invalid_argument);
}
