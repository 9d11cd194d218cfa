#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "wg/jet.hpp"

using namespace wg;

TEST_CASE("jet of a polynomial reproduces its partials") {
  // f = t^2 x1 + 3 x2 x3 - x1^3
  const double t = 1.3, x1 = -0.7, x2 = 0.4, x3 = 2.1;
  Jet T = Jet::variable(4, 0, t);
  Jet X1 = Jet::variable(4, 1, x1);
  Jet X2 = Jet::variable(4, 2, x2);
  Jet X3 = Jet::variable(4, 3, x3);
  Jet f = T * T * X1 + 3.0 * (X2 * X3) - X1 * X1 * X1;
  CHECK(f.value() == doctest::Approx(t * t * x1 + 3 * x2 * x3 - x1 * x1 * x1));
  CHECK(f.partial(1, 0, 0, 0) == doctest::Approx(2 * t * x1));
  CHECK(f.partial(0, 1, 0, 0) == doctest::Approx(t * t - 3 * x1 * x1));
  CHECK(f.partial(0, 0, 1, 1) == doctest::Approx(3.0));
  CHECK(f.partial(2, 1, 0, 0) == doctest::Approx(2.0));
  CHECK(f.partial(0, 3, 0, 0) == doctest::Approx(-6.0));
  CHECK(f.partial(0, 0, 2, 0) == doctest::Approx(0.0));
}

TEST_CASE("exp composition matches closed-form derivatives") {
  const double x = 0.37;
  Jet X = Jet::variable(5, 1, x);
  Jet f = jet_exp(X * X * (-1.0));  // exp(-x^2)
  const double v = std::exp(-x * x);
  CHECK(f.value() == doctest::Approx(v).epsilon(1e-14));
  CHECK(f.partial(0, 1, 0, 0) == doctest::Approx(-2 * x * v).epsilon(1e-13));
  CHECK(f.partial(0, 2, 0, 0) == doctest::Approx((4 * x * x - 2) * v).epsilon(1e-13));
  CHECK(f.partial(0, 3, 0, 0) ==
        doctest::Approx((12 * x - 8 * x * x * x) * v).epsilon(1e-12));
}

TEST_CASE("sqrt and reciprocal jets") {
  const double x1 = 0.8, x2 = -0.6, x3 = 0.3;
  Jet r2 = Jet::variable(3, 1, x1) * Jet::variable(3, 1, x1) +
           Jet::variable(3, 2, x2) * Jet::variable(3, 2, x2) +
           Jet::variable(3, 3, x3) * Jet::variable(3, 3, x3);
  Jet r = jet_sqrt(r2);
  const double rv = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
  CHECK(r.value() == doctest::Approx(rv).epsilon(1e-14));
  CHECK(r.partial(0, 1, 0, 0) == doctest::Approx(x1 / rv).epsilon(1e-13));
  // d^2/dx1^2 sqrt = (r^2 - x1^2)/r^3
  CHECK(r.partial(0, 2, 0, 0) ==
        doctest::Approx((rv * rv - x1 * x1) / (rv * rv * rv)).epsilon(1e-12));
  Jet inv = jet_recip(r);
  CHECK(inv.value() == doctest::Approx(1.0 / rv).epsilon(1e-13));
  CHECK(inv.partial(0, 1, 0, 0) ==
        doctest::Approx(-x1 / (rv * rv * rv)).epsilon(1e-12));
}

TEST_CASE("derivative jets shift coefficients correctly") {
  Jet T = Jet::variable(4, 0, 0.9);
  Jet X = Jet::variable(4, 1, 0.2);
  Jet f = jet_sin(T * X);
  Jet ft = f.derivative(0);
  // d/dt sin(t x) = x cos(t x)
  CHECK(ft.value() == doctest::Approx(0.2 * std::cos(0.9 * 0.2)).epsilon(1e-14));
  CHECK(ft.partial(0, 1, 0, 0) ==
        doctest::Approx(std::cos(0.18) - 0.9 * 0.2 * std::sin(0.18)).epsilon(1e-13));
}

TEST_CASE("mixed partials share one storage slot") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    Jet f = jet_exp(Jet::variable(4, 1, u(rng)) * Jet::variable(4, 2, u(rng)) +
                    Jet::variable(4, 0, u(rng)) * Jet::variable(4, 3, u(rng)));
    // d1 d2 f and d2 d1 f read the same entry: bit-identical
    CHECK(f.derivative(1).derivative(2).value() ==
          f.derivative(2).derivative(1).value());
    CHECK(f.derivative(0).derivative(3).partial(0, 1, 0, 0) ==
          f.derivative(3).derivative(0).partial(0, 1, 0, 0));
  }
}

TEST_CASE("affine_mul multiplies by (c0 + delta)") {
  Jet X = Jet::variable(3, 1, 0.5);
  Jet f = X * X;  // x^2 around 0.5
  Jet g = f.affine_mul(0.5, 1);  // multiply by x = (0.5 + dx1): expect x^3
  CHECK(g.value() == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(g.partial(0, 1, 0, 0) == doctest::Approx(3 * 0.25).epsilon(1e-14));
  CHECK(g.partial(0, 2, 0, 0) == doctest::Approx(6 * 0.5).epsilon(1e-14));
  CHECK(g.partial(0, 3, 0, 0) == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("order exhaustion throws") {
  Jet f = Jet::constant(0, 1.0);
  CHECK_THROWS(f.derivative(0));
}
