#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "wg/spectral.hpp"

using namespace wg;

TEST_CASE("neumann eigenvalues on [0,pi]") {
  ModeSpectrum s = build_spectrum({0.0, M_PI, BoundaryCondition::Neumann}, 4);
  REQUIRE(s.lambdas.size() == 4);
  CHECK(s.lambdas[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.lambdas[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.lambdas[2] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.lambdas[3] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("dirichlet eigenvalues on [0,pi]") {
  ModeSpectrum s = build_spectrum({0.0, M_PI, BoundaryCondition::Dirichlet}, 3);
  CHECK(s.lambdas[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.lambdas[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.lambdas[2] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("neumann eigenvalues scale with length") {
  ModeSpectrum s = build_spectrum({0.0, 2.0, BoundaryCondition::Neumann}, 3);
  CHECK(s.lambdas[0] == doctest::Approx(0.0));
  CHECK(s.lambdas[1] == doctest::Approx(M_PI / 2));
  CHECK(s.lambdas[2] == doctest::Approx(M_PI));
}

TEST_CASE("build_spectrum rejects J=0") {
  CHECK_THROWS_AS(build_spectrum({0.0, 1.0, BoundaryCondition::Neumann}, 0),
                  std::invalid_argument);
}

TEST_CASE("eigenfunction values") {
  ModeSpectrum s = build_spectrum({0.0, M_PI, BoundaryCondition::Neumann}, 4);
  YGrid g = default_grid(s);
  SUBCASE("zero mode is constant 1/sqrt(pi)") {
    auto v = eigenfunction_values(s, 1, g);
    for (double x : v) CHECK(x == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));
  }
  SUBCASE("mode 2 at y=0 is sqrt(2/pi)") {
    auto v = eigenfunction_values(s, 2, g);
    CHECK(v[0] == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-14));
  }
  SUBCASE("mode index out of range") {
    CHECK_THROWS_AS(eigenfunction_values(s, 5, g), std::invalid_argument);
    CHECK_THROWS_AS(eigenfunction_values(s, 0, g), std::invalid_argument);
  }
}

TEST_CASE("dirichlet mode 1 peaks at midpoint") {
  ModeSpectrum s = build_spectrum({0.0, M_PI, BoundaryCondition::Dirichlet}, 3);
  YGrid g = uniform_trapezoid_grid(0.0, M_PI, 9);  // node 4 is pi/2
  auto v = eigenfunction_values(s, 1, g);
  CHECK(v[4] == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-14));
}

TEST_CASE("projection of constants and band-limited functions") {
  ModeSpectrum s = build_spectrum({0.0, M_PI, BoundaryCondition::Neumann}, 8);
  YGrid g = default_grid(s);
  SUBCASE("h = 3 is a pure zero mode") {
    std::vector<double> h(g.size(), 3.0);
    ModeCoefficients c = project(h, s, g);
    CHECK(c.values[0] == doctest::Approx(3.0 * std::sqrt(M_PI)).epsilon(1e-13));
    for (std::size_t j = 1; j < c.size(); ++j)
      CHECK(std::abs(c.values[j]) < 1e-12);
  }
  SUBCASE("h = cos(y) hits only mode 2") {
    std::vector<double> h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) h[i] = std::cos(g.nodes[i]);
    ModeCoefficients c = project(h, s, g);
    CHECK(c.values[1] == doctest::Approx(std::sqrt(M_PI / 2)).epsilon(1e-13));
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j == 1) continue;
      CHECK(std::abs(c.values[j]) < 1e-12);
    }
  }
  SUBCASE("size mismatch is rejected") {
    std::vector<double> h(g.size() + 1, 1.0);
    CHECK_THROWS_AS(project(h, s, g), std::invalid_argument);
  }
}

TEST_CASE("reconstruct round trip") {
  ModeSpectrum s = build_spectrum({0.0, 1.0, BoundaryCondition::Neumann}, 8);
  YGrid g = default_grid(s);
  SUBCASE("basis vector gives constant") {
    ModeCoefficients c;
    c.values.assign(8, 0.0);
    c.values[0] = 1.0;
    auto h = reconstruct(c, s, g);
    for (double v : h) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("random coefficients round trip to 1e-10") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ModeCoefficients c;
    for (int j = 0; j < 8; ++j) c.values.push_back(u(rng));
    auto h = reconstruct(c, s, g);
    ModeCoefficients c2 = project(h, s, g);
    for (int j = 0; j < 8; ++j)
      CHECK(std::abs(c2.values[j] - c.values[j]) < 1e-10);
  }
  SUBCASE("zero coefficients give the zero field") {
    ModeCoefficients c;
    c.values.assign(8, 0.0);
    auto h = reconstruct(c, s, g);
    for (double v : h) CHECK(v == 0.0);
  }
}

TEST_CASE("round trip stays exact up to J=64") {
  ModeSpectrum s = build_spectrum({0.0, 2.5, BoundaryCondition::Neumann}, 64);
  YGrid g = default_grid(s);
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ModeCoefficients c;
  for (int j = 0; j < 64; ++j) c.values.push_back(u(rng));
  ModeCoefficients c2 = project(reconstruct(c, s, g), s, g);
  double worst = 0.0;
  for (int j = 0; j < 64; ++j)
    worst = std::max(worst, std::abs(c2.values[j] - c.values[j]));
  CHECK(worst < 1e-10);
}

TEST_CASE("plancherel defect") {
  SUBCASE("single eigenmode has defect below 1e-12") {
    ModeSpectrum s = build_spectrum({0.0, M_PI, BoundaryCondition::Neumann}, 6);
    YGrid g = default_grid(s);
    auto h = eigenfunction_values(s, 2, g);
    CHECK(plancherel_defect(h, s, g) < 1e-12);
  }
  SUBCASE("band-limited cos(y)+cos(2y) on [0,pi], J>=3") {
    ModeSpectrum s = build_spectrum({0.0, M_PI, BoundaryCondition::Neumann}, 4);
    YGrid g = default_grid(s);
    std::vector<double> h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      h[i] = std::cos(g.nodes[i]) + std::cos(2.0 * g.nodes[i]);
    CHECK(plancherel_defect(h, s, g) < 1e-12);
  }
  SUBCASE("zero input returns 0 by convention") {
    ModeSpectrum s = build_spectrum({0.0, 1.0, BoundaryCondition::Neumann}, 4);
    YGrid g = default_grid(s);
    std::vector<double> h(g.size(), 0.0);
    CHECK(plancherel_defect(h, s, g) == 0.0);
  }
  SUBCASE("smooth bump defect decreases from J=4 to J=32") {
    BaseInterval base{0.0, 1.0, BoundaryCondition::Neumann};
    YGrid g = uniform_trapezoid_grid(0.0, 1.0, 2049);
    std::vector<double> h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double y = g.nodes[i];
      h[i] = std::exp(-40.0 * (y - 0.37) * (y - 0.37));
    }
    const double d4 = plancherel_defect(h, build_spectrum(base, 4), g);
    const double d32 = plancherel_defect(h, build_spectrum(base, 32), g);
    CHECK(d32 < d4);
  }
}

// Frozen oracle: exact integrals (40-digit quadrature) for h = exp(-y) on the
// Neumann base [0,1] give ||h||^2 = 0.43233235838169365 and a J=16 tail defect
// of 4.5145906968e-6 (the tail only drops below 1e-6 at J=32: 5.5696e-7).
TEST_CASE("plancherel defect of exp(-y) matches the exact-integral oracle") {
  BaseInterval base{0.0, 1.0, BoundaryCondition::Neumann};
  ModeSpectrum s16 = build_spectrum(base, 16);
  auto defect_at = [&](std::size_t n_nodes) {
    YGrid g = uniform_trapezoid_grid(0.0, 1.0, n_nodes);
    std::vector<double> h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) h[i] = std::exp(-g.nodes[i]);
    return plancherel_defect(h, s16, g);
  };
  const double coarse = defect_at(2001);
  const double fine = defect_at(4001);
  const double oracle = 4.5145906968e-6;
  CHECK(std::abs(fine - oracle) / oracle < 1e-2);
  // quadrature converges toward the oracle
  CHECK(std::abs(fine - oracle) <= std::abs(coarse - oracle) + 1e-12);
  // the J=32 truncation is strictly better
  YGrid g = uniform_trapezoid_grid(0.0, 1.0, 4001);
  std::vector<double> h(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) h[i] = std::exp(-g.nodes[i]);
  const double d32 = plancherel_defect(h, build_spectrum(base, 32), g);
  CHECK(d32 < fine);
}

TEST_CASE("weyl ratios are exact for the interval") {
  SUBCASE("neumann [0,pi]") {
    WeylReport r = weyl_check(build_spectrum({0.0, M_PI, BoundaryCondition::Neumann}, 10));
    CHECK(r.max_deviation < 1e-14);
  }
  SUBCASE("neumann [0,2pi]") {
    WeylReport r =
        weyl_check(build_spectrum({0.0, 2.0 * M_PI, BoundaryCondition::Neumann}, 10));
    CHECK(r.max_deviation < 1e-14);
  }
  SUBCASE("dirichlet [0,1] with shifted index") {
    WeylReport r =
        weyl_check(build_spectrum({0.0, 1.0, BoundaryCondition::Dirichlet}, 5));
    CHECK(r.max_deviation < 1e-14);
  }
}

TEST_CASE("gram matrix is the identity under quadrature") {
  ModeSpectrum s = build_spectrum({-0.5, 1.7, BoundaryCondition::Neumann}, 16);
  CHECK(gram_defect(s, default_grid(s)) < 1e-10);
  ModeSpectrum sd = build_spectrum({-0.5, 1.7, BoundaryCondition::Dirichlet}, 16);
  CHECK(gram_defect(sd, default_grid(sd)) < 1e-10);
}

TEST_CASE("eigen-relation holds at second order in the grid spacing") {
  // second finite difference of e_j vs -lambda_j^2 e_j, measured order >= 1.9
  ModeSpectrum s = build_spectrum({0.0, M_PI, BoundaryCondition::Neumann}, 5);
  auto fd_err = [&](std::size_t n) {
    YGrid g = uniform_trapezoid_grid(0.0, M_PI, n);
    auto e = eigenfunction_values(s, 4, g);
    const double lam = s.lambdas[3];
    const double h = g.nodes[1] - g.nodes[0];
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
      const double dd = (e[i + 1] - 2.0 * e[i] + e[i - 1]) / (h * h);
      worst = std::max(worst, std::abs(dd + lam * lam * e[i]));
    }
    return worst;
  };
  const double e1 = fd_err(101), e2 = fd_err(201);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 1.9);
}

TEST_CASE("boundary behaviour of the sampled modes") {
  SUBCASE("dirichlet endpoints are exactly zero") {
    ModeSpectrum s = build_spectrum({0.0, 2.0, BoundaryCondition::Dirichlet}, 6);
    YGrid g = default_grid(s);
    for (std::size_t j = 1; j <= 6; ++j) {
      auto e = eigenfunction_values(s, j, g);
      CHECK(e.front() == 0.0);
      CHECK(std::abs(e.back()) < 1e-13);
    }
  }
  SUBCASE("neumann one-sided derivative vanishes at O(h^2)") {
    ModeSpectrum s = build_spectrum({0.0, 2.0, BoundaryCondition::Neumann}, 6);
    auto one_sided = [&](std::size_t n) {
      YGrid g = uniform_trapezoid_grid(0.0, 2.0, n);
      auto e = eigenfunction_values(s, 3, g);
      const double h = g.nodes[1] - g.nodes[0];
      // second-order one-sided derivative at a
      return std::abs((-3.0 * e[0] + 4.0 * e[1] - e[2]) / (2.0 * h));
    };
    const double d1 = one_sided(101), d2 = one_sided(201);
    CHECK(d1 < 1e-3);
    CHECK(std::log2(d1 / d2) >= 1.9);
  }
}
