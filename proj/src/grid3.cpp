#include "wg/grid3.hpp"

#include <cmath>
#include <stdexcept>

namespace wg {

void gauss_legendre(std::size_t n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev estimate.
    double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - static_cast<double>(k) * p2) /
             (static_cast<double>(k) + 1.0);
      }
      pp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

SpaceGrid3 SpaceGrid3::radial(double R, std::size_t n_r) {
  if (n_r < 2) throw std::invalid_argument("SpaceGrid3::radial: need >= 2 nodes");
  SpaceGrid3 g;
  g.mode = GridMode::Radial;
  g.radius = R;
  const double dr = R / static_cast<double>(n_r - 1);
  g.spacing = dr;
  g.nodes.reserve(n_r);
  for (std::size_t i = 0; i < n_r; ++i) {
    const double r = static_cast<double>(i) * dr;
    double w = 4.0 * M_PI * r * r * dr;
    if (i == 0 || i + 1 == n_r) w *= 0.5;
    g.nodes.push_back({{r, 0.0, 0.0}, w, r});
  }
  return g;
}

SpaceGrid3 SpaceGrid3::cartesian(double R, double h) {
  if (h <= 0.0) throw std::invalid_argument("SpaceGrid3::cartesian: need h > 0");
  SpaceGrid3 g;
  g.mode = GridMode::Cartesian;
  g.radius = R;
  g.spacing = h;
  const long n = std::lround(R / h);
  const double w = h * h * h;
  g.nodes.reserve(static_cast<std::size_t>(2 * n + 1) * (2 * n + 1) * (2 * n + 1));
  for (long i = -n; i <= n; ++i)
    for (long j = -n; j <= n; ++j)
      for (long k = -n; k <= n; ++k) {
        const Vec3 x = {static_cast<double>(i) * h, static_cast<double>(j) * h,
                        static_cast<double>(k) * h};
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        g.nodes.push_back({x, w, r});
      }
  return g;
}

SpaceGrid3 SpaceGrid3::spherical(double R, std::size_t n_r, std::size_t n_mu,
                                 std::size_t n_phi) {
  if (n_r < 2) throw std::invalid_argument("SpaceGrid3::spherical: need >= 2 radii");
  SpaceGrid3 g;
  g.mode = GridMode::Spherical;
  g.radius = R;
  const double dr = R / static_cast<double>(n_r - 1);
  g.spacing = dr;
  std::vector<double> mu, wmu;
  gauss_legendre(n_mu, mu, wmu);
  const double dphi = 2.0 * M_PI / static_cast<double>(n_phi);
  g.nodes.reserve(n_r * n_mu * n_phi);
  for (std::size_t i = 1; i < n_r; ++i) {  // r = 0 carries zero weight
    const double r = static_cast<double>(i) * dr;
    double wr = r * r * dr;
    if (i + 1 == n_r) wr *= 0.5;
    for (std::size_t m = 0; m < n_mu; ++m) {
      const double smu = std::sqrt(std::max(0.0, 1.0 - mu[m] * mu[m]));
      for (std::size_t p = 0; p < n_phi; ++p) {
        const double phi = dphi * static_cast<double>(p);
        const Vec3 x = {r * smu * std::cos(phi), r * smu * std::sin(phi), r * mu[m]};
        g.nodes.push_back({x, wr * wmu[m] * dphi, r});
      }
    }
  }
  return g;
}

SpaceGrid3 SpaceGrid3::refined() const {
  switch (mode) {
    case GridMode::Radial: {
      const std::size_t n = static_cast<std::size_t>(std::lround(radius / spacing));
      return radial(radius, 2 * n + 1);
    }
    case GridMode::Cartesian:
      return cartesian(radius, spacing * 0.5);
    case GridMode::Spherical: {
      const std::size_t n = static_cast<std::size_t>(std::lround(radius / spacing));
      return spherical(radius, 2 * n + 1);
    }
  }
  throw std::logic_error("SpaceGrid3::refined: bad mode");
}

}  // namespace wg
