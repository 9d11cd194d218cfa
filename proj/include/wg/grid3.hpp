#pragma once

#include <vector>

#include "wg/jet.hpp"

namespace wg {

enum class GridMode { Radial, Cartesian, Spherical };

struct GridNode {
  Vec3 x;
  double weight;
  double r;
};

// Quadrature nodes for L2(R^3) integrals and grid sups.
//  radial:    nodes on the x1-axis, weight 4 pi r^2 dr (radial integrands only)
//  cartesian: uniform box [-R,R]^3
//  spherical: radial trapezoid x Gauss-Legendre in cos(theta) x uniform phi;
//             exact in angle for low-degree direction polynomials, which is
//             what vector-field words produce on radial fields.
struct SpaceGrid3 {
  GridMode mode = GridMode::Radial;
  double radius = 0.0;
  double spacing = 0.0;
  std::vector<GridNode> nodes;

  static SpaceGrid3 radial(double R, std::size_t n_r);
  static SpaceGrid3 cartesian(double R, double h);
  static SpaceGrid3 spherical(double R, std::size_t n_r, std::size_t n_mu = 5,
                              std::size_t n_phi = 10);

  // Same construction at doubled resolution (for refinement-drift checks).
  SpaceGrid3 refined() const;
};

// Gauss-Legendre rule on [-1,1].
void gauss_legendre(std::size_t n, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace wg
