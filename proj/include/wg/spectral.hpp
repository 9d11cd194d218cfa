#pragma once

#include <cstddef>
#include <vector>

#include "wg/ygrid.hpp"

namespace wg {

enum class BoundaryCondition { Neumann, Dirichlet };

struct BaseInterval {
  double a = 0.0;
  double b = 1.0;
  BoundaryCondition bc = BoundaryCondition::Neumann;

  double length() const { return b - a; }
};

// Closed-form eigenpairs of the interval Laplacian.  Neumann:
// lambda_j = (j-1)*pi/L with a constant zero mode; Dirichlet: lambda_j = j*pi/L.
// The record is plain data so an externally supplied spectrum can be dropped in.
struct ModeSpectrum {
  BaseInterval base;
  std::size_t J = 0;
  std::vector<double> lambdas;         // nondecreasing
  std::vector<double> norm_constants;  // L2(a,b) normalization of each e_j
};

struct ModeCoefficients {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

struct WeylReport {
  double max_deviation = 0.0;  // of lambda_j * L / (index * pi) from 1
  std::size_t worst_mode = 0;
};

ModeSpectrum build_spectrum(const BaseInterval& base, std::size_t J);

// Sampled normalized e_j on the grid; 1-based mode index.
std::vector<double> eigenfunction_values(const ModeSpectrum& spec, std::size_t j,
                                         const YGrid& grid);

// First derivative e_j' sampled on the grid (cosine basis -> sine series and
// vice versa); used by the waveguide solver for spectral d/dy.
std::vector<double> eigenfunction_derivative_values(const ModeSpectrum& spec,
                                                    std::size_t j, const YGrid& grid);

ModeCoefficients project(const std::vector<double>& h, const ModeSpectrum& spec,
                         const YGrid& grid);

std::vector<double> reconstruct(const ModeCoefficients& c, const ModeSpectrum& spec,
                                const YGrid& grid);

// |  ||h||^2 - sum c_j^2 | / ||h||^2, and 0 for h == 0.
double plancherel_defect(const std::vector<double>& h, const ModeSpectrum& spec,
                         const YGrid& grid);

WeylReport weyl_check(const ModeSpectrum& spec);

// Gram matrix defect max_{jk} |<e_j,e_k> - delta_jk| under the grid quadrature.
double gram_defect(const ModeSpectrum& spec, const YGrid& grid);

// Default quadrature grid resolving products of the first 2J modes.
YGrid default_grid(const ModeSpectrum& spec, std::size_t min_nodes = 129);

}  // namespace wg
