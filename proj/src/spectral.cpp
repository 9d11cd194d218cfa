#include "wg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wg {

ModeSpectrum build_spectrum(const BaseInterval& base, std::size_t J) {
  if (!(base.a < base.b)) throw std::invalid_argument("build_spectrum: need a < b");
  if (J < 1) throw std::invalid_argument("build_spectrum: need J >= 1");
  ModeSpectrum s;
  s.base = base;
  s.J = J;
  s.lambdas.resize(J);
  s.norm_constants.resize(J);
  const double L = base.length();
  const double pi = M_PI;
  for (std::size_t j = 1; j <= J; ++j) {
    if (base.bc == BoundaryCondition::Neumann) {
      s.lambdas[j - 1] = static_cast<double>(j - 1) * pi / L;
      s.norm_constants[j - 1] = (j == 1) ? 1.0 / std::sqrt(L) : std::sqrt(2.0 / L);
    } else {
      s.lambdas[j - 1] = static_cast<double>(j) * pi / L;
      s.norm_constants[j - 1] = std::sqrt(2.0 / L);
    }
  }
  return s;
}

static void check_mode_index(const ModeSpectrum& spec, std::size_t j) {
  if (j < 1 || j > spec.J)
    throw std::invalid_argument("mode index out of range 1..J");
}

std::vector<double> eigenfunction_values(const ModeSpectrum& spec, std::size_t j,
                                         const YGrid& grid) {
  check_mode_index(spec, j);
  std::vector<double> v(grid.size());
  const double a = spec.base.a;
  const double lam = spec.lambdas[j - 1];
  const double c = spec.norm_constants[j - 1];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid.nodes[i] - a;
    if (spec.base.bc == BoundaryCondition::Neumann)
      v[i] = (j == 1) ? c : c * std::cos(lam * s);
    else
      v[i] = c * std::sin(lam * s);
  }
  return v;
}

std::vector<double> eigenfunction_derivative_values(const ModeSpectrum& spec,
                                                    std::size_t j, const YGrid& grid) {
  check_mode_index(spec, j);
  std::vector<double> v(grid.size());
  const double a = spec.base.a;
  const double lam = spec.lambdas[j - 1];
  const double c = spec.norm_constants[j - 1];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid.nodes[i] - a;
    if (spec.base.bc == BoundaryCondition::Neumann)
      v[i] = (j == 1) ? 0.0 : -c * lam * std::sin(lam * s);
    else
      v[i] = c * lam * std::cos(lam * s);
  }
  return v;
}

ModeCoefficients project(const std::vector<double>& h, const ModeSpectrum& spec,
                         const YGrid& grid) {
  if (h.size() != grid.size())
    throw std::invalid_argument("project: sample/grid size mismatch");
  ModeCoefficients c;
  c.values.resize(spec.J, 0.0);
  for (std::size_t j = 1; j <= spec.J; ++j) {
    const std::vector<double> e = eigenfunction_values(spec, j, grid);
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) s += grid.weights[i] * h[i] * e[i];
    c.values[j - 1] = s;
  }
  return c;
}

std::vector<double> reconstruct(const ModeCoefficients& c, const ModeSpectrum& spec,
                                const YGrid& grid) {
  if (c.size() != spec.J)
    throw std::invalid_argument("reconstruct: coefficient/spectrum size mismatch");
  std::vector<double> h(grid.size(), 0.0);
  for (std::size_t j = 1; j <= spec.J; ++j) {
    const std::vector<double> e = eigenfunction_values(spec, j, grid);
    const double cj = c.values[j - 1];
    for (std::size_t i = 0; i < grid.size(); ++i) h[i] += cj * e[i];
  }
  return h;
}

double plancherel_defect(const std::vector<double>& h, const ModeSpectrum& spec,
                         const YGrid& grid) {
  if (h.size() != grid.size())
    throw std::invalid_argument("plancherel_defect: sample/grid size mismatch");
  double h2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) h2 += grid.weights[i] * h[i] * h[i];
  if (h2 == 0.0) return 0.0;
  const ModeCoefficients c = project(h, spec, grid);
  double s = 0.0;
  for (double v : c.values) s += v * v;
  return std::abs(h2 - s) / h2;
}

WeylReport weyl_check(const ModeSpectrum& spec) {
  WeylReport r;
  const double L = spec.base.length();
  const double pi = M_PI;
  for (std::size_t j = 1; j <= spec.J; ++j) {
    // Neumann mode 1 has zero eigenvalue and is excluded from the ratio.
    std::size_t idx;
    if (spec.base.bc == BoundaryCondition::Neumann) {
      if (j == 1) continue;
      idx = j - 1;
    } else {
      idx = j;
    }
    const double ratio = spec.lambdas[j - 1] * L / (static_cast<double>(idx) * pi);
    const double dev = std::abs(ratio - 1.0);
    if (dev > r.max_deviation) {
      r.max_deviation = dev;
      r.worst_mode = j;
    }
  }
  return r;
}

double gram_defect(const ModeSpectrum& spec, const YGrid& grid) {
  std::vector<std::vector<double>> e(spec.J);
  for (std::size_t j = 1; j <= spec.J; ++j) e[j - 1] = eigenfunction_values(spec, j, grid);
  double worst = 0.0;
  for (std::size_t j = 0; j < spec.J; ++j) {
    for (std::size_t k = j; k < spec.J; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i)
        s += grid.weights[i] * e[j][i] * e[k][i];
      const double target = (j == k) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(s - target));
    }
  }
  return worst;
}

YGrid default_grid(const ModeSpectrum& spec, std::size_t min_nodes) {
  const std::size_t n = std::max<std::size_t>(2 * spec.J + 1, min_nodes);
  return uniform_trapezoid_grid(spec.base.a, spec.base.b, n);
}

}  // namespace wg
