#include "wg/ygrid.hpp"

#include <stdexcept>

namespace wg {

YGrid uniform_trapezoid_grid(double a, double b, std::size_t n) {
  if (!(a < b)) throw std::invalid_argument("uniform_trapezoid_grid: need a < b");
  if (n < 2) throw std::invalid_argument("uniform_trapezoid_grid: need >= 2 nodes");
  YGrid g;
  g.nodes.resize(n);
  g.weights.resize(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    g.nodes[i] = a + static_cast<double>(i) * h;
    g.weights[i] = h;
  }
  g.nodes.back() = b;  // avoid drift in the last node
  g.weights.front() *= 0.5;
  g.weights.back() *= 0.5;
  return g;
}

double integrate(const YGrid& g, const std::vector<double>& values) {
  if (values.size() != g.size())
    throw std::invalid_argument("integrate: value/grid size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * values[i];
  return s;
}

}  // namespace wg
