#pragma once

#include <vector>

namespace wg {

// Quadrature rule on the base interval [a,b]: strictly increasing nodes,
// positive weights summing to b-a.
struct YGrid {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

// Composite trapezoid on n uniform nodes (n >= 2).  Exact for the cosine/sine
// products of the interval eigenbasis as long as the highest frequency index
// present is below 2*(n-1).
YGrid uniform_trapezoid_grid(double a, double b, std::size_t n);

double integrate(const YGrid& g, const std::vector<double>& values);

}  // namespace wg
