#pragma once

#include <cstddef>
#include <vector>

namespace wg {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r2 = 0.0;
  std::size_t n = 0;
};

// ordinary least squares y = slope x + intercept
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wg
