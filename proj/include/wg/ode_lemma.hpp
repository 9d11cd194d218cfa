#pragma once

#include <functional>

#include "wg/estimates.hpp"

namespace wg {

// v'' + mu^2 v = h on [a,b]:  sup|v| <= |v(a)| + |v'(a)| + (1/mu) int |h|,
// with constant exactly 1 for mu >= 1.  The ODE is integrated with RK4 on a
// fine step; the returned ratio is sup|v| / bound.
struct OdeLemmaResult {
  double sup_v = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

OdeLemmaResult check_ode_lemma(double mu, const std::function<double(double)>& h,
                               double a, double b, double v0, double v0p,
                               std::size_t steps = 200000);

}  // namespace wg
