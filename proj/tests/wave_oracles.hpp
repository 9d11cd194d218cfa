#pragma once

// Closed-form oracles for the radial wave tests: the 1D d'Alembert solution of
// v_tt = v_rr with odd data extension, which is exactly r*u for the radial 3D
// wave equation, plus a quadrature Duhamel for forced zero-mode problems.
// Test-only; independent of the solver path it checks.

#include <cmath>
#include <functional>

#include "wg/data.hpp"

namespace wg::testing {

// u(t,r) for Box u = 0, u(t0) = f, u_t(t0) = 0, f radial with profile data.f.
inline double dalembert_u(const InitialData& data, double amp_f, double t0, double t,
                          double r) {
  const double tau = t - t0;
  auto V = [&](double s) {  // odd extension of s -> s*f(|s|)
    return s * data.eps * amp_f * data.profile(std::abs(s));
  };
  if (r < 1e-12) {
    // v(t,0)=0; u(t,0) = dv/dr at 0 = (V(tau) + V(-tau))/2 / dr ... use the limit
    // u(t,0) = V'(tau) with V' even:
    const double h = 1e-5;
    return (V(tau + h) - V(tau - h)) / (2.0 * h);
  }
  return 0.5 * (V(r + tau) + V(r - tau)) / r;
}

// v(t,r) for v_tt = v_rr + F(t,r) on r>0, v=0 at t=t0, odd-extended forcing:
// Duhamel: v(t,r) = 1/2 int_{t0}^t int_{r-(t-s)}^{r+(t-s)} Ftilde(s,rho) drho ds.
inline double duhamel_v(const std::function<double(double, double)>& F, double t0,
                        double t, double r, int ns = 400, int nr = 400) {
  auto Ft = [&](double s, double rho) {
    if (rho >= 0.0) return F(s, rho);
    return -F(s, -rho);
  };
  double total = 0.0;
  const double ds = (t - t0) / ns;
  for (int a = 0; a < ns; ++a) {
    const double s = t0 + (a + 0.5) * ds;
    const double lo = r - (t - s), hi = r + (t - s);
    double inner = 0.0;
    const double dz = (hi - lo) / nr;
    for (int b = 0; b < nr; ++b) inner += Ft(s, lo + (b + 0.5) * dz) * dz;
    total += inner * ds;
  }
  return 0.5 * total;
}

}  // namespace wg::testing
