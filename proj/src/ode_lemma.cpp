#include "wg/ode_lemma.hpp"

#include <cmath>
#include <stdexcept>

namespace wg {

OdeLemmaResult check_ode_lemma(double mu, const std::function<double(double)>& h,
                               double a, double b, double v0, double v0p,
                               std::size_t steps) {
  if (mu < 1.0) throw std::invalid_argument("check_ode_lemma: need mu >= 1");
  if (!(a < b)) throw std::invalid_argument("check_ode_lemma: need a < b");
  const double dr = (b - a) / static_cast<double>(steps);

  double v = v0, w = v0p;
  double sup_v = std::abs(v0);
  double int_h = 0.0;  // trapezoid alongside the march
  double h_prev = std::abs(h(a));
  auto acc = [&](double rho, double vv, double ww, double& dv, double& dw) {
    dv = ww;
    dw = h(rho) - mu * mu * vv;
  };
  for (std::size_t i = 0; i < steps; ++i) {
    const double rho = a + static_cast<double>(i) * dr;
    double k1v, k1w, k2v, k2w, k3v, k3w, k4v, k4w;
    acc(rho, v, w, k1v, k1w);
    acc(rho + dr / 2, v + dr / 2 * k1v, w + dr / 2 * k1w, k2v, k2w);
    acc(rho + dr / 2, v + dr / 2 * k2v, w + dr / 2 * k2w, k3v, k3w);
    acc(rho + dr, v + dr * k3v, w + dr * k3w, k4v, k4w);
    v += dr / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    w += dr / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w);
    sup_v = std::max(sup_v, std::abs(v));
    const double h_here = std::abs(h(rho + dr));
    int_h += 0.5 * dr * (h_prev + h_here);
    h_prev = h_here;
  }

  OdeLemmaResult r;
  r.sup_v = sup_v;
  r.bound = std::abs(v0) + std::abs(v0p) + int_h / mu;
  r.ratio = r.bound > 0.0 ? sup_v / r.bound : 0.0;
  return r;
}

}  // namespace wg
