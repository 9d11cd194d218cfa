#include "wg/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace wg {

namespace jet_detail {

std::size_t Tables::lookup_of(int i0, int i1, int i2, int i3) const {
  const int n = Jet::kMaxOrder + 1;
  return lookup[((static_cast<std::size_t>(i0) * n + i1) * n + i2) * n + i3];
}

const Tables& tables() {
  static const Tables t = [] {
    Tables tb;
    const int n = Jet::kMaxOrder + 1;
    tb.lookup.assign(static_cast<std::size_t>(n) * n * n * n, 0);
    tb.count_up_to.assign(Jet::kMaxOrder + 1, 0);
    for (int deg = 0; deg <= Jet::kMaxOrder; ++deg) {
      for (int i0 = deg; i0 >= 0; --i0)
        for (int i1 = deg - i0; i1 >= 0; --i1)
          for (int i2 = deg - i0 - i1; i2 >= 0; --i2) {
            const int i3 = deg - i0 - i1 - i2;
            const std::size_t idx = tb.multis.size();
            tb.multis.push_back({i0, i1, i2, i3});
            tb.degree.push_back(deg);
            tb.lookup[((static_cast<std::size_t>(i0) * n + i1) * n + i2) * n + i3] = idx;
          }
      tb.count_up_to[deg] = tb.multis.size();
    }
    return tb;
  }();
  return t;
}

}  // namespace jet_detail

using jet_detail::tables;

Jet::Jet(int order) : order_(order) {
  if (order < 0 || order > kMaxOrder)
    throw std::invalid_argument("Jet: order out of range");
  a_.assign(tables().count_up_to[order], 0.0);
}

Jet Jet::constant(int order, double value) {
  Jet j(order);
  j.a_[0] = value;
  return j;
}

Jet Jet::variable(int order, int var, double value) {
  Jet j(order);
  j.a_[0] = value;
  if (order >= 1) j.a_[1 + var] = 1.0;  // graded order: degree-1 block is t,x1,x2,x3
  return j;
}

std::size_t Jet::active_count() const { return a_.size(); }

double Jet::coeff(int i0, int i1, int i2, int i3) const {
  if (i0 + i1 + i2 + i3 > order_) return 0.0;
  return a_[tables().lookup_of(i0, i1, i2, i3)];
}

double Jet::partial(int i0, int i1, int i2, int i3) const {
  static const double fact[] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};
  return coeff(i0, i1, i2, i3) * fact[i0] * fact[i1] * fact[i2] * fact[i3];
}

Jet Jet::derivative(int var) const {
  if (order_ < 1) throw std::runtime_error("Jet::derivative: order exhausted");
  const auto& tb = tables();
  Jet out(order_ - 1);
  for (std::size_t i = 0; i < out.a_.size(); ++i) {
    std::array<int, 4> m = tb.multis[i];
    m[var] += 1;
    out.a_[i] = static_cast<double>(m[var]) * a_[tb.lookup_of(m[0], m[1], m[2], m[3])];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  Jet out(order);
  const std::size_t n = std::min(out.a_.size(), a_.size());
  for (std::size_t i = 0; i < n; ++i) out.a_[i] = a_[i];
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.order_ != order_) throw std::invalid_argument("Jet: order mismatch in +");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.order_ != order_) throw std::invalid_argument("Jet: order mismatch in -");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Jet Jet::mul(const Jet& a, const Jet& b) {
  if (a.order_ != b.order_) throw std::invalid_argument("Jet: order mismatch in *");
  const auto& tb = tables();
  Jet out(a.order_);
  const int K = a.order_;
  for (std::size_t i = 0; i < a.a_.size(); ++i) {
    const double av = a.a_[i];
    if (av == 0.0) continue;
    const auto& ma = tb.multis[i];
    const int rem = K - tb.degree[i];
    const std::size_t jmax = tb.count_up_to[rem];
    for (std::size_t j = 0; j < jmax; ++j) {
      const double bv = b.a_[j];
      if (bv == 0.0) continue;
      const auto& mb = tb.multis[j];
      out.a_[tb.lookup_of(ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3])] +=
          av * bv;
    }
  }
  return out;
}

Jet Jet::affine_mul(double c0, int var) const {
  const auto& tb = tables();
  Jet out(order_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = c0 * a_[i];
  for (std::size_t i = 0; i < a_.size(); ++i) {
    const auto& m = tb.multis[i];
    if (m[var] == 0) continue;
    std::array<int, 4> src = m;
    src[var] -= 1;
    out.a_[i] += a_[tb.lookup_of(src[0], src[1], src[2], src[3])];
  }
  return out;
}

Jet Jet::compose(const Jet& f, const std::vector<double>& g) {
  const int K = f.order_;
  if (g.size() != static_cast<std::size_t>(K) + 1)
    throw std::invalid_argument("Jet::compose: series length != order+1");
  Jet delta = f;
  delta.a_[0] = 0.0;
  Jet r = Jet::constant(K, g[K]);
  for (int k = K - 1; k >= 0; --k) {
    r = mul(r, delta);
    r.a_[0] += g[k];
  }
  return r;
}

std::vector<double> exp_series(double u0, int order) {
  std::vector<double> g(order + 1);
  g[0] = std::exp(u0);
  for (int k = 1; k <= order; ++k) g[k] = g[k - 1] / k;
  return g;
}

std::vector<double> sin_series(double u0, int order) {
  std::vector<double> g(order + 1);
  const double s = std::sin(u0), c = std::cos(u0);
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= k;
    const double d = (k % 4 == 0) ? s : (k % 4 == 1) ? c : (k % 4 == 2) ? -s : -c;
    g[k] = d / fact;
  }
  return g;
}

std::vector<double> cos_series(double u0, int order) {
  std::vector<double> g(order + 1);
  const double s = std::sin(u0), c = std::cos(u0);
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= k;
    const double d = (k % 4 == 0) ? c : (k % 4 == 1) ? -s : (k % 4 == 2) ? -c : s;
    g[k] = d / fact;
  }
  return g;
}

std::vector<double> sqrt_series(double u0, int order) {
  if (u0 <= 0.0) throw std::domain_error("sqrt_series: base point must be positive");
  std::vector<double> g(order + 1);
  g[0] = std::sqrt(u0);
  // g_k = binom(1/2, k) u0^{1/2-k}; recurrence g_k = g_{k-1} * (1/2 - (k-1)) / (k u0)
  for (int k = 1; k <= order; ++k)
    g[k] = g[k - 1] * (0.5 - (k - 1)) / (static_cast<double>(k) * u0);
  return g;
}

std::vector<double> recip_series(double u0, int order) {
  if (u0 == 0.0) throw std::domain_error("recip_series: base point must be nonzero");
  std::vector<double> g(order + 1);
  g[0] = 1.0 / u0;
  for (int k = 1; k <= order; ++k) g[k] = -g[k - 1] / u0;
  return g;
}

Jet jet_exp(const Jet& u) { return Jet::compose(u, exp_series(u.value(), u.order())); }
Jet jet_sin(const Jet& u) { return Jet::compose(u, sin_series(u.value(), u.order())); }
Jet jet_cos(const Jet& u) { return Jet::compose(u, cos_series(u.value(), u.order())); }
Jet jet_sqrt(const Jet& u) { return Jet::compose(u, sqrt_series(u.value(), u.order())); }
Jet jet_recip(const Jet& u) { return Jet::compose(u, recip_series(u.value(), u.order())); }

}  // namespace wg
