#include "wg/field.hpp"

#include <cmath>
#include <stdexcept>

namespace wg {

FieldJet::FieldJet(std::string name, FieldKind kind, int max_order,
                   double support_radius, double support_speed, Evaluator eval)
    : name_(std::move(name)),
      kind_(kind),
      max_order_(max_order),
      support_radius_(support_radius),
      support_speed_(support_speed),
      eval_(std::move(eval)) {}

double FieldJet::support_radius(double t) const {
  if (!bounded_support()) return support_radius_;
  return support_radius_ + support_speed_ * std::abs(t);
}

bool FieldJet::bounded_support() const {
  return std::isfinite(support_radius_);
}

Jet FieldJet::evaluate(double t, const Vec3& x, int order) const {
  if (order > max_order_)
    throw OrderExhausted("FieldJet '" + name_ + "': jet order " +
                         std::to_string(order) + " exceeds budget " +
                         std::to_string(max_order_));
  return eval_(t, x, order);
}

double FieldJet::value(double t, const Vec3& x) const {
  return evaluate(t, x, 0).value();
}

FieldJet apply_word(const VectorFieldWord& word, const FieldJet& f) {
  const int len = static_cast<int>(word.length());
  const int budget = f.max_order() - len;
  if (budget < 0)
    throw OrderExhausted("apply_word: word length " + std::to_string(len) +
                         " exhausts jet budget of '" + f.name() + "'");
  auto base_eval = [f, word](double t, const Vec3& x, int order) {
    Jet j = f.evaluate(t, x, order + static_cast<int>(word.length()));
    for (Letter l : word.letters) j = apply_letter(j, l, t, x);
    return j;
  };
  // Rotations and boosts do not preserve radial symmetry in general.
  FieldKind kind = f.kind();
  for (Letter l : word.letters)
    if (l != Letter::Dt) kind = FieldKind::General;
  return FieldJet(f.name() + "[" + word_name(word) + "]", kind, budget,
                  f.support_radius(0.0), f.support_speed(), base_eval);
}

FieldJet scale_field(const FieldJet& f, double c) {
  auto eval = [f, c](double t, const Vec3& x, int order) {
    Jet j = f.evaluate(t, x, order);
    j *= c;
    return j;
  };
  return FieldJet(f.name() + "*scaled", f.kind(), f.max_order(),
                  f.support_radius(0.0), f.support_speed(), eval);
}

namespace {

Jet coords_r2(double t, const Vec3& x, int order, const Vec3& shift) {
  Jet xx = Jet::variable(order, 1, x[0] - shift[0]);
  Jet yy = Jet::variable(order, 2, x[1] - shift[1]);
  Jet zz = Jet::variable(order, 3, x[2] - shift[2]);
  (void)t;
  return xx * xx + yy * yy + zz * zz;
}

// Mollifier profile: exp(1 - 1/(1-u)) for u in [0,1), 0 for u >= 1, as a
// function of u = (scaled distance)^2; C^inf with compact support.
Jet mollifier_of_u(const Jet& u) {
  Jet one_minus = Jet::constant(u.order(), 1.0) - u;
  Jet inv = jet_recip(one_minus);
  Jet arg = Jet::constant(u.order(), 1.0) - inv;
  return jet_exp(arg);
}

// 1D mollifier f(s) of unit half-width; all derivatives via a univariate jet
// embedded in the t-slot trick is avoided: we return Taylor coefficients at s.
std::vector<double> profile_series(double s, int order) {
  // f(s) = exp(1 - 1/(1-s^2)) on |s|<1.  Build via a one-variable jet using
  // the 4-variable machinery (slot 0) and read off the t-line coefficients.
  Jet sv = Jet::variable(order, 0, s);
  Jet u = sv * sv;
  std::vector<double> out(order + 1, 0.0);
  if (u.value() >= 1.0) return out;
  Jet f = mollifier_of_u(u);
  for (int k = 0; k <= order; ++k) out[k] = f.coeff(k, 0, 0, 0);
  return out;
}

}  // namespace

FieldJet gaussian_bump(const Vec3& center, double width, int max_order) {
  const double w2 = width * width;
  auto eval = [center, w2](double t, const Vec3& x, int order) {
    Jet tt = Jet::variable(order, 0, t);
    Jet arg = coords_r2(t, x, order, center) + tt * tt;
    arg *= -1.0 / w2;
    return jet_exp(arg);
  };
  const double cn = std::sqrt(center[0] * center[0] + center[1] * center[1] +
                              center[2] * center[2]);
  const bool radial = cn == 0.0;
  return FieldJet("gaussian_bump", radial ? FieldKind::Radial : FieldKind::General,
                  max_order, cn + 7.5 * width, 1.0, eval);
}

FieldJet smoothed_outgoing(double width, double s0, int max_order) {
  auto eval = [width, s0](double t, const Vec3& x, int order) {
    const double r0 = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (r0 < 1e-6)
      throw std::invalid_argument("smoothed_outgoing: evaluation too close to r=0");
    Jet r2 = coords_r2(t, x, order, {0, 0, 0});
    Jet r = jet_sqrt(r2);
    Jet tt = Jet::variable(order, 0, t);
    // f((t-r-s0)/width) - f((t+r-s0)/width), f built from its Taylor line
    Jet am = (tt - r) * (1.0 / width);
    Jet ap = (tt + r) * (1.0 / width);
    am.raw(0) -= s0 / width;
    ap.raw(0) -= s0 / width;
    Jet fm = Jet::compose(am, profile_series(am.value(), order));
    Jet fp = Jet::compose(ap, profile_series(ap.value(), order));
    return (fm - fp) * jet_recip(r);
  };
  return FieldJet("smoothed_outgoing", FieldKind::Radial, max_order,
                  width + std::abs(s0), 1.0, eval);
}

FieldJet plane_packet(const Vec3& direction, double width, int max_order) {
  double nn = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                        direction[2] * direction[2]);
  if (nn == 0.0) throw std::invalid_argument("plane_packet: zero direction");
  const Vec3 n = {direction[0] / nn, direction[1] / nn, direction[2] / nn};
  const double w2 = width * width;
  auto eval = [n, w2](double t, const Vec3& x, int order) {
    Jet tt = Jet::variable(order, 0, t);
    Jet xs[3] = {Jet::variable(order, 1, x[0]), Jet::variable(order, 2, x[1]),
                 Jet::variable(order, 3, x[2])};
    Jet ndotx = xs[0] * n[0] + xs[1] * n[1] + xs[2] * n[2];
    Jet r2 = xs[0] * xs[0] + xs[1] * xs[1] + xs[2] * xs[2];
    Jet phase = ndotx - tt;
    Jet arg = r2 - ndotx * ndotx + phase * phase;
    arg *= -1.0 / w2;
    return jet_exp(arg);
  };
  return FieldJet("plane_packet", FieldKind::General, max_order, 7.5 * width, 1.0,
                  eval);
}

FieldJet static_bump(double radius, int max_order) {
  auto eval = [radius](double t, const Vec3& x, int order) {
    (void)t;
    Jet r2 = coords_r2(0.0, x, order, {0, 0, 0});
    Jet u = r2 * (1.0 / (radius * radius));
    if (u.value() >= 1.0) return Jet(order);  // identically zero outside
    return mollifier_of_u(u);
  };
  return FieldJet("static_bump", FieldKind::Radial, max_order, radius, 0.0, eval);
}

FieldJet kg_free_mode(double mu, const Vec3& xi, int max_order) {
  const double omega =
      std::sqrt(mu * mu + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  auto eval = [omega, xi](double t, const Vec3& x, int order) {
    Jet tt = Jet::variable(order, 0, t);
    Jet xs[3] = {Jet::variable(order, 1, x[0]), Jet::variable(order, 2, x[1]),
                 Jet::variable(order, 3, x[2])};
    Jet phase_x = xs[0] * xi[0] + xs[1] * xi[1] + xs[2] * xi[2];
    return jet_cos(tt * omega) * jet_cos(phase_x);
  };
  return FieldJet("kg_free_mode", FieldKind::General, max_order,
                  std::numeric_limits<double>::infinity(), 0.0, eval);
}

FieldJet catalog_field(const std::string& name) {
  if (name == "gaussian_bump") return gaussian_bump({0, 0, 0}, 1.0);
  if (name == "gaussian_bump_wide") return gaussian_bump({0, 0, 0}, 2.0);
  if (name == "gaussian_bump_off") return gaussian_bump({1.0, 0.5, -0.3}, 1.0);
  if (name == "smoothed_outgoing") return smoothed_outgoing(1.0);
  if (name == "smoothed_outgoing_narrow") return smoothed_outgoing(0.5);
  if (name == "plane_packet") return plane_packet({1, 0, 0}, 1.0);
  if (name == "plane_packet_diag") return plane_packet({1, 1, 1}, 1.5);
  if (name == "static_bump") return static_bump(1.0);
  if (name == "static_bump_wide") return static_bump(3.0);
  if (name == "kg_free_mode") return kg_free_mode(2.0, {0.7, 0, 0});
  throw std::invalid_argument("catalog_field: unknown field '" + name + "'");
}

}  // namespace wg
