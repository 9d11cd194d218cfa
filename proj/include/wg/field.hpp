#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>

#include "wg/jet.hpp"
#include "wg/words.hpp"

namespace wg {

enum class FieldKind { Radial, General };

struct OrderExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A manufactured space-time field on R_+ x R^3 carrying exact derivative jets.
// evaluate(t, x, order) returns every partial derivative of order <= `order`
// at (t,x).  Evaluators are pure and safe to share across threads.
class FieldJet {
 public:
  using Evaluator = std::function<Jet(double t, const Vec3& x, int order)>;

  FieldJet() = default;
  FieldJet(std::string name, FieldKind kind, int max_order, double support_radius,
           double support_speed, Evaluator eval);

  const std::string& name() const { return name_; }
  FieldKind kind() const { return kind_; }
  int max_order() const { return max_order_; }

  // Effective spatial support radius at time t (infinite for periodic fields).
  double support_radius(double t) const;
  double support_speed() const { return support_speed_; }
  bool bounded_support() const;

  Jet evaluate(double t, const Vec3& x, int order) const;
  double value(double t, const Vec3& x) const;

 private:
  std::string name_;
  FieldKind kind_ = FieldKind::General;
  int max_order_ = 0;
  double support_radius_ = std::numeric_limits<double>::infinity();
  double support_speed_ = 0.0;
  Evaluator eval_;
};

// letters[0] acts first:  apply_word((a,b), f) = b(a(f)).
FieldJet apply_word(const VectorFieldWord& word, const FieldJet& f);

FieldJet scale_field(const FieldJet& f, double c);

// --- catalog -------------------------------------------------------------

// exp(-(|x-c|^2 + t^2)/w^2)
FieldJet gaussian_bump(const Vec3& center, double width, int max_order = 6);

// (f(t-r) - f(t+r))/r with f a compactly supported mollifier profile of the
// given width centered at s0; an exact solution of the free wave equation for
// r > 0.  Evaluation very near r = 0 is rejected (the corpus samples away
// from the origin; verifier exclusion radius covers it).
FieldJet smoothed_outgoing(double width, double s0 = 0.0, int max_order = 6);

// Moving gaussian blob along direction n: exp(-(|x|^2 - (n.x)^2 + (n.x-t)^2)/w^2).
FieldJet plane_packet(const Vec3& direction, double width, int max_order = 6);

// Time-independent mollifier bump supported in |x| < R.
FieldJet static_bump(double radius, int max_order = 6);

// cos(omega t) cos(xi.x) with omega^2 = mu^2 + |xi|^2; (box + mu^2) w = 0.
FieldJet kg_free_mode(double mu, const Vec3& xi, int max_order = 6);

// Named lookup used by the CLI and the verifier corpus.
FieldJet catalog_field(const std::string& name);

}  // namespace wg
