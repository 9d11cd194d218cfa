#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace wg {

using Vec3 = std::array<double, 3>;

// Truncated multivariate Taylor expansion in the four variables (t, x1, x2, x3),
// stored as normalized coefficients a[alpha] = d^alpha f / alpha!.  Mixed
// partials are symmetric by construction: there is one entry per multi-index.
//
// This is forward-mode algorithmic differentiation: catalog fields are written
// as ordinary formulas over Jet arithmetic and every partial derivative up to
// the requested order falls out exactly (no finite differencing).
class Jet {
 public:
  static constexpr int kMaxOrder = 8;
  static constexpr int kVars = 4;

  Jet() : order_(0), a_(1, 0.0) {}
  explicit Jet(int order);

  static Jet constant(int order, double value);
  // Seed for coordinate variable var (0 = t, 1..3 = x): value + delta_var.
  static Jet variable(int order, int var, double value);

  int order() const { return order_; }
  std::size_t size() const { return a_.size(); }
  double value() const { return a_[0]; }

  double& raw(std::size_t i) { return a_[i]; }
  double raw(std::size_t i) const { return a_[i]; }

  // Taylor coefficient / true partial derivative for a multi-index.
  double coeff(int i0, int i1, int i2, int i3) const;
  double partial(int i0, int i1, int i2, int i3) const;

  // Jet of d/dz_m f, one order lower.
  Jet derivative(int var) const;

  // Truncate (or zero-extend) to a different order.
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
  friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
  friend Jet operator*(Jet a, double s) { a *= s; return a; }
  friend Jet operator*(double s, Jet a) { a *= s; return a; }
  friend Jet operator*(const Jet& a, const Jet& b) { return mul(a, b); }

  static Jet mul(const Jet& a, const Jet& b);

  // Multiply by the affine factor (c0 + delta_var); order preserved.
  Jet affine_mul(double c0, int var) const;

  // g(f) for a univariate g given by Taylor coefficients g_k = g^(k)(f.value())/k!.
  static Jet compose(const Jet& f, const std::vector<double>& g_coeffs);

  std::size_t active_count() const;

 private:
  int order_;
  std::vector<double> a_;
};

// Multi-index bookkeeping shared by the jet routines.
namespace jet_detail {
struct Tables {
  std::vector<std::array<int, 4>> multis;          // graded order
  std::vector<int> degree;                          // |alpha| per linear index
  std::vector<std::size_t> count_up_to;             // #indices with |alpha| <= k
  std::vector<std::size_t> lookup;                  // dense (i0,i1,i2,i3) -> linear
  std::size_t lookup_of(int i0, int i1, int i2, int i3) const;
};
const Tables& tables();
}  // namespace jet_detail

// Univariate Taylor coefficient sequences g_k = g^(k)(u0)/k! for composition.
std::vector<double> exp_series(double u0, int order);
std::vector<double> sin_series(double u0, int order);
std::vector<double> cos_series(double u0, int order);
std::vector<double> sqrt_series(double u0, int order);
std::vector<double> recip_series(double u0, int order);

// Convenience jets of common building blocks at a base point.
Jet jet_exp(const Jet& u);
Jet jet_sin(const Jet& u);
Jet jet_cos(const Jet& u);
Jet jet_sqrt(const Jet& u);
Jet jet_recip(const Jet& u);

}  // namespace wg
