#pragma once

// Finite-difference oracle used only by tests: derivatives and vector-field
// words computed from field VALUES alone (Richardson-extrapolated central
// differences), independent of the jet algebra they cross-check.

#include <functional>

#include "wg/field.hpp"
#include "wg/words.hpp"

namespace wg::testing {

using PointFn = std::function<double(double, const Vec3&)>;

inline double fd_partial(const PointFn& f, int var, double t, Vec3 x, double h) {
  auto shift = [&](double s) {
    double tt = t;
    Vec3 xx = x;
    if (var == 0)
      tt += s;
    else
      xx[var - 1] += s;
    return f(tt, xx);
  };
  const double d1 = (shift(h) - shift(-h)) / (2.0 * h);
  const double d2 = (shift(h / 2) - shift(-h / 2)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

inline PointFn fd_apply_letter(const PointFn& f, Letter l, double h) {
  return [f, l, h](double t, const Vec3& x) -> double {
    switch (l) {
      case Letter::Dt: return fd_partial(f, 0, t, x, h);
      case Letter::Dx1: return fd_partial(f, 1, t, x, h);
      case Letter::Dx2: return fd_partial(f, 2, t, x, h);
      case Letter::Dx3: return fd_partial(f, 3, t, x, h);
      case Letter::O12:
        return x[0] * fd_partial(f, 2, t, x, h) - x[1] * fd_partial(f, 1, t, x, h);
      case Letter::O13:
        return x[0] * fd_partial(f, 3, t, x, h) - x[2] * fd_partial(f, 1, t, x, h);
      case Letter::O23:
        return x[1] * fd_partial(f, 3, t, x, h) - x[2] * fd_partial(f, 2, t, x, h);
      case Letter::O01:
        return x[0] * fd_partial(f, 0, t, x, h) + t * fd_partial(f, 1, t, x, h);
      case Letter::O02:
        return x[1] * fd_partial(f, 0, t, x, h) + t * fd_partial(f, 2, t, x, h);
      case Letter::O03:
        return x[2] * fd_partial(f, 0, t, x, h) + t * fd_partial(f, 3, t, x, h);
      default: throw std::invalid_argument("fd_apply_letter: unsupported letter");
    }
  };
}

inline double fd_word_value(const FieldJet& field, const VectorFieldWord& w, double t,
                            const Vec3& x, double h = 1e-3) {
  PointFn f = [&field](double tt, const Vec3& xx) { return field.value(tt, xx); };
  for (Letter l : w.letters) f = fd_apply_letter(f, l, h);
  return f(t, x);
}

}  // namespace wg::testing
