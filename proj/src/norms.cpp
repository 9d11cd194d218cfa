#include "wg/norms.hpp"

#include <cmath>

#include "wg/par.hpp"

namespace wg {

double point_weight(PointWeight w, double t, double r) {
  switch (w) {
    case PointWeight::RHalf: return std::sqrt(japanese_bracket(r));
    case PointWeight::ROne: return japanese_bracket(r);
    case PointWeight::RHalfTmr:
      return std::sqrt(japanese_bracket(r)) * japanese_bracket(t - r);
    case PointWeight::Tmr: return japanese_bracket(t - r);
    case PointWeight::Tpr: return japanese_bracket(t + r);
  }
  return 1.0;
}

std::string point_weight_name(PointWeight w) {
  switch (w) {
    case PointWeight::RHalf: return "<r>^1/2";
    case PointWeight::ROne: return "<r>";
    case PointWeight::RHalfTmr: return "<r>^1/2<t-r>";
    case PointWeight::Tmr: return "<t-r>";
    case PointWeight::Tpr: return "<t+r>";
  }
  return "?";
}

namespace {

void check_support(const FieldJet& f, double t, const SpaceGrid3& grid) {
  if (f.bounded_support() && f.support_radius(t) > grid.radius)
    throw SupportOverflow("weighted_norms: support of '" + f.name() +
                          "' at t=" + std::to_string(t) + " exceeds grid radius " +
                          std::to_string(grid.radius));
}

struct Partial {
  double sq = 0.0;
  double sup = 0.0;
  double wsup[5] = {0, 0, 0, 0, 0};
};

double l2_on(const FieldJet& f, double t, const SpaceGrid3& grid) {
  const std::size_t nb = 64;
  std::vector<double> sums(nb, 0.0);
  parallel_for_blocks(grid.nodes.size(), nb, [&](std::size_t b, std::size_t lo,
                                                 std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const GridNode& n = grid.nodes[i];
      const double v = f.value(t, n.x);
      s += n.weight * v * v;
    }
    sums[b] = s;
  });
  double total = 0.0;
  for (double s : sums) total += s;
  return std::sqrt(total);
}

}  // namespace

WeightedNormReport weighted_norms(const FieldJet& f, double t,
                                  const SpaceGrid3& grid) {
  check_support(f, t, grid);
  const std::size_t nb = 64;
  std::vector<Partial> parts(nb);
  static const PointWeight kWeights[5] = {PointWeight::RHalf, PointWeight::ROne,
                                          PointWeight::RHalfTmr, PointWeight::Tmr,
                                          PointWeight::Tpr};
  parallel_for_blocks(
      grid.nodes.size(), nb, [&](std::size_t b, std::size_t lo, std::size_t hi) {
        Partial p;
        for (std::size_t i = lo; i < hi; ++i) {
          const GridNode& n = grid.nodes[i];
          const double v = f.value(t, n.x);
          const double av = std::abs(v);
          p.sq += n.weight * v * v;
          if (av > p.sup) p.sup = av;
          for (int w = 0; w < 5; ++w) {
            const double wv = point_weight(kWeights[w], t, n.r) * av;
            if (wv > p.wsup[w]) p.wsup[w] = wv;
          }
        }
        parts[b] = p;
      });
  WeightedNormReport rep;
  double sq = 0.0;
  for (const Partial& p : parts) {
    sq += p.sq;
    rep.sup = std::max(rep.sup, p.sup);
  }
  rep.l2 = std::sqrt(sq);
  for (int w = 0; w < 5; ++w) {
    double m = 0.0;
    for (const Partial& p : parts) m = std::max(m, p.wsup[w]);
    rep.weighted_sup[kWeights[w]] = m;
  }
  const double l2f = l2_on(f, t, grid.refined());
  rep.refinement_ratio = rep.l2 > 0.0 ? l2f / rep.l2 : 1.0;
  return rep;
}

BoostIdentityReport radial_boost_norm_identity(const FieldJet& f, double t,
                                               double R) {
  if (f.kind() != FieldKind::Radial)
    throw std::invalid_argument("radial_boost_norm_identity: field is not radial");
  if (R <= 0.0) {
    R = f.bounded_support() ? f.support_radius(t) + 1.0 : 12.0;
  }
  BoostIdentityReport rep;

  // Route 1: boosts evaluated off-axis on a spherical grid.
  SpaceGrid3 sph = SpaceGrid3::spherical(R, 1281, 5, 10);
  double boost_sq = 0.0;
  for (const GridNode& n : sph.nodes) {
    if (n.r < 1e-8) continue;
    const Jet j = f.evaluate(t, n.x, 1);
    const double ft = j.partial(1, 0, 0, 0);
    const double f1 = j.partial(0, 1, 0, 0);
    const double f2 = j.partial(0, 0, 1, 0);
    const double f3 = j.partial(0, 0, 0, 1);
    const double b1 = n.x[0] * ft + t * f1;
    const double b2 = n.x[1] * ft + t * f2;
    const double b3 = n.x[2] * ft + t * f3;
    boost_sq += n.weight * (b1 * b1 + b2 * b2 + b3 * b3);
  }
  rep.sum_boost_sq = boost_sq;

  // Route 2: Omega_r = t d_r + r d_t on the axis with the radial weight.
  SpaceGrid3 rad = SpaceGrid3::radial(R, 3209);
  double om_sq = 0.0;
  for (const GridNode& n : rad.nodes) {
    if (n.r == 0.0) continue;
    const Jet j = f.evaluate(t, n.x, 1);
    const double ft = j.partial(1, 0, 0, 0);
    const double fr = j.partial(0, 1, 0, 0);  // d_r = d_1 on the axis
    const double v = t * fr + n.r * ft;
    om_sq += n.weight * v * v;
  }
  rep.omega_r_sq = om_sq;
  const double scale = std::max({std::abs(boost_sq), std::abs(om_sq), 1e-300});
  rep.rel_diff = std::abs(boost_sq - om_sq) / scale;
  return rep;
}

}  // namespace wg
