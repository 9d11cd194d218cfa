#include "wg/estimates.hpp"

#include <algorithm>
#include <cmath>

#include "wg/par.hpp"

namespace wg {

std::string estimate_name(EstimateId id) {
  switch (id) {
    case EstimateId::SOBOLEV1: return "sobolev.1";
    case EstimateId::SOBOLEV2: return "sobolev.2";
    case EstimateId::HIDANO1: return "hidano.1";
    case EstimateId::KS_DELTA: return "KS.delta";
    case EstimateId::KS_DTDT: return "KS.dtdt";
    case EstimateId::KS_DTDX: return "KS.dtdx";
    case EstimateId::DELTA_DRDR: return "Delta.drdr";
    case EstimateId::KS_L2: return "KS.L2";
    case EstimateId::WAVE_DECAY: return "wave.decay";
    case EstimateId::KG_DECAY: return "kg.decay";
    case EstimateId::ODE_LEMMA: return "ode.lemma";
  }
  return "?";
}

namespace {

double first_partial(const Jet& j, int var) {
  switch (var) {
    case 0: return j.partial(1, 0, 0, 0);
    case 1: return j.partial(0, 1, 0, 0);
    case 2: return j.partial(0, 0, 1, 0);
    default: return j.partial(0, 0, 0, 1);
  }
}

double second_partial(const Jet& j, int a, int b) {
  int m[4] = {0, 0, 0, 0};
  m[a] += 1;
  m[b] += 1;
  return j.partial(m[0], m[1], m[2], m[3]);
}

double grad4_sq(const Jet& j) {
  double s = 0.0;
  for (int v = 0; v < 4; ++v) {
    const double d = first_partial(j, v);
    s += d * d;
  }
  return s;
}

double grad3_sq(const Jet& j) {
  double s = 0.0;
  for (int v = 1; v < 4; ++v) {
    const double d = first_partial(j, v);
    s += d * d;
  }
  return s;
}

// Frobenius square of the full (t,x) Hessian, mixed entries counted twice.
double hess4_frob_sq(const Jet& j) {
  double s = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double d = second_partial(j, a, b);
      s += d * d;
    }
  return s;
}

double laplacian(const Jet& j) {
  return j.partial(0, 2, 0, 0) + j.partial(0, 0, 2, 0) + j.partial(0, 0, 0, 2);
}

double box_op(const Jet& j) { return j.partial(2, 0, 0, 0) - laplacian(j); }

// Offsets of the levels of a full A-ary word tree (level l starts at offsets[l]).
std::vector<std::size_t> level_offsets(std::size_t A, std::size_t depth) {
  std::vector<std::size_t> off(depth + 2, 0);
  std::size_t level = 1;
  for (std::size_t l = 0; l <= depth; ++l) {
    off[l + 1] = off[l] + level;
    level *= A;
  }
  return off;
}

// Visits every word jet of length <= max_len grown from `root`; visit(widx, jet)
// with widx the level-order index matching enumerate_words.
void walk_word_tree(const Jet& root, double t, const Vec3& x,
                    const std::vector<Letter>& alphabet, std::size_t max_len,
                    const std::vector<std::size_t>& offs,
                    const std::function<void(std::size_t, const Jet&)>& visit) {
  struct Rec {
    const std::vector<Letter>& ab;
    const std::vector<std::size_t>& offs;
    const std::function<void(std::size_t, const Jet&)>& visit;
    double t;
    const Vec3& x;
    std::size_t max_len;
    void operator()(const Jet& j, std::size_t depth, std::size_t idx) const {
      visit(idx, j);
      if (depth == max_len) return;
      const std::size_t child0 = offs[depth + 1] + (idx - offs[depth]) * ab.size();
      for (std::size_t a = 0; a < ab.size(); ++a)
        (*this)(apply_letter(j, ab[a], t, x), depth + 1, child0 + a);
    }
  };
  Rec rec{alphabet, offs, visit, t, x, max_len};
  rec(root, 0, 0);
}

void check_l2_support(const FieldJet& f, double t, const SpaceGrid3& grid) {
  if (f.bounded_support() && f.support_radius(t) > grid.radius)
    throw SupportOverflow("estimates: support of '" + f.name() +
                          "' exceeds the quadrature grid");
  if (!f.bounded_support())
    throw SupportOverflow("estimates: '" + f.name() +
                          "' has unbounded support; L2 checks need compact fields");
}

SpaceGrid3 auto_grid(const FieldJet& f, double t_max, const VerifierOptions& opt) {
  double R = opt.grid_radius;
  if (R <= 0.0)
    R = f.bounded_support() ? f.support_radius(t_max) + 0.75 : 8.0;
  if (f.kind() == FieldKind::Radial)
    return SpaceGrid3::spherical(R, opt.radial_nodes);
  return SpaceGrid3::cartesian(R, opt.cartesian_spacing);
}

Jet word_jet(const FieldJet& f, const VectorFieldWord& w, double t, const Vec3& x,
             int extra_order) {
  Jet j = f.evaluate(t, x, static_cast<int>(w.length()) + extra_order);
  for (Letter l : w.letters) j = apply_letter(j, l, t, x);
  return j;
}

}  // namespace

WordNormSums word_norm_sums(const FieldJet& f, double t, const SpaceGrid3& grid,
                            const std::vector<Letter>& alphabet, std::size_t max_len,
                            bool need_tmr_d2, bool need_tpr_box) {
  const auto offs = level_offsets(alphabet.size(), max_len);
  const std::size_t W = offs[max_len + 1];
  const int base_order =
      static_cast<int>(max_len) + ((need_tmr_d2 || need_tpr_box) ? 2 : 1);

  const std::size_t nb = 64;
  std::vector<std::vector<double>> deriv_sq(nb), d2_sq(nb), box_sq(nb);
  parallel_for_blocks(grid.nodes.size(), nb, [&](std::size_t b, std::size_t lo,
                                                 std::size_t hi) {
    auto& dv = deriv_sq[b];
    auto& d2 = d2_sq[b];
    auto& bx = box_sq[b];
    dv.assign(W, 0.0);
    if (need_tmr_d2) d2.assign(W, 0.0);
    if (need_tpr_box) bx.assign(W, 0.0);
    for (std::size_t i = lo; i < hi; ++i) {
      const GridNode& n = grid.nodes[i];
      const Jet j0 = f.evaluate(t, n.x, base_order);
      for (int v = 0; v < 4; ++v) {
        const Jet root = j0.derivative(v);
        walk_word_tree(root, t, n.x, alphabet, max_len, offs,
                       [&](std::size_t widx, const Jet& j) {
                         const double val = j.value();
                         dv[widx] += n.weight * val * val;
                       });
      }
      if (need_tmr_d2 || need_tpr_box) {
        const double wt_tmr = japanese_bracket(t - n.r);
        const double wt_tpr = japanese_bracket(t + n.r);
        walk_word_tree(j0, t, n.x, alphabet, max_len, offs,
                       [&](std::size_t widx, const Jet& j) {
                         if (need_tmr_d2) {
                           const double v = hess4_frob_sq(j);
                           d2[widx] += n.weight * wt_tmr * wt_tmr * v;
                         }
                         if (need_tpr_box) {
                           const double v = box_op(j);
                           bx[widx] += n.weight * wt_tpr * wt_tpr * v * v;
                         }
                       });
      }
    }
  });

  WordNormSums out;
  for (std::size_t w = 0; w < W; ++w) {
    double a = 0.0, c = 0.0, d = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      if (!deriv_sq[b].empty()) a += deriv_sq[b][w];
      if (!d2_sq[b].empty()) c += d2_sq[b][w];
      if (!box_sq[b].empty()) d += box_sq[b][w];
    }
    out.sum_deriv_l2 += std::sqrt(a);
    out.sum_tmr_d2_l2 += std::sqrt(c);
    out.sum_tpr_box_l2 += std::sqrt(d);
  }
  return out;
}

namespace {

struct TwoSides {
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PointSample {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Sharpens a grid sup of pointwise ratios by zooming a sample box around the
// argmax; the grid only has to land in the right basin, so the reported sup is
// stable under grid refinement even for oscillatory fields.
template <typename Fn>
double zoom_max_ratio(const Fn& point, Vec3 x0, double h0, double cut,
                      double exclusion, double best) {
  Vec3 best_x = x0;
  double h = h0;
  for (int round = 0; round < 4; ++round) {
    Vec3 center = best_x;
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b)
        for (int c = -2; c <= 2; ++c) {
          const Vec3 x = {center[0] + h / 2 * a, center[1] + h / 2 * b,
                          center[2] + h / 2 * c};
          const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
          if (r < exclusion) continue;
          const PointSample s = point(x, r);
          if (s.rhs <= cut) continue;
          if (s.lhs / s.rhs > best) {
            best = s.lhs / s.rhs;
            best_x = x;
          }
        }
    h *= 0.5;
  }
  return best;
}

RatioReport assemble_ratio(const std::vector<TwoSides>& coarse,
                           const std::vector<TwoSides>& fine, double floor) {
  RatioReport rep;
  rep.samples = coarse.size();
  double ratio_c = 0.0, ratio_f = 0.0;
  double rhs_min = std::numeric_limits<double>::infinity();
  for (const TwoSides& s : coarse) {
    rhs_min = std::min(rhs_min, s.rhs);
    if (s.rhs > floor) ratio_c = std::max(ratio_c, s.lhs / s.rhs);
  }
  for (const TwoSides& s : fine)
    if (s.rhs > floor) ratio_f = std::max(ratio_f, s.lhs / s.rhs);
  rep.rhs_floor = std::isfinite(rhs_min) ? rhs_min : 0.0;
  rep.degenerate = !(rep.rhs_floor > floor);
  rep.ratio = ratio_c;
  if (ratio_c > 0.0 && !fine.empty())
    rep.refinement_drift = std::abs(ratio_f - ratio_c) / ratio_c;
  return rep;
}

}  // namespace

RatioReport check_sobolev1(const FieldJet& f, const std::vector<double>& ts,
                           const VerifierOptions& opt) {
  const double t_max = *std::max_element(ts.begin(), ts.end());
  SpaceGrid3 grid = auto_grid(f, t_max, opt);
  check_l2_support(f, t_max, grid);
  auto eval = [&](const SpaceGrid3& g) {
    std::vector<TwoSides> out;
    for (double t : ts) {
      TwoSides s;
      for (const GridNode& n : g.nodes) {
        const double v = std::abs(f.value(t, n.x));
        s.lhs = std::max(s.lhs, std::sqrt(japanese_bracket(n.r)) * v);
      }
      s.rhs = word_norm_sums(f, t, g, kZLetters, 1, false, false).sum_deriv_l2;
      out.push_back(s);
    }
    return out;
  };
  const auto coarse = eval(grid);
  const auto fine = opt.with_refinement ? eval(grid.refined()) : coarse;
  return assemble_ratio(coarse, fine, opt.rhs_floor);
}

RatioReport check_sobolev2(const FieldJet& f, const std::vector<double>& ts,
                           const VectorFieldWord& word, const VerifierOptions& opt) {
  const double t_max = *std::max_element(ts.begin(), ts.end());
  SpaceGrid3 grid = auto_grid(f, t_max, opt);
  check_l2_support(f, t_max, grid);
  const std::size_t beta_len = word.length() + 2;
  auto eval = [&](const SpaceGrid3& g) {
    std::vector<TwoSides> out;
    for (double t : ts) {
      TwoSides s;
      for (const GridNode& n : g.nodes) {
        const Jet j = word_jet(f, word, t, n.x, 1);
        s.lhs = std::max(s.lhs, japanese_bracket(n.r) * std::sqrt(grad4_sq(j)));
      }
      s.rhs = word_norm_sums(f, t, g, kGammaLetters, beta_len, false, false)
                  .sum_deriv_l2;
      out.push_back(s);
    }
    return out;
  };
  const auto coarse = eval(grid);
  const auto fine = opt.with_refinement ? eval(grid.refined()) : coarse;
  return assemble_ratio(coarse, fine, opt.rhs_floor);
}

RatioReport check_hidano1(const FieldJet& f, const std::vector<double>& ts,
                          const VectorFieldWord& word, const VerifierOptions& opt) {
  const double t_max = *std::max_element(ts.begin(), ts.end());
  SpaceGrid3 grid = auto_grid(f, t_max, opt);
  check_l2_support(f, t_max, grid);
  const std::size_t beta_len = word.length() + 1;
  auto eval = [&](const SpaceGrid3& g) {
    std::vector<TwoSides> out;
    for (double t : ts) {
      TwoSides s;
      for (const GridNode& n : g.nodes) {
        const Jet j = word_jet(f, word, t, n.x, 1);
        const double w =
            std::sqrt(japanese_bracket(n.r)) * japanese_bracket(t - n.r);
        s.lhs = std::max(s.lhs, w * std::sqrt(grad4_sq(j)));
      }
      const WordNormSums sums =
          word_norm_sums(f, t, g, kGammaLetters, beta_len, true, false);
      s.rhs = sums.sum_deriv_l2 + sums.sum_tmr_d2_l2;
      out.push_back(s);
    }
    return out;
  };
  const auto coarse = eval(grid);
  const auto fine = opt.with_refinement ? eval(grid.refined()) : coarse;
  return assemble_ratio(coarse, fine, opt.rhs_floor);
}

RatioReport check_ks_pointwise(const FieldJet& f, const std::vector<double>& ts,
                               KsWhich which, const VerifierOptions& opt) {
  const double t_max = *std::max_element(ts.begin(), ts.end());
  SpaceGrid3 grid = (opt.grid_radius > 0.0 || f.bounded_support())
                        ? auto_grid(f, t_max, opt)
                        : SpaceGrid3::spherical(8.0, opt.radial_nodes);
  if (f.kind() != FieldKind::Radial && !f.bounded_support())
    grid = SpaceGrid3::cartesian(8.0, opt.cartesian_spacing);

  auto point_at = [&](double t, const Vec3& x, double r) {
    const Jet j = f.evaluate(t, x, 3);
    double lhs_core = 0.0;
    switch (which) {
      case KsWhich::Delta: lhs_core = std::abs(laplacian(j)); break;
      case KsWhich::DtDt: lhs_core = std::abs(j.partial(2, 0, 0, 0)); break;
      case KsWhich::DtDx: {
        double sq = 0.0;
        for (int v = 1; v < 4; ++v) {
          const double d = second_partial(j, 0, v);
          sq += d * d;
        }
        lhs_core = std::sqrt(sq);
        break;
      }
    }
    // RHS: sum_{|alpha|<=1} |d Gamma^alpha w| + forcing weight * |Box w|
    double sum_grad = std::sqrt(grad4_sq(j));
    for (Letter l : kGammaLetters) {
      const Jet lj = apply_letter(j, l, t, x);
      sum_grad += std::sqrt(grad4_sq(lj));
    }
    const double fw = (which == KsWhich::Delta) ? (t + r) : t;
    PointSample s;
    s.lhs = japanese_bracket(t - r) * lhs_core;
    s.rhs = sum_grad + fw * std::abs(box_op(j));
    return s;
  };

  auto eval = [&](const SpaceGrid3& g, RatioReport* regions) {
    std::vector<TwoSides> out;
    double ri = 0.0, ro = 0.0;
    std::vector<PointSample> samples;
    std::vector<double> r_v;
    std::vector<Vec3> x_v;
    for (double t : ts) {
      samples.clear();
      r_v.clear();
      x_v.clear();
      double rhs_max = 0.0;
      for (const GridNode& n : g.nodes) {
        if (n.r < opt.exclusion_radius) continue;
        samples.push_back(point_at(t, n.x, n.r));
        r_v.push_back(n.r);
        x_v.push_back(n.x);
        rhs_max = std::max(rhs_max, samples.back().rhs);
      }
      // points carrying a vanishing share of the field scale say nothing
      // about the estimate; the cut is relative so ratios are scale invariant
      const double cut = std::max(opt.rhs_floor, 1e-4 * rhs_max);
      TwoSides s;
      double rhs_min = std::numeric_limits<double>::infinity();
      std::size_t argmax = samples.size();
      for (std::size_t k = 0; k < samples.size(); ++k) {
        if (samples[k].rhs <= cut) continue;
        rhs_min = std::min(rhs_min, samples[k].rhs);
        const double ratio = samples[k].lhs / samples[k].rhs;
        if (ratio > s.lhs) {
          s.lhs = ratio;
          argmax = k;
        }
        if (r_v[k] <= t / 2.0)
          ri = std::max(ri, ratio);
        else
          ro = std::max(ro, ratio);
      }
      if (argmax < samples.size()) {
        auto pf = [&](const Vec3& x, double r) { return point_at(t, x, r); };
        s.lhs = zoom_max_ratio(pf, x_v[argmax], g.spacing, cut,
                               opt.exclusion_radius, s.lhs);
      }
      s.rhs = std::isfinite(rhs_min) ? rhs_min : 0.0;
      out.push_back(s);
    }
    if (regions) {
      regions->ratio_inner = ri;
      regions->ratio_outer = ro;
    }
    return out;
  };

  RatioReport regions;
  const auto coarse = eval(grid, &regions);
  RatioReport rep;
  rep.samples = coarse.size();
  rep.ratio = 0.0;
  double rhs_min = std::numeric_limits<double>::infinity();
  for (const TwoSides& s : coarse) {
    rep.ratio = std::max(rep.ratio, s.lhs);  // s.lhs already holds the point ratio
    rhs_min = std::min(rhs_min, s.rhs);
  }
  rep.rhs_floor = std::isfinite(rhs_min) ? rhs_min : 0.0;
  rep.degenerate = rep.rhs_floor <= opt.rhs_floor;
  if (opt.with_refinement) {
    const auto fine = eval(grid.refined(), nullptr);
    double rf = 0.0;
    for (const TwoSides& s : fine) rf = std::max(rf, s.lhs);
    if (rep.ratio > 0.0) rep.refinement_drift = std::abs(rf - rep.ratio) / rep.ratio;
  }
  rep.ratio_inner = regions.ratio_inner;
  rep.ratio_outer = regions.ratio_outer;
  return rep;
}

RatioReport check_delta_drdr(const FieldJet& f, const std::vector<double>& ts,
                             const VerifierOptions& opt) {
  const double t_max = *std::max_element(ts.begin(), ts.end());
  SpaceGrid3 grid = (f.bounded_support() || opt.grid_radius > 0.0)
                        ? auto_grid(f, t_max, opt)
                        : (f.kind() == FieldKind::Radial
                               ? SpaceGrid3::spherical(8.0, opt.radial_nodes)
                               : SpaceGrid3::cartesian(8.0, opt.cartesian_spacing));
  const double excl = std::max(opt.exclusion_radius, 1e-2);
  auto point_at = [&](double t, const Vec3& x, double r) {
    const Jet j = f.evaluate(t, x, 2);
    // d_r^2 w = n.D2.n with the spatial Hessian
    const Vec3 nh = {x[0] / r, x[1] / r, x[2] / r};
    double drr = 0.0;
    for (int a = 1; a < 4; ++a)
      for (int b = 1; b < 4; ++b)
        drr += nh[a - 1] * nh[b - 1] * second_partial(j, a, b);
    double sum = std::sqrt(grad3_sq(j));
    for (Letter l : kZLetters) {
      const Jet lj = apply_letter(j, l, t, x);
      sum += std::sqrt(grad3_sq(lj));
    }
    PointSample s;
    s.lhs = std::abs(laplacian(j) - drr);
    s.rhs = sum / r;
    return s;
  };
  auto eval = [&](const SpaceGrid3& g) {
    std::vector<TwoSides> out;
    std::vector<PointSample> samples;
    std::vector<Vec3> x_v;
    for (double t : ts) {
      samples.clear();
      x_v.clear();
      double rhs_max = 0.0;
      for (const GridNode& n : g.nodes) {
        if (n.r < excl) continue;
        samples.push_back(point_at(t, n.x, n.r));
        x_v.push_back(n.x);
        rhs_max = std::max(rhs_max, samples.back().rhs);
      }
      const double cut = std::max(opt.rhs_floor, 1e-4 * rhs_max);
      TwoSides s;
      double rhs_min = std::numeric_limits<double>::infinity();
      std::size_t argmax = samples.size();
      for (std::size_t k = 0; k < samples.size(); ++k) {
        if (samples[k].rhs <= cut) continue;
        rhs_min = std::min(rhs_min, samples[k].rhs);
        if (samples[k].lhs / samples[k].rhs > s.lhs) {
          s.lhs = samples[k].lhs / samples[k].rhs;
          argmax = k;
        }
      }
      if (argmax < samples.size()) {
        auto pf = [&](const Vec3& x, double r) { return point_at(t, x, r); };
        s.lhs = zoom_max_ratio(pf, x_v[argmax], g.spacing, cut, excl, s.lhs);
      }
      s.rhs = std::isfinite(rhs_min) ? rhs_min : 0.0;
      out.push_back(s);
    }
    return out;
  };
  const auto coarse = eval(grid);
  RatioReport rep;
  rep.samples = coarse.size();
  double rhs_min = std::numeric_limits<double>::infinity();
  for (const TwoSides& s : coarse) {
    rep.ratio = std::max(rep.ratio, s.lhs);
    rhs_min = std::min(rhs_min, s.rhs);
  }
  rep.rhs_floor = std::isfinite(rhs_min) ? rhs_min : 0.0;
  rep.degenerate = rep.rhs_floor <= opt.rhs_floor;
  if (opt.with_refinement) {
    const auto fine = eval(grid.refined());
    double rf = 0.0;
    for (const TwoSides& s : fine) rf = std::max(rf, s.lhs);
    if (rep.ratio > 0.0) rep.refinement_drift = std::abs(rf - rep.ratio) / rep.ratio;
  }
  return rep;
}

RatioReport check_ks_l2(const FieldJet& f, const std::vector<double>& ts,
                        const VectorFieldWord& word, const VerifierOptions& opt) {
  const double t_max = *std::max_element(ts.begin(), ts.end());
  SpaceGrid3 grid = auto_grid(f, t_max, opt);
  check_l2_support(f, t_max, grid);
  auto eval = [&](const SpaceGrid3& g) {
    std::vector<TwoSides> out;
    for (double t : ts) {
      TwoSides s;
      double lhs_sq = 0.0;
      for (const GridNode& n : g.nodes) {
        const Jet j = word_jet(f, word, t, n.x, 2);
        const double w = japanese_bracket(t - n.r);
        lhs_sq += n.weight * w * w * hess4_frob_sq(j);
      }
      s.lhs = std::sqrt(lhs_sq);
      const WordNormSums a =
          word_norm_sums(f, t, g, kGammaLetters, word.length() + 1, false, false);
      const WordNormSums b =
          word_norm_sums(f, t, g, kGammaLetters, word.length(), false, true);
      s.rhs = a.sum_deriv_l2 + b.sum_tpr_box_l2;
      out.push_back(s);
    }
    return out;
  };
  const auto coarse = eval(grid);
  const auto fine = opt.with_refinement ? eval(grid.refined()) : coarse;
  return assemble_ratio(coarse, fine, opt.rhs_floor);
}

// --- the corpus suite ------------------------------------------------------

namespace {

struct CorpusMember {
  FieldJet field;
  std::string label;
  std::vector<double> t_samples;
  bool l2_ok;
  double ks_exclusion;  // pointwise exclusion radius for this member
};

std::vector<CorpusMember> build_corpus() {
  std::vector<CorpusMember> c;
  auto add = [&](FieldJet f, std::string label, std::vector<double> ts, bool l2,
                 double excl) {
    c.push_back({std::move(f), std::move(label), std::move(ts), l2, excl});
  };
  add(gaussian_bump({0, 0, 0}, 1.0), "gauss_w1", {0.5, 2.0, 5.0}, true, 1e-2);
  add(gaussian_bump({0, 0, 0}, 2.0), "gauss_w2", {0.5, 2.0, 5.0}, true, 1e-2);
  add(gaussian_bump({0, 0, 0}, 0.7), "gauss_w07", {0.5, 2.0}, true, 1e-2);
  add(gaussian_bump({1.0, 0.5, -0.3}, 1.0), "gauss_off", {0.5, 2.0}, true, 1e-2);
  add(gaussian_bump({-0.5, 0.4, 0.8}, 1.5), "gauss_off2", {0.5, 2.0}, true, 1e-2);
  add(gaussian_bump({0, 0, 1.2}, 2.0), "gauss_off3", {0.5, 2.0}, true, 1e-2);
  add(static_bump(1.0), "bump_r1", {0.5, 2.0, 5.0}, true, 1.0);
  add(static_bump(2.0), "bump_r2", {0.5, 2.0}, true, 1.0);
  add(static_bump(3.0), "bump_r3", {0.5, 2.0, 5.0}, true, 1.0);
  add(smoothed_outgoing(1.0), "outgoing_w1", {2.0, 5.0, 8.0}, true, 5e-2);
  add(smoothed_outgoing(0.5), "outgoing_w05", {2.0, 5.0}, true, 5e-2);
  add(smoothed_outgoing(1.5), "outgoing_w15", {2.0, 6.0}, true, 5e-2);
  add(smoothed_outgoing(1.0, 2.0), "outgoing_s2", {4.0, 7.0}, true, 5e-2);
  add(plane_packet({1, 0, 0}, 1.0), "packet_x", {0.5, 2.0}, true, 1e-2);
  add(plane_packet({0, 1, 0}, 1.0), "packet_y", {0.5, 2.0}, true, 1e-2);
  add(plane_packet({0, 0, 1}, 2.0), "packet_z", {0.5, 2.0}, true, 1e-2);
  add(plane_packet({1, 1, 1}, 1.5), "packet_diag", {0.5, 2.0}, true, 1e-2);
  add(plane_packet({1, -1, 0}, 1.0), "packet_xy", {0.5, 2.0}, true, 1e-2);
  add(kg_free_mode(1.0, {0.5, 0, 0}), "kg_mu1", {0.5, 3.0}, false, 1e-2);
  add(kg_free_mode(2.0, {0.7, 0, 0}), "kg_mu2", {0.5, 3.0}, false, 1e-2);
  add(kg_free_mode(5.0, {0.3, 0.3, 0}), "kg_mu5", {0.5, 3.0}, false, 1e-2);
  return c;
}

}  // namespace

std::vector<SuiteRow> run_estimate_suite(const SuiteOptions& opt) {
  std::vector<CorpusMember> corpus = build_corpus();
  std::vector<SuiteRow> rows;

  auto push = [&](EstimateId id, const CorpusMember& m, const VectorFieldWord& word,
                  RatioReport rep) {
    SuiteRow row;
    row.estimate = estimate_name(id);
    row.field = m.label;
    row.word = word_name(word);
    row.t_min = m.t_samples.front();
    row.t_max = m.t_samples.back();
    row.report = rep;
    row.asserted = !rep.degenerate;
    row.pass = !row.asserted || (rep.ratio <= opt.ratio_max &&
                                 rep.refinement_drift <= opt.drift_max);
    rows.push_back(row);
  };

  for (const CorpusMember& m : corpus) {
    VerifierOptions vo = opt.verifier;
    vo.exclusion_radius = m.ks_exclusion;
    const VectorFieldWord empty{};
    if (m.l2_ok) {
      push(EstimateId::SOBOLEV1, m, empty, check_sobolev1(m.field, m.t_samples, vo));
      push(EstimateId::SOBOLEV2, m, empty,
           check_sobolev2(m.field, m.t_samples, empty, vo));
      push(EstimateId::HIDANO1, m, empty,
           check_hidano1(m.field, m.t_samples, empty, vo));
      push(EstimateId::KS_L2, m, empty, check_ks_l2(m.field, m.t_samples, empty, vo));
    }
    push(EstimateId::KS_DELTA, m, empty,
         check_ks_pointwise(m.field, m.t_samples, KsWhich::Delta, vo));
    push(EstimateId::KS_DTDT, m, empty,
         check_ks_pointwise(m.field, m.t_samples, KsWhich::DtDt, vo));
    push(EstimateId::KS_DTDX, m, empty,
         check_ks_pointwise(m.field, m.t_samples, KsWhich::DtDx, vo));
    push(EstimateId::DELTA_DRDR, m, empty, check_delta_drdr(m.field, m.t_samples, vo));
  }

  // length-1 alpha words exercised on selected radial members (spherical grids
  // keep the |beta| <= |alpha|+2 sums affordable) plus one cartesian case.
  {
    const CorpusMember& g1 = corpus[0];
    VerifierOptions vo = opt.verifier;
    const VectorFieldWord dt{{Letter::Dt}};
    const VectorFieldWord boost{{Letter::O01}};
    const VectorFieldWord rot{{Letter::O12}};
    push(EstimateId::SOBOLEV2, g1, dt, check_sobolev2(g1.field, g1.t_samples, dt, vo));
    push(EstimateId::SOBOLEV2, g1, boost,
         check_sobolev2(g1.field, g1.t_samples, boost, vo));
    push(EstimateId::HIDANO1, g1, dt, check_hidano1(g1.field, g1.t_samples, dt, vo));
    push(EstimateId::KS_L2, g1, dt, check_ks_l2(g1.field, g1.t_samples, dt, vo));
    // rotation on a radial field: degenerate by symmetry, flagged not asserted
    const CorpusMember& b1 = corpus[6];
    push(EstimateId::SOBOLEV2, b1, rot, check_sobolev2(b1.field, b1.t_samples, rot, vo));
    // packet with a time-derivative word (cartesian grid)
    const CorpusMember& px = corpus[13];
    VerifierOptions vp = opt.verifier;
    vp.cartesian_spacing = 0.8;
    push(EstimateId::SOBOLEV2, px, dt, check_sobolev2(px.field, px.t_samples, dt, vp));
  }

  return rows;
}

}  // namespace wg
