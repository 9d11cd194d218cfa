#include "wg/radial_jet.hpp"

#include <cmath>
#include <stdexcept>

#include "wg/grid3.hpp"
#include "wg/spectral.hpp"

namespace wg {

RadialSnapshotField::RadialSnapshotField(double t0, GridSpec grid,
                                         std::vector<std::vector<double>> time_derivs)
    : t0_(t0), grid_(grid), profs_(std::move(time_derivs)) {
  if (profs_.empty()) throw std::invalid_argument("RadialSnapshotField: no profiles");
  for (const auto& p : profs_)
    if (p.size() != grid_.M + 1)
      throw std::invalid_argument("RadialSnapshotField: profile/grid mismatch");
}

double RadialSnapshotField::partial(int a, int b, std::size_t i) const {
  if (a < 0 || a > max_dt_order())
    throw std::invalid_argument("RadialSnapshotField: d_t order out of range");
  const auto& p = profs_[a];
  const double h = grid_.dr();
  if (i < 3 || i + 3 > grid_.M)
    throw std::invalid_argument("RadialSnapshotField: node too close to the edge");
  switch (b) {
    case 0: return p[i];
    case 1:
      return (-p[i + 2] + 8.0 * p[i + 1] - 8.0 * p[i - 1] + p[i - 2]) / (12.0 * h);
    case 2:
      return (-p[i + 2] + 16.0 * p[i + 1] - 30.0 * p[i] + 16.0 * p[i - 1] -
              p[i - 2]) /
             (12.0 * h * h);
    case 3:
      return (p[i + 2] - 2.0 * p[i + 1] + 2.0 * p[i - 1] - p[i - 2]) /
             (2.0 * h * h * h);
    default:
      throw std::invalid_argument("RadialSnapshotField: d_r order out of range");
  }
}

Jet RadialSnapshotField::jet_at(const Vec3& x, std::size_t i, int order) const {
  const double r0 = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  if (r0 < 1e-12)
    throw std::invalid_argument("RadialSnapshotField::jet_at: needs r > 0");
  if (order > max_dt_order())
    throw std::invalid_argument(
        "RadialSnapshotField::jet_at: not enough time-derivative profiles");
  // radius jet S = |x + dx| - r0 (zero constant term)
  Jet r2 = Jet::variable(order, 1, x[0]) * Jet::variable(order, 1, x[0]) +
           Jet::variable(order, 2, x[1]) * Jet::variable(order, 2, x[1]) +
           Jet::variable(order, 3, x[2]) * Jet::variable(order, 3, x[2]);
  Jet S = jet_sqrt(r2);
  S.raw(0) = 0.0;
  static const double fact[] = {1, 1, 2, 6, 24, 120, 720};
  Jet out(order);
  Jet Sb = Jet::constant(order, 1.0);  // S^b
  for (int b = 0; b <= order; ++b) {
    if (b > 0) Sb = Jet::mul(Sb, S);
    for (int a = 0; a + b <= order && a <= max_dt_order(); ++a) {
      const double c = partial(a, b, i) / (fact[a] * fact[b]);
      if (c == 0.0) continue;
      // multiply S^b by c * dt^a and accumulate: shift the t index by a
      const auto& tb = jet_detail::tables();
      for (std::size_t k = 0; k < Sb.active_count(); ++k) {
        const auto& m = tb.multis[k];
        if (m[0] + m[1] + m[2] + m[3] + a > order) continue;
        const double v = Sb.raw(k);
        if (v == 0.0) continue;
        out.raw(tb.lookup_of(m[0] + a, m[1], m[2], m[3])) += c * v;
      }
    }
  }
  return out;
}

WordNormData word_norms_radial(const std::vector<RadialSnapshotField>& modes,
                               const std::vector<Letter>& alphabet,
                               const WordNormOptions& opt, bool need_derivs) {
  if (modes.empty()) throw std::invalid_argument("word_norms_radial: no modes");
  const GridSpec grid = modes[0].grid();
  const std::size_t A = alphabet.size();
  std::size_t n_words = 1, level = 1;
  for (std::size_t l = 1; l <= opt.max_len; ++l) {
    level *= A;
    n_words += level;
  }
  WordNormData out;
  out.n_words = n_words;
  out.n_modes = modes.size();
  out.value_sq.assign(n_words, std::vector<double>(modes.size(), 0.0));
  if (need_derivs)
    out.deriv_sq.assign(n_words, std::vector<double>(modes.size(), 0.0));

  // angular rule
  std::vector<double> mu, wmu;
  gauss_legendre(opt.n_mu, mu, wmu);
  const double dphi = 2.0 * M_PI / static_cast<double>(opt.n_phi);

  // level offsets of the word tree
  std::vector<std::size_t> offs(opt.max_len + 2, 0);
  level = 1;
  for (std::size_t l = 0; l <= opt.max_len; ++l) {
    offs[l + 1] = offs[l] + level;
    level *= A;
  }

  const int base_order = static_cast<int>(opt.max_len) + (need_derivs ? 1 : 0);
  const double dr = grid.dr();
  const double t0 = modes[0].t0();

  struct Walk {
    const std::vector<Letter>& ab;
    const std::vector<std::size_t>& offs;
    std::size_t max_len;
    double t;
    const Vec3& x;
    double weight;
    bool need_derivs;
    std::vector<std::vector<double>>& value_sq;
    std::vector<std::vector<double>>* deriv_sq;
    std::size_t j;
    void operator()(const Jet& jet, std::size_t depth, std::size_t idx) const {
      if (need_derivs) {
        const double v0 = jet.value();
        value_sq[idx][j] += weight * v0 * v0;
        double g = 0.0;
        for (int var = 0; var < 4; ++var) {
          int m[4] = {0, 0, 0, 0};
          m[var] = 1;
          const double d = jet.partial(m[0], m[1], m[2], m[3]);
          g += d * d;
        }
        (*deriv_sq)[idx][j] += weight * g;
      } else {
        const double v0 = jet.value();
        value_sq[idx][j] += weight * v0 * v0;
      }
      if (depth == max_len) return;
      const std::size_t child0 = offs[depth + 1] + (idx - offs[depth]) * ab.size();
      for (std::size_t a = 0; a < ab.size(); ++a)
        (*this)(apply_letter(jet, ab[a], t, x), depth + 1, child0 + a);
    }
  };

  for (std::size_t i = opt.margin; i + opt.margin <= grid.M;
       i += opt.radial_stride) {
    const double r = static_cast<double>(i) * dr;
    if (r <= 0.0) continue;
    double wr = static_cast<double>(opt.radial_stride) * dr * r * r;
    for (std::size_t m = 0; m < opt.n_mu; ++m) {
      const double smu = std::sqrt(std::max(0.0, 1.0 - mu[m] * mu[m]));
      for (std::size_t p = 0; p < opt.n_phi; ++p) {
        const double phi = dphi * static_cast<double>(p);
        const Vec3 x = {r * smu * std::cos(phi), r * smu * std::sin(phi),
                        r * mu[m]};
        const double weight = wr * wmu[m] * dphi;
        for (std::size_t j = 0; j < modes.size(); ++j) {
          const Jet jet = modes[j].jet_at(x, i, base_order);
          Walk walk{alphabet, offs,     opt.max_len, t0, x, weight,
                    need_derivs, out.value_sq, &out.deriv_sq, j};
          walk(jet, 0, 0);
        }
      }
    }
  }
  return out;
}

double sum_word_value_norms(const WordNormData& d) {
  double s = 0.0;
  for (std::size_t w = 0; w < d.n_words; ++w) {
    double sq = 0.0;
    for (std::size_t j = 0; j < d.n_modes; ++j) sq += d.value_sq[w][j];
    s += std::sqrt(sq);
  }
  return s;
}

namespace {
double binom_d(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i)
    r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return r;
}
std::vector<std::size_t> gamma_level_offsets(std::size_t max_len) {
  std::vector<std::size_t> offs;
  offs.push_back(0);
  std::size_t level = 1;
  for (std::size_t l = 0; l <= max_len; ++l) {
    offs.push_back(offs.back() + level);
    level *= kGammaLetters.size();
  }
  return offs;
}
}  // namespace

double sum_word_norms_tilde(const WordNormData& d, const std::vector<double>& lambdas,
                            std::size_t max_len, NormSlot slot) {
  if (lambdas.size() != d.n_modes)
    throw std::invalid_argument("sum_word_norms_tilde: lambda/mode mismatch");
  // Gamma-tilde words = (number of d_y letters m) x (Gamma word of length
  // len-m); d_y commutes with Gamma, so each combination appears
  // binomial(len, m) times as a distinct letter sequence.
  const std::vector<std::size_t> offs = gamma_level_offsets(max_len);
  double total = 0.0;
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (std::size_t m = 0; m <= len; ++m) {
      const std::size_t glen = len - m;  // Gamma part length
      const double mult = binom_d(len, m);
      for (std::size_t w = offs[glen]; w < offs[glen + 1]; ++w) {
        double sq = 0.0;
        for (std::size_t j = 0; j < d.n_modes; ++j) {
          double lam_pow = 1.0;
          for (std::size_t q = 0; q < m; ++q) lam_pow *= lambdas[j] * lambdas[j];
          switch (slot) {
            case NormSlot::Value: sq += lam_pow * d.value_sq[w][j]; break;
            case NormSlot::DtxDeriv: sq += lam_pow * d.deriv_sq[w][j]; break;
            case NormSlot::DtxyDeriv:
              sq += lam_pow * (d.deriv_sq[w][j] +
                               lambdas[j] * lambdas[j] * d.value_sq[w][j]);
              break;
          }
        }
        total += mult * std::sqrt(sq);
      }
    }
  }
  return total;
}

double sum_word_sups_tilde(const std::vector<RadialSnapshotField>& modes,
                           const ModeSpectrum& spec, const WordNormOptions& opt) {
  if (modes.size() != spec.J)
    throw std::invalid_argument("sum_word_sups_tilde: mode/spectrum mismatch");
  const GridSpec grid = modes[0].grid();
  const std::size_t max_len = opt.max_len;
  const std::vector<std::size_t> offs = gamma_level_offsets(max_len);
  const std::size_t W = offs[max_len + 1];
  const std::size_t J = modes.size();

  // y sample points and basis derivative tables d_y^m e_j
  const YGrid yg = uniform_trapezoid_grid(spec.base.a, spec.base.b,
                                          std::max<std::size_t>(2 * spec.J + 1, 9));
  std::vector<std::vector<double>> E(J), Es(J);
  for (std::size_t j = 1; j <= J; ++j) {
    E[j - 1] = eigenfunction_values(spec, j, yg);
    Es[j - 1].resize(yg.size());
    const double lam = spec.lambdas[j - 1];
    const double c = spec.norm_constants[j - 1];
    for (std::size_t q = 0; q < yg.size(); ++q)
      Es[j - 1][q] = c * std::sin(lam * (yg.nodes[q] - spec.base.a));
  }
  auto basis_m = [&](std::size_t j, std::size_t m, std::size_t q) {
    const double lam = spec.lambdas[j];
    switch (m) {
      case 0: return E[j][q];
      case 1: return -lam * Es[j][q];
      default: return -lam * lam * E[j][q];
    }
  };

  std::vector<double> mu, wmu;
  gauss_legendre(opt.n_mu, mu, wmu);
  const double dphi = 2.0 * M_PI / static_cast<double>(opt.n_phi);
  const int base_order = static_cast<int>(max_len) + 1;
  const double dr = grid.dr();
  const double t0 = modes[0].t0();

  // running sup per (m, Gamma word)
  std::vector<std::vector<double>> sup_tab(max_len + 1,
                                           std::vector<double>(W, 0.0));
  // scratch: per word, per deriv component, per mode
  std::vector<double> vals(W * 4 * J, 0.0);

  struct Walk {
    const std::vector<std::size_t>& offs;
    std::size_t max_len;
    double t;
    const Vec3& x;
    std::vector<double>& vals;
    std::size_t J, j;
    void operator()(const Jet& jet, std::size_t depth, std::size_t idx) const {
      for (int var = 0; var < 4; ++var) {
        int m[4] = {0, 0, 0, 0};
        m[var] = 1;
        vals[(idx * 4 + var) * J + j] = jet.partial(m[0], m[1], m[2], m[3]);
      }
      if (depth == max_len) return;
      const std::size_t child0 =
          offs[depth + 1] + (idx - offs[depth]) * kGammaLetters.size();
      for (std::size_t a = 0; a < kGammaLetters.size(); ++a)
        (*this)(apply_letter(jet, kGammaLetters[a], t, x), depth + 1, child0 + a);
    }
  };

  for (std::size_t i = opt.margin; i + opt.margin <= grid.M;
       i += opt.radial_stride) {
    const double r = static_cast<double>(i) * dr;
    if (r <= 0.0) continue;
    for (std::size_t mth = 0; mth < opt.n_mu; ++mth) {
      const double smu = std::sqrt(std::max(0.0, 1.0 - mu[mth] * mu[mth]));
      for (std::size_t p = 0; p < opt.n_phi; ++p) {
        const double phi = dphi * static_cast<double>(p);
        const Vec3 x = {r * smu * std::cos(phi), r * smu * std::sin(phi),
                        r * mu[mth]};
        for (std::size_t j = 0; j < J; ++j) {
          const Jet jet = modes[j].jet_at(x, i, base_order);
          Walk walk{offs, max_len, t0, x, vals, J, j};
          walk(jet, 0, 0);
        }
        for (std::size_t m = 0; m <= max_len; ++m) {
          const std::size_t glen_max = max_len - m;
          for (std::size_t w = 0; w < offs[glen_max + 1]; ++w) {
            for (std::size_t q = 0; q < yg.size(); ++q) {
              double mag_sq = 0.0;
              for (int var = 0; var < 4; ++var) {
                double comp = 0.0;
                for (std::size_t j = 0; j < J; ++j)
                  comp += vals[(w * 4 + var) * J + j] * basis_m(j, m, q);
                mag_sq += comp * comp;
              }
              if (mag_sq > sup_tab[m][w] * sup_tab[m][w])
                sup_tab[m][w] = std::sqrt(mag_sq);
            }
          }
        }
      }
    }
  }

  double total = 0.0;
  for (std::size_t m = 0; m <= max_len; ++m)
    for (std::size_t glen = 0; glen + m <= max_len; ++glen)
      for (std::size_t w = offs[glen]; w < offs[glen + 1]; ++w)
        total += binom_d(glen + m, m) * sup_tab[m][w];
  return total;
}

}  // namespace wg
