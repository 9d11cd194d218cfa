#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wg/nonlinearity.hpp"
#include "wg/solver.hpp"

namespace wg {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value sections; '#' starts a comment.  The parsed config is
// echoed verbatim into every output artifact together with its hash, so runs
// stay diff-able.
struct RunConfig {
  // [base]
  double a = 0.0, b = M_PI;
  BoundaryCondition bc = BoundaryCondition::Neumann;
  // [modes]
  std::size_t J = 16;
  // [grid]
  double R = 0.0;  // 0 = auto: B + T + margin
  double dr = 0.1;
  // [time]
  double T = 50.0;
  double cfl = 0.4;
  double out_every = 1.0;
  // [nonlinearity]
  std::string preset = "none";
  std::vector<std::array<double, 4>> quasilinear;  // j,k,l,coeff
  std::vector<std::array<double, 3>> semilinear;   // j,k,coeff
  // [data]
  double B = 1.0;
  double eps = 1.0;
  int poly_power = 6;
  std::vector<std::pair<std::size_t, double>> modes_f = {{1, 1.0}};
  std::vector<std::pair<std::size_t, double>> modes_g;
  // [experiment]
  double window_lo = 20.0, window_hi = 200.0;
  std::vector<double> eps_list = {1.0, 0.8, 0.65, 0.5, 0.42, 0.36};
  double amp = 4.0;
  double t_budget = 400.0;
  double theta = 10.0;
  double ratio_max = 50.0;
  double drift_max = 0.05;
  double contraction_max = 0.6;
  std::size_t k_max = 6;
  // [output]
  std::string out_dir = "out";
  // [run]
  std::uint64_t seed = 2026;
  int threads = 0;

  Nonlinearity nonlinearity() const;
  InitialData initial_data(std::size_t J_actual) const;
  // canonical text form (what gets hashed and echoed)
  std::string echo() const;
  std::uint64_t hash() const;
  void validate() const;  // throws ConfigError on bad fields
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);
// later values win; used for --set section.key=value overrides
void apply_override(RunConfig& cfg, const std::string& dotted_key,
                    const std::string& value);

std::uint64_t fnv1a64(const std::string& s);
std::string format_g17(double v);

}  // namespace wg
