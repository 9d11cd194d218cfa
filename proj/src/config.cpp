#include "wg/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wg {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": bad number '" + v + "'");
  }
}

long parse_long(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": bad integer '" + v + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

void set_key(RunConfig& c, const std::string& section, const std::string& key,
             const std::string& val, int line) {
  auto bad = [&]() -> ConfigError {
    return ConfigError("line " + std::to_string(line) + ": unknown key '" +
                       section + "." + key + "'");
  };
  if (section == "base") {
    if (key == "a") c.a = parse_double(val, line);
    else if (key == "b") c.b = parse_double(val, line);
    else if (key == "bc") {
      if (val == "neumann") c.bc = BoundaryCondition::Neumann;
      else if (val == "dirichlet") c.bc = BoundaryCondition::Dirichlet;
      else throw ConfigError("line " + std::to_string(line) +
                             ": bc must be neumann or dirichlet");
    } else throw bad();
  } else if (section == "modes") {
    if (key == "J") c.J = static_cast<std::size_t>(parse_long(val, line));
    else throw bad();
  } else if (section == "grid") {
    if (key == "R") c.R = parse_double(val, line);
    else if (key == "dr") c.dr = parse_double(val, line);
    else throw bad();
  } else if (section == "time") {
    if (key == "T") c.T = parse_double(val, line);
    else if (key == "cfl") c.cfl = parse_double(val, line);
    else if (key == "out_every") c.out_every = parse_double(val, line);
    else throw bad();
  } else if (section == "nonlinearity") {
    if (key == "preset") c.preset = val;
    else if (key == "quasilinear") {
      c.quasilinear.clear();
      for (const std::string& term : split(val, ';')) {
        if (term.empty()) continue;
        const auto idx_coeff = split(term, ':');
        if (idx_coeff.size() != 2)
          throw ConfigError("line " + std::to_string(line) +
                            ": quasilinear term needs j,k,l:coeff");
        const auto idx = split(idx_coeff[0], ',');
        if (idx.size() != 3)
          throw ConfigError("line " + std::to_string(line) +
                            ": quasilinear indices need j,k,l");
        c.quasilinear.push_back(
            {static_cast<double>(parse_long(idx[0], line)),
             static_cast<double>(parse_long(idx[1], line)),
             static_cast<double>(parse_long(idx[2], line)),
             parse_double(idx_coeff[1], line)});
      }
    } else if (key == "semilinear") {
      c.semilinear.clear();
      for (const std::string& term : split(val, ';')) {
        if (term.empty()) continue;
        const auto idx_coeff = split(term, ':');
        if (idx_coeff.size() != 2)
          throw ConfigError("line " + std::to_string(line) +
                            ": semilinear term needs j,k:coeff");
        const auto idx = split(idx_coeff[0], ',');
        if (idx.size() != 2)
          throw ConfigError("line " + std::to_string(line) +
                            ": semilinear indices need j,k");
        c.semilinear.push_back({static_cast<double>(parse_long(idx[0], line)),
                                static_cast<double>(parse_long(idx[1], line)),
                                parse_double(idx_coeff[1], line)});
      }
    } else throw bad();
  } else if (section == "data") {
    if (key == "B") c.B = parse_double(val, line);
    else if (key == "eps") c.eps = parse_double(val, line);
    else if (key == "poly_power") c.poly_power = static_cast<int>(parse_long(val, line));
    else if (key == "modes_f" || key == "modes_g") {
      std::vector<std::pair<std::size_t, double>> out;
      for (const std::string& term : split(val, ',')) {
        if (term.empty()) continue;
        const auto jv = split(term, ':');
        if (jv.size() != 2)
          throw ConfigError("line " + std::to_string(line) +
                            ": mode amplitude needs j:amp");
        out.push_back({static_cast<std::size_t>(parse_long(jv[0], line)),
                       parse_double(jv[1], line)});
      }
      if (key == "modes_f") c.modes_f = out;
      else c.modes_g = out;
    } else throw bad();
  } else if (section == "experiment") {
    if (key == "window_lo") c.window_lo = parse_double(val, line);
    else if (key == "window_hi") c.window_hi = parse_double(val, line);
    else if (key == "eps_list") {
      c.eps_list.clear();
      for (const std::string& e : split(val, ','))
        if (!e.empty()) c.eps_list.push_back(parse_double(e, line));
    } else if (key == "amp") c.amp = parse_double(val, line);
    else if (key == "t_budget") c.t_budget = parse_double(val, line);
    else if (key == "theta") c.theta = parse_double(val, line);
    else if (key == "ratio_max") c.ratio_max = parse_double(val, line);
    else if (key == "drift_max") c.drift_max = parse_double(val, line);
    else if (key == "contraction_max") c.contraction_max = parse_double(val, line);
    else if (key == "k_max") c.k_max = static_cast<std::size_t>(parse_long(val, line));
    else throw bad();
  } else if (section == "output") {
    if (key == "dir") c.out_dir = val;
    else throw bad();
  } else if (section == "run") {
    if (key == "seed") c.seed = static_cast<std::uint64_t>(parse_long(val, line));
    else if (key == "threads") c.threads = static_cast<int>(parse_long(val, line));
    else throw bad();
  } else {
    throw ConfigError("line " + std::to_string(line) + ": unknown section [" +
                      section + "]");
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const std::size_t hash_pos = s.find('#');
    if (hash_pos != std::string::npos) s = s.substr(0, hash_pos);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError("line " + std::to_string(line) + ": unclosed section");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (section.empty())
      throw ConfigError("line " + std::to_string(line) + ": key outside a section");
    set_key(cfg, section, key, val, line);
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_override(RunConfig& cfg, const std::string& dotted_key,
                    const std::string& value) {
  const std::size_t dot = dotted_key.find('.');
  if (dot == std::string::npos)
    throw ConfigError("override needs section.key=value: " + dotted_key);
  set_key(cfg, dotted_key.substr(0, dot), dotted_key.substr(dot + 1), trim(value),
          0);
}

Nonlinearity RunConfig::nonlinearity() const {
  Nonlinearity nl = nonlinearity_preset(preset);
  for (const auto& q : quasilinear)
    nl.add_quasilinear(static_cast<int>(q[0]), static_cast<int>(q[1]),
                       static_cast<int>(q[2]), q[3]);
  for (const auto& s : semilinear)
    nl.add_semilinear(static_cast<int>(s[0]), static_cast<int>(s[1]), s[2]);
  return nl;
}

InitialData RunConfig::initial_data(std::size_t J_actual) const {
  InitialData d;
  d.B = B;
  d.eps = eps;
  d.poly_power = poly_power;
  d.mode_f.assign(J_actual, 0.0);
  d.mode_g.assign(J_actual, 0.0);
  for (const auto& [j, amp_] : modes_f) {
    if (j < 1 || j > J_actual)
      throw ConfigError("data.modes_f: mode index out of range");
    d.mode_f[j - 1] = amp_;
  }
  for (const auto& [j, amp_] : modes_g) {
    if (j < 1 || j > J_actual)
      throw ConfigError("data.modes_g: mode index out of range");
    d.mode_g[j - 1] = amp_;
  }
  return d;
}

std::string RunConfig::echo() const {
  std::ostringstream o;
  o << "[base]\n";
  o << "a = " << format_g17(a) << "\n";
  o << "b = " << format_g17(b) << "\n";
  o << "bc = " << (bc == BoundaryCondition::Neumann ? "neumann" : "dirichlet")
    << "\n";
  o << "[modes]\nJ = " << J << "\n";
  o << "[grid]\nR = " << format_g17(R) << "\ndr = " << format_g17(dr) << "\n";
  o << "[time]\nT = " << format_g17(T) << "\ncfl = " << format_g17(cfl)
    << "\nout_every = " << format_g17(out_every) << "\n";
  o << "[nonlinearity]\npreset = " << preset << "\n";
  if (!quasilinear.empty()) {
    o << "quasilinear = ";
    for (std::size_t i = 0; i < quasilinear.size(); ++i) {
      const auto& q = quasilinear[i];
      if (i) o << "; ";
      o << static_cast<int>(q[0]) << "," << static_cast<int>(q[1]) << ","
        << static_cast<int>(q[2]) << ":" << format_g17(q[3]);
    }
    o << "\n";
  }
  if (!semilinear.empty()) {
    o << "semilinear = ";
    for (std::size_t i = 0; i < semilinear.size(); ++i) {
      const auto& s = semilinear[i];
      if (i) o << "; ";
      o << static_cast<int>(s[0]) << "," << static_cast<int>(s[1]) << ":"
        << format_g17(s[2]);
    }
    o << "\n";
  }
  o << "[data]\nB = " << format_g17(B) << "\neps = " << format_g17(eps)
    << "\npoly_power = " << poly_power << "\n";
  o << "modes_f = ";
  for (std::size_t i = 0; i < modes_f.size(); ++i) {
    if (i) o << ",";
    o << modes_f[i].first << ":" << format_g17(modes_f[i].second);
  }
  o << "\nmodes_g = ";
  for (std::size_t i = 0; i < modes_g.size(); ++i) {
    if (i) o << ",";
    o << modes_g[i].first << ":" << format_g17(modes_g[i].second);
  }
  o << "\n[experiment]\n";
  o << "window_lo = " << format_g17(window_lo) << "\n";
  o << "window_hi = " << format_g17(window_hi) << "\n";
  o << "eps_list = ";
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (i) o << ",";
    o << format_g17(eps_list[i]);
  }
  o << "\namp = " << format_g17(amp) << "\nt_budget = " << format_g17(t_budget)
    << "\ntheta = " << format_g17(theta) << "\nratio_max = "
    << format_g17(ratio_max) << "\ndrift_max = " << format_g17(drift_max)
    << "\ncontraction_max = " << format_g17(contraction_max)
    << "\nk_max = " << k_max << "\n";
  // the output directory is deliberately not part of the canonical form:
  // where results land must not change what they contain
  o << "[run]\nseed = " << seed << "\nthreads = " << threads << "\n";
  return o.str();
}

std::uint64_t RunConfig::hash() const { return fnv1a64(echo()); }

void RunConfig::validate() const {
  if (!(a < b)) throw ConfigError("base: need a < b");
  if (J < 1) throw ConfigError("modes: need J >= 1");
  if (dr <= 0.0) throw ConfigError("grid: need dr > 0");
  if (cfl <= 0.0 || cfl > 0.65)
    throw ConfigError("time: cfl must lie in (0, 0.65]");
  if (T <= 0.0) throw ConfigError("time: need T > 0");
  if (B <= 0.0) throw ConfigError("data: need B > 0");
  if (eps <= 0.0) throw ConfigError("data: need eps > 0");
  if (poly_power < 4) throw ConfigError("data: poly_power must be >= 4");
  if (window_hi <= window_lo) throw ConfigError("experiment: bad fit window");
}

}  // namespace wg
