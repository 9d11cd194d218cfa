#include "wg/report.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace wg {

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, std::uint64_t config_hash,
                     const std::vector<std::string>& columns)
    : path_(path), n_cols_(columns.size()) {
  buf_ = "# config_hash = " + hash_hex(config_hash) + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) buf_ += ",";
    buf_ += columns[i];
  }
  buf_ += "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != n_cols_)
    throw std::invalid_argument("CsvWriter: wrong cell count");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buf_ += ",";
    buf_ += cells[i];
  }
  buf_ += "\n";
}

void CsvWriter::row_values(const std::vector<double>& cells) {
  std::vector<std::string> s;
  s.reserve(cells.size());
  for (double v : cells) s.push_back(format_g17(v));
  row(s);
}

void CsvWriter::close() {
  if (closed_) return;
  write_text_file(path_, buf_);
  closed_ = true;
}

CsvWriter::~CsvWriter() {
  try {
    close();
  } catch (...) {
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) throw std::runtime_error("cannot write file: " + path);
  out << text;
  if (!out.good()) throw std::runtime_error("short write: " + path);
}

void write_series(const std::string& path, std::uint64_t config_hash,
                  const std::vector<double>& x, const std::vector<double>& y,
                  const std::string& xname, const std::string& yname) {
  CsvWriter w(path, config_hash, {xname, yname});
  for (std::size_t i = 0; i < x.size(); ++i) w.row_values({x[i], y[i]});
  w.close();
}

namespace {
constexpr char kMagic[8] = {'W', 'G', 'S', 'N', 'A', 'P', '0', '1'};

void put_u64(std::string& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_f64(std::string& b, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  put_u64(b, u);
}
std::uint64_t get_u64(const std::string& b, std::size_t& p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[p++])) << (8 * i);
  return v;
}
double get_f64(const std::string& b, std::size_t& p) {
  const std::uint64_t u = get_u64(b, p);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}
}  // namespace

void write_snapshots(const std::string& path, const RunResult& run,
                     const BaseInterval& base, std::uint64_t config_hash) {
  std::string b;
  b.append(kMagic, 8);
  put_u64(b, config_hash);
  put_u64(b, run.spec.J);
  put_u64(b, run.grid.M + 1);
  put_f64(b, base.a);
  put_f64(b, base.b);
  put_u64(b, base.bc == BoundaryCondition::Neumann ? 0 : 1);
  put_f64(b, run.grid.dr());
  put_f64(b, run.t0);
  put_u64(b, run.snapshots.size());
  for (const Snapshot& s : run.snapshots) {
    for (std::size_t j = 0; j < run.spec.J; ++j) {
      put_f64(b, s.t);
      put_u64(b, j + 1);
      for (double v : s.v[j]) put_f64(b, v);
      for (double v : s.vt[j]) put_f64(b, v);
    }
  }
  write_text_file(path, b);
}

SnapshotFile read_snapshots(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw std::runtime_error("cannot open snapshots: " + path);
  std::string b((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
  if (b.size() < 8 || std::memcmp(b.data(), kMagic, 8) != 0)
    throw std::runtime_error("bad snapshot magic: " + path);
  std::size_t p = 8;
  SnapshotFile f;
  f.config_hash = get_u64(b, p);
  f.J = get_u64(b, p);
  const std::size_t n_nodes = get_u64(b, p);
  f.base.a = get_f64(b, p);
  f.base.b = get_f64(b, p);
  f.base.bc = get_u64(b, p) == 0 ? BoundaryCondition::Neumann
                                 : BoundaryCondition::Dirichlet;
  const double dr = get_f64(b, p);
  f.t0 = get_f64(b, p);
  f.grid.M = n_nodes - 1;
  f.grid.R = dr * static_cast<double>(f.grid.M);
  const std::size_t n_snaps = get_u64(b, p);
  f.snapshots.resize(n_snaps);
  for (std::size_t s = 0; s < n_snaps; ++s) {
    Snapshot& snap = f.snapshots[s];
    snap.v.assign(f.J, std::vector<double>(n_nodes));
    snap.vt.assign(f.J, std::vector<double>(n_nodes));
    for (std::size_t j = 0; j < f.J; ++j) {
      snap.t = get_f64(b, p);
      const std::uint64_t mode = get_u64(b, p);
      if (mode != j + 1) throw std::runtime_error("snapshot record out of order");
      for (std::size_t i = 0; i < n_nodes; ++i) snap.v[j][i] = get_f64(b, p);
      for (std::size_t i = 0; i < n_nodes; ++i) snap.vt[j][i] = get_f64(b, p);
    }
  }
  return f;
}

}  // namespace wg
