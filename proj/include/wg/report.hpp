#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wg/config.hpp"
#include "wg/solver.hpp"

namespace wg {

// CSV with a config-hash comment header; floats at 17 significant digits so
// identical configs reproduce identical bytes.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::uint64_t config_hash,
            const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  void row_values(const std::vector<double>& cells);
  void close();
  ~CsvWriter();

 private:
  std::string path_;
  std::string buf_;
  std::size_t n_cols_;
  bool closed_ = false;
};

std::string hash_hex(std::uint64_t h);

void write_text_file(const std::string& path, const std::string& text);

// two-column plot-data series
void write_series(const std::string& path, std::uint64_t config_hash,
                  const std::vector<double>& x, const std::vector<double>& y,
                  const std::string& xname, const std::string& yname);

// Snapshot dump: little-endian 64-bit floats, header with grid metadata,
// one record per (output time, mode).
void write_snapshots(const std::string& path, const RunResult& run,
                     const BaseInterval& base, std::uint64_t config_hash);

struct SnapshotFile {
  std::uint64_t config_hash = 0;
  BaseInterval base;
  GridSpec grid;
  std::size_t J = 0;
  double t0 = 0.0;
  std::vector<Snapshot> snapshots;
};

SnapshotFile read_snapshots(const std::string& path);

}  // namespace wg
