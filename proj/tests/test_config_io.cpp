#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "wg/config.hpp"
#include "wg/report.hpp"

using namespace wg;

namespace {
std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}
}  // namespace

TEST_CASE("config parse, echo and hash are stable") {
  const std::string text = R"cfg(
# run description
[base]
a = 0
b = 3.141592653589793
bc = neumann
[modes]
J = 4
[nonlinearity]
preset = john
[data]
B = 1.5
eps = 0.25
modes_f = 1:1.0,2:0.5
)cfg";
  RunConfig c = parse_config_text(text);
  CHECK(c.J == 4);
  CHECK(c.B == doctest::Approx(1.5));
  CHECK(c.preset == "john");
  CHECK(c.modes_f.size() == 2);
  // the echo is canonical: reparsing reproduces it bit for bit
  RunConfig c2 = parse_config_text(c.echo());
  CHECK(c2.echo() == c.echo());
  CHECK(c2.hash() == c.hash());
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_config_text("[base]\na = 0\nbogus_line_without_equals\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("[base]\nzzz = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("a = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[base]\na = abc\n"), ConfigError);
}

TEST_CASE("overrides and validation") {
  RunConfig c;
  apply_override(c, "modes.J", "8");
  apply_override(c, "time.cfl", "0.3");
  CHECK(c.J == 8);
  CHECK(c.cfl == doctest::Approx(0.3));
  CHECK_THROWS_AS(apply_override(c, "noses.J", "1"), ConfigError);
  c.cfl = 0.9;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.cfl = 0.4;
  c.a = 2.0;
  c.b = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("explicit nonlinearity terms assemble symmetrized") {
  RunConfig c;
  c.preset = "none";
  c.quasilinear.push_back({0, 4, 0, 1.0});
  Nonlinearity nl = c.nonlinearity();
  CHECK(nl.B[0][4][0] == doctest::Approx(0.5));
  CHECK(nl.B[4][0][0] == doctest::Approx(0.5));
}

TEST_CASE("csv output is deterministic") {
  const std::string p1 = "/tmp/wg_test_a.csv", p2 = "/tmp/wg_test_b.csv";
  for (const std::string& p : {p1, p2}) {
    CsvWriter w(p, 0x1234abcd, {"x", "y"});
    w.row_values({1.0 / 3.0, 2.0e-17});
    w.row_values({-0.1, 5e300});
    w.close();
  }
  CHECK(read_file(p1) == read_file(p2));
  const std::string body = read_file(p1);
  CHECK(body.find("# config_hash = ") == 0);
  CHECK(body.find("0.33333333333333331") != std::string::npos);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("snapshot binary round trip") {
  InitialData d;
  d.mode_f = {1.0, 0.5};
  d.mode_g = {0.0, 0.2};
  const BaseInterval base{0.0, 2.0, BoundaryCondition::Neumann};
  GridSpec grid{6.0, 60};
  EvolveOptions opts;
  opts.T_end = 3.0;
  opts.out_every = 1.0;
  RunResult run = evolve(d, base, 2, grid, 2.0, nonlinearity_preset("none"), opts);
  const std::string path = "/tmp/wg_test_snap.bin";
  write_snapshots(path, run, base, 0xfeedbeef);
  SnapshotFile f = read_snapshots(path);
  CHECK(f.config_hash == 0xfeedbeef);
  CHECK(f.J == 2);
  CHECK(f.base.b == doctest::Approx(2.0));
  REQUIRE(f.snapshots.size() == run.snapshots.size());
  for (std::size_t s = 0; s < f.snapshots.size(); ++s) {
    CHECK(f.snapshots[s].t == run.snapshots[s].t);
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t i = 0; i <= grid.M; ++i)
        CHECK(f.snapshots[s].v[j][i] == run.snapshots[s].v[j][i]);
  }
  std::remove(path.c_str());
}
