// Drives the wg binary end to end: subcommand wiring, exit codes, output
// determinism.  The binary path arrives as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {
std::string g_bin;

int run_cmd(const std::string& args) {
  const std::string cmd = g_bin + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}
}  // namespace

TEST_CASE("spectrum subcommand writes the eigenvalue table and passes") {
  write_file("/tmp/wg_cli_spec.cfg",
             "[base]\na = 0\nb = 3.141592653589793\nbc = neumann\n"
             "[modes]\nJ = 4\n[output]\ndir = /tmp/wg_cli_out1\n");
  CHECK(run_cmd("spectrum --config /tmp/wg_cli_spec.cfg") == 0);
  const std::string csv = read_file("/tmp/wg_cli_out1/spectrum.csv");
  CHECK(csv.find("1,0,") != std::string::npos);   // lambda_1 = 0
  CHECK(csv.find("2,1,") != std::string::npos);   // lambda_2 = 1
  CHECK(csv.find("4,3,") != std::string::npos);   // lambda_4 = 3
  CHECK(read_file("/tmp/wg_cli_out1/config_echo.cfg").find("[base]") == 0);
}

TEST_CASE("identical config gives identical bytes") {
  CHECK(run_cmd("spectrum --config /tmp/wg_cli_spec.cfg --out /tmp/wg_cli_o2") == 0);
  CHECK(run_cmd("spectrum --config /tmp/wg_cli_spec.cfg --out /tmp/wg_cli_o3") == 0);
  CHECK(read_file("/tmp/wg_cli_o2/spectrum.csv") ==
        read_file("/tmp/wg_cli_o3/spectrum.csv"));
  CHECK(read_file("/tmp/wg_cli_o2/spectrum_report.json") ==
        read_file("/tmp/wg_cli_o3/spectrum_report.json"));
}

TEST_CASE("compat subcommand: pass and documented refusal") {
  write_file("/tmp/wg_cli_ok.cfg",
             "[nonlinearity]\npreset = dy_compat\n[output]\ndir = /tmp/wg_cli_o4\n");
  CHECK(run_cmd("compat --config /tmp/wg_cli_ok.cfg") == 0);
  write_file("/tmp/wg_cli_bad.cfg",
             "[nonlinearity]\npreset = dy_incompat\n[output]\ndir = /tmp/wg_cli_o5\n");
  CHECK(run_cmd("compat --config /tmp/wg_cli_bad.cfg") == 1);
  const std::string rep = read_file("/tmp/wg_cli_o5/compat_report.json");
  CHECK(rep.find("\"compatible\": false") != std::string::npos);
  CHECK(rep.find("witnesses") != std::string::npos);
}

TEST_CASE("config errors exit with code 2 and a line diagnostic") {
  write_file("/tmp/wg_cli_broken.cfg", "[base]\na = zero\n");
  CHECK(run_cmd("spectrum --config /tmp/wg_cli_broken.cfg") == 2);
  write_file("/tmp/wg_cli_broken2.cfg", "[time]\ncfl = 0.9\n");
  CHECK(run_cmd("spectrum --config /tmp/wg_cli_broken2.cfg") == 2);
}

TEST_CASE("set overrides reach the run") {
  CHECK(run_cmd("spectrum --config /tmp/wg_cli_spec.cfg --out /tmp/wg_cli_o6 "
                "--set modes.J=3") == 0);
  const std::string csv = read_file("/tmp/wg_cli_o6/spectrum.csv");
  CHECK(csv.find("3,2,") != std::string::npos);
  CHECK(csv.find("\n4,") == std::string::npos);  // only three modes
}

TEST_CASE("evolve subcommand completes a small linear run") {
  write_file("/tmp/wg_cli_ev.cfg",
             "[modes]\nJ = 2\n[grid]\ndr = 0.1\n[time]\nT = 4\nout_every = 1\n"
             "[data]\nB = 1\neps = 0.5\nmodes_f = 1:1.0,2:0.5\n"
             "[output]\ndir = /tmp/wg_cli_o7\n");
  CHECK(run_cmd("evolve --config /tmp/wg_cli_ev.cfg") == 0);
  CHECK(!read_file("/tmp/wg_cli_o7/snapshots.bin").empty());
  CHECK(read_file("/tmp/wg_cli_o7/energy.csv").find("t,energy") != std::string::npos);
  CHECK(read_file("/tmp/wg_cli_o7/evolve_report.json").find("completed") !=
        std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <wg-binary>\n");
    return 2;
  }
  g_bin = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  return ctx.run();
}
