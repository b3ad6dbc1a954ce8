// SPDX-License-Identifier: MIT
//
// Command-line tool: subcommand wiring, the exit-code contract (0 ok,
// 1 verification deviation, 2 bad arguments or configuration, 3 numerical
// failure), run manifests, and byte-determinism of CSV bodies across reruns.

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CmdResult run_cli(const std::string& args) {
  std::string cmd = std::string(WVLAB_BIN_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult res;
  char buf[512];
  while (size_t n = std::fread(buf, 1, sizeof buf, pipe))
    res.output.append(buf, n);
  int rc = pclose(pipe);
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh scratch directory under the build tree for this process.
fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::current_path() / "cli_scratch";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("version and argument errors") {
  CHECK(run_cli("--version").exit_code == 0);
  CHECK(run_cli("--version").output.find("wvlab") != std::string::npos);

  // Unknown subcommands, missing required options, and malformed values are
  // all argument errors: exit 2.
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("simulate").exit_code == 2);                 // --config missing
  CHECK(run_cli("verify --suite nope").exit_code == 2);      // unknown suite
  CHECK(run_cli("exact --family bogus --grid 0:1:4,0:1:4").exit_code == 2);
  CHECK(run_cli("exact --family deg2 --grid nonsense").exit_code == 2);
  CHECK(run_cli("exact --family deg2 --grid 0:1:4,0:1:0").exit_code == 2);
  CHECK(run_cli("exact --family deg2 --params a9=1 --grid 0:1:4,0:1:4")
            .exit_code == 2);
  CHECK(run_cli("exact --family deg2 --params a3=0 --grid 0:1:4,0:1:4")
            .exit_code == 2);
  CHECK(run_cli("catalog").exit_code == 2);                  // needs dump
  CHECK(run_cli("catalog dump --format yaml").exit_code == 2);
}

TEST_CASE("simulate: missing config exits 2, bad physics exits 3") {
  CHECK(run_cli("simulate --config " + (scratch() / "missing.cfg").string())
            .exit_code == 2);

  // A pulse that already violates the hyperbolicity margin at t = 0.
  fs::path cfg = scratch() / "degenerate.cfg";
  std::ofstream(cfg) << "beta = 0.6\nx0 = -5\nx1 = 5\nnx = 32\nt_end = 0.1\n"
                        "init.name = gaussian\ninit.amplitude = 1.0\n"
                        "init.width = 1.0\n";
  fs::path out = scratch() / "degenerate_run";
  auto res = run_cli("simulate --config " + cfg.string() + " --out " +
                     out.string());
  CHECK(res.exit_code == 3);
  // The manifest still lands, recording the failure.
  auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  CHECK(manifest["subcommand"] == "simulate");
  CHECK(manifest["exit_status"] == 3);
}

TEST_CASE("simulate: happy path writes monitors, snapshots, manifest") {
  fs::path cfg = scratch() / "run.cfg";
  std::ofstream(cfg) << "beta = 0.1\nx0 = -10\nx1 = 10\nnx = 64\nt_end = 0.2\n"
                        "cfl = 0.5\ninit.name = gaussian\n"
                        "init.amplitude = 0.5\ninit.width = 1.5\n"
                        "output.every = 50\n";
  fs::path out = scratch() / "run_out";
  auto res = run_cli("simulate --config " + cfg.string() + " --out " +
                     out.string());
  CHECK(res.exit_code == 0);
  std::string monitors = slurp(out / "monitors.csv");
  CHECK(monitors.rfind("t,C1,C2,C3,C4,", 0) == 0);
  CHECK(fs::exists(out / "fields_0000.csv"));
  auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  CHECK(manifest["exit_status"] == 0);
  CHECK(manifest["tool_version"].is_string());
  CHECK(manifest["config"]["beta"] == 0.1);
  CHECK(manifest["started_at"].is_string());
  CHECK(manifest["finished_at"].is_string());

  // Damped runs drop the undamped-only monitors: header is t,C1..C4 only.
  // The third-order damped system carries a spurious relaxation mode growing
  // like e^{t(1-2 beta p)/alpha}, so the horizon must respect the relaxation
  // scale: t_end ~ alpha/4 here.
  fs::path dcfg = scratch() / "damped.cfg";
  std::ofstream(dcfg) << "alpha = 0.2\nbeta = 0.1\nx0 = -10\nx1 = 10\n"
                         "nx = 64\nt_end = 0.05\ninit.name = gaussian\n"
                         "init.amplitude = 0.3\ninit.width = 1.5\n";
  fs::path dout = scratch() / "damped_out";
  CHECK(run_cli("simulate --config " + dcfg.string() + " --out " +
                dout.string())
            .exit_code == 0);
  std::string dmon = slurp(dout / "monitors.csv");
  CHECK(dmon.substr(0, dmon.find('\n')) == "t,C1,C2,C3,C4");

  // Rerunning reproduces every CSV byte for byte (manifests may differ in
  // their timestamps).
  fs::path out2 = scratch() / "run_out_repeat";
  CHECK(run_cli("simulate --config " + cfg.string() + " --out " +
                out2.string())
            .exit_code == 0);
  CHECK(slurp(out2 / "monitors.csv") == monitors);
  CHECK(slurp(out2 / "fields_0000.csv") == slurp(out / "fields_0000.csv"));
}

TEST_CASE("exact: tabulation, domain violations, determinism") {
  // In-domain tabulation of the spatially constant family: the example grid
  // stays below the horizon t = 3/4 for a1 = beta = 1.
  fs::path csv = scratch() / "d3.csv";
  auto ok = run_cli("exact --family deg3 --params a1=1,beta=1 "
                    "--grid 0:0.7:8,0:1:8 --out " + csv.string());
  CHECK(ok.exit_code == 0);
  std::string body = slurp(csv);
  CHECK(body.rfind("t,x,p,v\n", 0) == 0);
  // 8 x 8 samples plus the header line
  CHECK(std::count(body.begin(), body.end(), '\n') == 65);
  auto manifest = nlohmann::json::parse(slurp(csv.string() + ".manifest.json"));
  CHECK(manifest["subcommand"] == "exact");
  CHECK(manifest["exit_status"] == 0);
  CHECK(manifest["config"]["params"]["beta"] == 1.0);

  // Extending the grid past the horizon is a runtime domain violation.
  fs::path bad = scratch() / "d3_bad.csv";
  auto violated = run_cli("exact --family deg3 --params a1=1,beta=1 "
                          "--grid 0:0.8:8,0:1:8 --out " + bad.string());
  CHECK(violated.exit_code == 3);
  CHECK_FALSE(fs::exists(bad));  // no partial output
  auto bad_manifest =
      nlohmann::json::parse(slurp(bad.string() + ".manifest.json"));
  CHECK(bad_manifest["exit_status"] == 3);

  // The singular similarity branch excludes x = 0.
  CHECK(run_cli("exact --family similarity --params beta=0.5,branch=-1 "
                "--grid 1:2:4,-1:1:5 --out " + (scratch() / "s.csv").string())
            .exit_code == 3);

  // Newton-backed family: reruns are byte-identical.
  fs::path n1 = scratch() / "d4_1.csv", n2 = scratch() / "d4_2.csv";
  CHECK(run_cli("exact --family deg4a --params a1=1,beta=1 "
                "--grid 0:0.2:4,-0.3:0.3:5 --out " + n1.string())
            .exit_code == 0);
  CHECK(run_cli("exact --family deg4a --params a1=1,beta=1 "
                "--grid 0:0.2:4,-0.3:0.3:5 --out " + n2.string())
            .exit_code == 0);
  CHECK(slurp(n1) == slurp(n2));
  CHECK(run_cli("exact --family deg4b --params a2=1,beta=1 "
                "--grid 0:0.2:4,-0.3:0.3:5 --out " +
                (scratch() / "d4b.csv").string())
            .exit_code == 0);
}

TEST_CASE("mms: convergence table and CSV") {
  fs::path csv = scratch() / "mms_d3.csv";
  auto res = run_cli("mms --family deg3 --params a1=1,beta=1 "
                     "--refinements 3 --out " + csv.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("max_error") != std::string::npos);
  std::string body = slurp(csv);
  CHECK(body.rfind("nx,h,max_error,order\n", 0) == 0);
  CHECK(std::count(body.begin(), body.end(), '\n') == 4);
  auto manifest = nlohmann::json::parse(slurp(csv.string() + ".manifest.json"));
  CHECK(manifest["config"]["refinements"] == 3);

  // Determinism of the measured ladder.
  fs::path csv2 = scratch() / "mms_d3_repeat.csv";
  CHECK(run_cli("mms --family deg3 --params a1=1,beta=1 --refinements 3 "
                "--out " + csv2.string())
            .exit_code == 0);
  CHECK(slurp(csv2) == body);

  // Non-hyperbolic family: honest numerical failure.
  CHECK(run_cli("mms --family deg4a --params a1=1,beta=1").exit_code == 3);
}

TEST_CASE("verify subcommand reports checks and agrees with the catalog") {
  auto res = run_cli("verify --suite mapping");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("PASS") != std::string::npos);
  CHECK(res.output.find("0 deviations") != std::string::npos);

  // The variational suite contains cataloged negative results: they print
  // FAIL yet agree with their expectation, so the exit code stays 0.
  auto vres = run_cli("verify --suite variational");
  CHECK(vres.exit_code == 0);
  CHECK(vres.output.find("FAIL") != std::string::npos);
  CHECK(vres.output.find("0 deviations") != std::string::npos);
}

TEST_CASE("catalog dump emits well-formed JSON") {
  auto res = run_cli("catalog dump --format json");
  CHECK(res.exit_code == 0);
  auto j = nlohmann::json::parse(res.output);
  CHECK(j["symmetries"].is_array());
  CHECK(j["symmetries"].size() >= 10);
  CHECK(j["currents"].is_array());
  CHECK(j["currents"].size() >= 10);
  CHECK(j["recursions"].size() == 3);
  CHECK(j["contact_map"].is_object());
  bool found = false;
  for (const auto& e : j["equations"])
    if (e["name"] == "westervelt_undamped") found = true;
  CHECK(found);

  // --out writes the same document to a file.
  fs::path out = scratch() / "catalog.json";
  CHECK(run_cli("catalog dump --format json --out " + out.string())
            .exit_code == 0);
  auto j2 = nlohmann::json::parse(slurp(out));
  CHECK(j2["symmetries"] == j["symmetries"]);
}
