// SPDX-License-Identifier: MIT
//
// main.cpp -- the `wvlab` command-line tool.
//
// Subcommands:
//   verify    run the symbolic verification suites and report each check
//   simulate  advance a configured initial-value problem, writing snapshots
//             and conserved-integral monitor series
//   exact     tabulate an exact solution on a space-time grid
//   mms       grid-convergence study of the solver against an exact solution
//   catalog   dump the cataloged symbolic structures as JSON
//
// Exit codes: 0 success; 1 a verification check deviated from its cataloged
// expectation; 2 invalid arguments or configuration; 3 runtime numerical
// failure (degenerate wave speed, non-finite state, Newton non-convergence,
// domain violation).
//
// Every run that produces an output directory or file also writes a JSON run
// manifest (subcommand, resolved configuration, tool version, start/end
// timestamps, exit status) alongside it.  CSV bodies are deterministic:
// rerunning a subcommand with the same inputs reproduces them byte for byte;
// timestamps live only in the manifest.

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <functional>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "wvlab/catalog.hpp"
#include "wvlab/exact.hpp"
#include "wvlab/mms.hpp"
#include "wvlab/pde.hpp"
#include "wvlab/simulate.hpp"
#include "wvlab/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wvlab;

namespace {

constexpr const char* kToolVersion = "0.1.0";

using Clock = std::chrono::system_clock;

std::string iso_utc(Clock::time_point tp) {
  std::time_t tt = Clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Map the in-flight exception to an exit code per the contract above.
int classify_active_exception(std::string& msg) {
  try {
    throw;
  } catch (const pde::DegenerateWaveSpeed& e) {
    msg = e.what(); return 3;
  } catch (const pde::NonFiniteState& e) {
    msg = e.what(); return 3;
  } catch (const exact::DomainViolation& e) {
    msg = e.what(); return 3;
  } catch (const exact::NewtonFailure& e) {
    msg = e.what(); return 3;
  } catch (const observables::DegenerateDenominator& e) {
    msg = e.what(); return 3;
  } catch (const std::exception& e) {
    msg = e.what(); return 2;
  } catch (...) {
    msg = "unknown error"; return 2;
  }
}

void write_manifest(const fs::path& path, const std::string& subcommand,
                    const json& config, Clock::time_point start,
                    Clock::time_point end, int status) {
  json m;
  m["subcommand"] = subcommand;
  m["config"] = config;
  m["tool_version"] = kToolVersion;
  m["started_at"] = iso_utc(start);
  m["finished_at"] = iso_utc(end);
  m["exit_status"] = status;
  std::ofstream out(path);
  if (out) out << m.dump(2) << '\n';
}

// Run one subcommand body; on failure classify the exception, and in every
// case drop the manifest next to the outputs (when there are any).
int run_with_manifest(const std::string& subcommand, const fs::path& manifest,
                      const json& config, const std::function<void()>& work) {
  const Clock::time_point start = Clock::now();
  int status = 0;
  std::string err;
  try {
    work();
  } catch (...) {
    status = classify_active_exception(err);
  }
  if (!manifest.empty()) {
    if (!manifest.parent_path().empty())
      fs::create_directories(manifest.parent_path());
    write_manifest(manifest, subcommand, config, start, Clock::now(), status);
  }
  if (status != 0)
    std::cerr << "wvlab " << subcommand << ": error: " << err << '\n';
  return status;
}

// ---------------------------------------------------------------------------
// Small parsers
// ---------------------------------------------------------------------------

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> out;
  if (text.empty()) return out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    std::string item = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--params: expected k=v, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    size_t used = 0;
    double d;
    try {
      d = std::stod(val, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--params: bad number in '" + item + "'");
    }
    if (used != val.size())
      throw std::invalid_argument("--params: bad number in '" + item + "'");
    if (!out.emplace(key, d).second)
      throw std::invalid_argument("--params: duplicate key " + key);
    pos = comma == std::string::npos ? text.size() : comma + 1;
  }
  return out;
}

struct AxisSpec {
  double lo = 0.0, hi = 0.0;
  int n = 0;
  double at(int i) const {
    return n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
  }
};

AxisSpec parse_axis(const std::string& text) {
  size_t c1 = text.find(':');
  size_t c2 = c1 == std::string::npos ? std::string::npos
                                      : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("--grid: expected lo:hi:n, got '" + text + "'");
  AxisSpec a;
  try {
    a.lo = std::stod(text.substr(0, c1));
    a.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    a.n = std::stoi(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("--grid: bad axis '" + text + "'");
  }
  if (a.n < 1) throw std::invalid_argument("--grid: need at least one sample");
  return a;
}

// "t0:t1:nt,x0:x1:nx"
std::pair<AxisSpec, AxisSpec> parse_grid(const std::string& text) {
  size_t comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument(
        "--grid: expected t0:t1:nt,x0:x1:nx, got '" + text + "'");
  return {parse_axis(text.substr(0, comma)), parse_axis(text.substr(comma + 1))};
}

// ---------------------------------------------------------------------------
// Exact-solution families by CLI name
// ---------------------------------------------------------------------------

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"deg2", "deg3", "deg4a",
                                                 "deg4b", "similarity"};
  return names;
}

exact::ExactSolution build_family(const std::string& family,
                                  std::map<std::string, double> given) {
  auto take = [&](const char* key, double fallback) {
    auto it = given.find(key);
    if (it == given.end()) return fallback;
    double v = it->second;
    given.erase(it);
    return v;
  };
  exact::ExactSolution sol;
  if (family == "deg2") {
    sol = exact::make_deg2(take("a1", 0.0), take("a2", 0.0), take("a3", 1.0));
  } else if (family == "deg3") {
    double a1 = take("a1", 1.0);
    double beta = take("beta", 1.0);
    int branch = static_cast<int>(take("branch", -1.0));
    sol = exact::make_deg3(a1, branch, beta);
  } else if (family == "deg4a") {
    sol = exact::make_deg4(exact::Deg4Case::a2zero, take("a1", 1.0),
                           take("beta", 1.0));
  } else if (family == "deg4b") {
    sol = exact::make_deg4(exact::Deg4Case::a1zero, take("a2", 1.0),
                           take("beta", 1.0));
  } else if (family == "similarity") {
    double beta = take("beta", 1.0);
    double branch = take("branch", -1.0);
    if (branch != 1.0 && branch != -1.0)
      throw std::invalid_argument(
          "similarity: branch must be +1 (nonsingular) or -1 (singular)");
    sol = exact::make_similarity(branch > 0
                                     ? exact::SimilarityBranch::nonsingular
                                     : exact::SimilarityBranch::singular,
                                 beta);
  } else {
    throw std::invalid_argument("unknown family " + family);
  }
  if (!given.empty())
    throw std::invalid_argument("--params: unknown key '" +
                                given.begin()->first + "' for family " +
                                family);
  return sol;
}

json params_json(const exact::ExactSolution& sol) {
  json j;
  for (const auto& [k, v] : sol.params) j[k] = v;
  return j;
}

json config_json(const pde::SolverConfig& cfg) {
  json j;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["x0"] = cfg.x0;
  j["x1"] = cfg.x1;
  j["nx"] = cfg.nx;
  j["bc"] = cfg.bc == pde::Boundary::periodic ? "periodic" : "dirichlet";
  j["cfl"] = cfg.cfl;
  j["t_end"] = cfg.t_end;
  j["delta"] = cfg.delta;
  j["output.every"] = cfg.output_every;
  j["init.name"] = cfg.init.name;
  j["init.amplitude"] = cfg.init.amplitude;
  j["init.width"] = cfg.init.width;
  j["init.center"] = cfg.init.center;
  j["init.r0"] = cfg.init.r0;
  return j;
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

int cmd_verify(const std::string& suite) {
  std::vector<verify::SuiteOutcome> outcomes = verify::run_suite(suite);
  int deviations = 0;
  for (const verify::SuiteOutcome& o : outcomes) {
    size_t terms = o.report.witness.numerator().terms().size();
    std::printf("%-58s %s %6zu terms%s\n", o.report.check_id.c_str(),
                o.report.passed ? "PASS" : "FAIL", terms,
                o.as_expected ? "" : "  ** deviates from expectation **");
    if (!o.as_expected) ++deviations;
  }
  std::printf("suite %s: %zu checks, %d deviation%s\n", suite.c_str(),
              outcomes.size(), deviations, deviations == 1 ? "" : "s");
  return deviations == 0 ? 0 : 1;
}

void cmd_simulate(const fs::path& config_path, const fs::path& out_dir,
                  pde::SolverConfig& cfg) {
  std::ifstream in(config_path);
  if (!in)
    throw std::invalid_argument("cannot open config file " +
                                config_path.string());
  cfg = pde::parse_config(in);
  simulate::RunResult res = simulate::run_simulation(cfg, out_dir);
  std::printf("advanced to t = %.6g in %d steps; wrote %d snapshots to %s\n",
              res.t_final, res.steps, res.snapshots, out_dir.string().c_str());
  for (const observables::MonitorSeries& ms : res.series) {
    if (ms.samples.size() < 2) continue;
    observables::DriftReport d = observables::drift_report(ms);
    std::printf("  %-4s reference %+.6e   max drift %.3e (relative %.3e)\n",
                ms.name.c_str(), ms.reference, d.max_abs, d.relative);
  }
}

void cmd_exact(const exact::ExactSolution& sol, const AxisSpec& taxis,
               const AxisSpec& xaxis, const fs::path& out_path) {
  // Pre-check the whole grid so a domain violation aborts before any output.
  for (int i = 0; i < taxis.n; ++i)
    for (int j = 0; j < xaxis.n; ++j)
      if (!sol.in_domain(taxis.at(i), xaxis.at(j)))
        throw exact::DomainViolation(
            std::string(exact::family_name(sol.family)) +
            ": grid point (t, x) = (" + std::to_string(taxis.at(i)) + ", " +
            std::to_string(xaxis.at(j)) + ") is outside the solution's domain");
  std::vector<std::array<double, 4>> rows;
  rows.reserve(size_t(taxis.n) * size_t(xaxis.n));
  for (int i = 0; i < taxis.n; ++i)
    for (int j = 0; j < xaxis.n; ++j) {
      double t = taxis.at(i), x = xaxis.at(j);
      rows.push_back({t, x, sol.eval_p(t, x), sol.eval_v(t, x)});
    }
  if (!out_path.parent_path().empty())
    fs::create_directories(out_path.parent_path());
  std::ofstream out(out_path);
  if (!out)
    throw std::runtime_error("cannot write " + out_path.string());
  out << "t,x,p,v\n";
  for (const auto& r : rows)
    out << simulate::detail::full_precision(r[0]) << ','
        << simulate::detail::full_precision(r[1]) << ','
        << simulate::detail::full_precision(r[2]) << ','
        << simulate::detail::full_precision(r[3]) << '\n';
  std::printf("wrote %zu rows to %s\n", rows.size(), out_path.string().c_str());
}

void cmd_mms(const exact::ExactSolution& sol, const mms::MmsSetup& setup,
             const fs::path& out_path) {
  std::vector<mms::MmsRow> rows = mms::mms_convergence(sol, setup);
  std::vector<double> orders = mms::observed_orders(rows);
  std::printf("%6s %12s %14s %8s\n", "nx", "h", "max_error", "order");
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i == 0)
      std::printf("%6d %12.8f %14.6e %8s\n", rows[i].nx, rows[i].h,
                  rows[i].max_error, "--");
    else
      std::printf("%6d %12.8f %14.6e %8.3f\n", rows[i].nx, rows[i].h,
                  rows[i].max_error, orders[i - 1]);
  }
  if (!out_path.empty()) {
    if (!out_path.parent_path().empty())
      fs::create_directories(out_path.parent_path());
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path.string());
    out << "nx,h,max_error,order\n";
    for (size_t i = 0; i < rows.size(); ++i)
      out << rows[i].nx << ',' << simulate::detail::full_precision(rows[i].h)
          << ',' << simulate::detail::full_precision(rows[i].max_error) << ','
          << (i == 0 ? "nan"
                     : simulate::detail::full_precision(orders[i - 1]))
          << '\n';
  }
}

const char* recursion_name(catalog::RecursionId id) {
  switch (id) {
    case catalog::RecursionId::x_translation: return "x_translation";
    case catalog::RecursionId::dilation: return "dilation";
    case catalog::RecursionId::westervelt_lifted: return "westervelt_lifted";
  }
  return "?";
}

json catalog_json() {
  using wvlab::to_string;  // JetExpr printer
  json j;
  j["tool_version"] = kToolVersion;
  j["equations"] = json::array();
  for (EquationName eq :
       {EquationName::westervelt_damped, EquationName::westervelt_undamped,
        EquationName::potential_damped, EquationName::potential_undamped,
        EquationName::linear_wave, EquationName::f_equation}) {
    json e;
    e["name"] = equation_name_str(eq);
    e["residual"] = to_string(equation(eq).residual);
    j["equations"].push_back(std::move(e));
  }
  j["symmetries"] = json::array();
  for (const catalog::SymmetryChar& s : catalog::all_symmetries()) {
    json e;
    e["id"] = s.id;
    e["equation"] = equation_name_str(s.equation);
    e["characteristic"] = to_string(s.expr);
    e["order"] = s.order;
    e["local"] = s.local;
    e["undamped_only"] = s.undamped_only;
    e["tag"] = s.tag;
    e["note"] = s.note;
    j["symmetries"].push_back(std::move(e));
  }
  j["currents"] = json::array();
  for (const catalog::ConservedCurrent& c : catalog::all_currents()) {
    json e;
    e["id"] = c.id;
    e["equation"] = equation_name_str(c.equation);
    e["multiplier"] = to_string(c.Q);
    e["density"] = to_string(c.T);
    e["flux"] = to_string(c.Phi);
    e["undamped_only"] = c.undamped_only;
    e["on_shell"] = c.on_shell;
    e["tag"] = c.tag;
    e["note"] = c.note;
    j["currents"].push_back(std::move(e));
  }
  j["recursions"] = json::array();
  for (catalog::RecursionId id :
       {catalog::RecursionId::x_translation, catalog::RecursionId::dilation,
        catalog::RecursionId::westervelt_lifted}) {
    const catalog::RecursionOp& r = catalog::get_recursion(id);
    json e;
    e["id"] = recursion_name(id);
    e["equation"] = equation_name_str(r.equation);
    e["numerator_t"] = to_string(r.num_coeff_t);
    e["numerator_x"] = to_string(r.num_coeff_x);
    e["denominator"] = to_string(r.denom);
    j["recursions"].push_back(std::move(e));
  }
  {
    const catalog::ContactMap& m = catalog::contact_map();
    json e;
    e["t_star"] = to_string(m.t_star);
    e["x_star"] = to_string(m.x_star);
    e["v_star"] = to_string(m.v_star);
    e["v_star_t"] = to_string(m.v_star_t);
    e["v_star_x"] = to_string(m.v_star_x);
    e["t_of"] = to_string(m.t_of);
    e["x_of"] = to_string(m.x_of);
    e["v_of"] = to_string(m.v_of);
    e["v_t_of"] = to_string(m.v_t_of);
    e["v_x_of"] = to_string(m.v_x_of);
    j["contact_map"] = std::move(e);
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "wvlab -- verification laboratory for a nonlinear acoustic wave "
      "equation: symbolic structure checks, a conservative solver with "
      "conserved-integral monitors, exact solutions, and convergence "
      "studies.\nExit codes: 0 ok, 1 verification deviation, 2 bad "
      "arguments/config, 3 numerical failure."};
  app.require_subcommand(1);
  std::string version_line = std::string("wvlab ") + kToolVersion;
  app.set_version_flag("--version", version_line);

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "run the symbolic verification suites");
  std::string suite = "all";
  verify_cmd->add_option("--suite", suite, "suite to run")
      ->check(CLI::IsMember(verify::suite_names()))
      ->capture_default_str();

  // simulate
  auto* sim_cmd = app.add_subcommand(
      "simulate", "advance a configured run, writing snapshots and monitors");
  std::string sim_config;
  std::string sim_out = "simulate_out";
  sim_cmd->add_option("--config", sim_config, "solver configuration file")
      ->required();
  sim_cmd->add_option("--out", sim_out, "output directory")
      ->capture_default_str();

  // exact
  auto* exact_cmd = app.add_subcommand(
      "exact", "tabulate an exact solution on a space-time grid");
  std::string ex_family, ex_params, ex_grid;
  std::string ex_out = "exact.csv";
  exact_cmd->add_option("--family", ex_family, "solution family")
      ->check(CLI::IsMember(family_names()))
      ->required();
  exact_cmd->add_option("--params", ex_params,
                        "family parameters, e.g. a1=1,beta=1");
  exact_cmd->add_option("--grid", ex_grid, "t0:t1:nt,x0:x1:nx")->required();
  exact_cmd->add_option("--out", ex_out, "output CSV path")
      ->capture_default_str();

  // mms
  auto* mms_cmd = app.add_subcommand(
      "mms", "grid-convergence study against an exact solution");
  std::string mm_family, mm_params, mm_out;
  int mm_refinements = 4;
  int mm_nx0 = 33;
  mms_cmd->add_option("--family", mm_family, "solution family")
      ->check(CLI::IsMember(family_names()))
      ->required();
  mms_cmd->add_option("--params", mm_params,
                      "family parameters, e.g. a1=1,beta=1");
  mms_cmd->add_option("--refinements", mm_refinements,
                      "number of grids in the ladder")
      ->check(CLI::Range(2, 8))
      ->capture_default_str();
  mms_cmd->add_option("--nx0", mm_nx0, "coarsest grid size")
      ->check(CLI::Range(17, 4097))
      ->capture_default_str();
  mms_cmd->add_option("--out", mm_out, "optional CSV output path");

  // catalog dump
  auto* cat_cmd = app.add_subcommand(
      "catalog", "inspect the cataloged symbolic structures");
  cat_cmd->require_subcommand(1);
  auto* dump_cmd = cat_cmd->add_subcommand("dump", "dump the catalog");
  std::string cat_format = "json";
  std::string cat_out;
  dump_cmd->add_option("--format", cat_format, "output format")
      ->check(CLI::IsMember(std::vector<std::string>{"json"}))
      ->capture_default_str();
  dump_cmd->add_option("--out", cat_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int cli_code = app.exit(e);
    return cli_code == 0 ? 0 : 2;  // --help/--version exit 0, bad args exit 2
  }

  try {
    if (*verify_cmd) return cmd_verify(suite);

    if (*sim_cmd) {
      pde::SolverConfig cfg;
      fs::path out_dir = sim_out;
      // Parse the config up front so argument errors skip the manifest (no
      // resolved configuration exists to record yet).
      {
        std::ifstream in(sim_config);
        if (!in)
          throw std::invalid_argument("cannot open config file " + sim_config);
        cfg = pde::parse_config(in);
      }
      json jcfg = config_json(cfg);
      jcfg["config_file"] = sim_config;
      return run_with_manifest("simulate", out_dir / "manifest.json", jcfg,
                               [&] { simulate::run_simulation(cfg, out_dir); });
    }

    if (*exact_cmd) {
      exact::ExactSolution sol = build_family(ex_family, parse_params(ex_params));
      auto [taxis, xaxis] = parse_grid(ex_grid);
      json jcfg;
      jcfg["family"] = ex_family;
      jcfg["params"] = params_json(sol);
      jcfg["grid"] = ex_grid;
      jcfg["out"] = ex_out;
      return run_with_manifest("exact", ex_out + ".manifest.json", jcfg,
                               [&] { cmd_exact(sol, taxis, xaxis, ex_out); });
    }

    if (*mms_cmd) {
      exact::ExactSolution sol = build_family(mm_family, parse_params(mm_params));
      mms::MmsSetup setup = mms::default_setup(sol);
      setup.refinements = mm_refinements;
      setup.nx0 = mm_nx0;
      json jcfg;
      jcfg["family"] = mm_family;
      jcfg["params"] = params_json(sol);
      jcfg["beta"] = setup.beta;
      jcfg["x0"] = setup.x0;
      jcfg["x1"] = setup.x1;
      jcfg["t0"] = setup.t0;
      jcfg["t_end"] = setup.t_end;
      jcfg["nx0"] = setup.nx0;
      jcfg["refinements"] = setup.refinements;
      jcfg["cfl"] = setup.cfl;
      fs::path manifest =
          mm_out.empty() ? fs::path() : fs::path(mm_out + ".manifest.json");
      return run_with_manifest("mms", manifest, jcfg,
                               [&] { cmd_mms(sol, setup, mm_out); });
    }

    if (*cat_cmd) {
      json j = catalog_json();
      if (cat_out.empty()) {
        std::cout << j.dump(2) << '\n';
      } else {
        fs::path p = cat_out;
        if (!p.parent_path().empty()) fs::create_directories(p.parent_path());
        std::ofstream out(p);
        if (!out) throw std::runtime_error("cannot write " + cat_out);
        out << j.dump(2) << '\n';
        std::printf("wrote catalog to %s\n", cat_out.c_str());
      }
      return 0;
    }
  } catch (...) {
    std::string err;
    int status = classify_active_exception(err);
    std::cerr << "wvlab: error: " << err << '\n';
    return status;
  }
  return 0;
}
