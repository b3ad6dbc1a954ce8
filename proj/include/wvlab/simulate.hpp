// SPDX-License-Identifier: MIT
#pragma once

// simulate.hpp -- the simulation run driver: advances a configured solver to
// t_end, writing field snapshots (`fields_NNNN.csv`: x, p, q, v) and the
// monitor table (`monitors.csv`: t followed by the active conserved
// integrals) on the configured cadence.  Output is deterministic: full
//-precision decimal, fixed column order, no timestamps.
//
// A monitor whose denominator degenerates at a sample (possible for C5/C6,
// e.g. a pulse at rest has p_x^2 - (1-2 beta p) p_t^2 = 0 wherever p_x = 0)
// records `nan` for that cell; the run carries on.

#include "wvlab/observables.hpp"
#include "wvlab/pde.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wvlab::simulate {

struct RunResult {
  std::vector<observables::MonitorSeries> series;  // active monitors, in order
  int steps = 0;
  int snapshots = 0;
  double t_final = 0.0;
};

namespace detail {

inline std::string full_precision(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_fields(const pde::SolverState& s,
                         const pde::SolverConfig& cfg,
                         const std::filesystem::path& dir, int index) {
  char name[32];
  std::snprintf(name, sizeof name, "fields_%04d.csv", index);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("simulate: cannot write " + std::string(name));
  out << "x,p,q,v\n";
  for (int i = 0; i < cfg.nx; ++i)
    out << full_precision(cfg.node(i)) << ',' << full_precision(s.p[i]) << ','
        << full_precision(s.q[i]) << ',' << full_precision(s.v[i]) << '\n';
}

}  // namespace detail

// Advance the configured run to t_end, sampling monitors and writing CSV
// artifacts into out_dir (created if needed) every cfg.output_every steps
// plus the initial and final states.
inline RunResult run_simulation(const pde::SolverConfig& cfg,
                                const std::filesystem::path& out_dir) {
  cfg.validate();
  std::filesystem::create_directories(out_dir);
  pde::SolverState s = pde::initial_state(cfg);

  const std::vector<observables::MonitorId> active =
      observables::active_monitors(cfg);
  RunResult result;
  for (observables::MonitorId id : active) {
    observables::MonitorSeries ms;
    ms.id = id;
    ms.name = observables::monitor_spec(id).name;
    result.series.push_back(std::move(ms));
  }

  std::ofstream mon(out_dir / "monitors.csv");
  if (!mon) throw std::runtime_error("simulate: cannot write monitors.csv");
  mon << 't';
  for (const observables::MonitorSeries& ms : result.series)
    mon << ',' << ms.name;
  mon << '\n';

  auto sample = [&] {
    mon << detail::full_precision(s.t);
    for (observables::MonitorSeries& ms : result.series) {
      double value;
      try {
        value = observables::evaluate(ms.id, s, cfg);
      } catch (const observables::DegenerateDenominator&) {
        value = std::numeric_limits<double>::quiet_NaN();
      }
      mon << ',' << detail::full_precision(value);
      if (!std::isnan(value)) ms.record(s.t, value);
    }
    mon << '\n';
    detail::write_fields(s, cfg, out_dir, result.snapshots++);
  };

  sample();
  int since_output = 0;
  const double tol = 1e-12 * std::max(1.0, cfg.t_end);
  while (s.t < cfg.t_end - tol) {
    double dt = std::min(pde::cfl_dt(s, cfg), cfg.t_end - s.t);
    s = pde::step(s, cfg, nullptr, dt);
    ++result.steps;
    if (++since_output == cfg.output_every) {
      since_output = 0;
      if (s.t < cfg.t_end - tol) sample();
    }
  }
  sample();  // final state
  result.t_final = s.t;
  return result;
}

}  // namespace wvlab::simulate
