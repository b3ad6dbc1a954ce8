// SPDX-License-Identifier: MIT
#pragma once

// pde.hpp -- method-of-lines finite-difference solver for the damped and
// undamped nonlinear pressure equation
//
//     (1 - 2 beta p) p_tt - 2 beta p_t^2 - alpha p_ttt = p_xx,
//
// integrated as a first-order system with the classical 4-stage Runge-Kutta
// scheme and second-order central differences in space.  The potential
// v = \partial_t^{-1} p (gauge v(0,.) = 0) is co-evolved so that the
// potential-level conserved densities can be monitored.  State layout:
//
//     undamped (alpha = 0):  p, q = p_t, v          q_t = (2 beta q^2 + Lap p)/(1 - 2 beta p)
//     damped   (alpha > 0):  p, q = p_t, r = p_tt, v  r_t = ((1 - 2 beta p) r - 2 beta q^2 - Lap p)/alpha
//
// The local wave speed is 1/sqrt(1 - 2 beta p); evolution is hyperbolic only
// while 1 - 2 beta p stays positive, and every entry point enforces the
// margin  min(1 - 2 beta p) >= delta  (default 1e-6), raising
// DegenerateWaveSpeed the moment it fails.

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wvlab::pde {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

// The hyperbolicity margin min(1 - 2 beta p) fell below delta.
struct DegenerateWaveSpeed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A step produced a non-finite value (CFL violation or blow-up).
struct NonFiniteState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

enum class Boundary { periodic, dirichlet };

// Named initial profile.  r0 selects the free third-order initial datum on
// damped runs: "consistent" evaluates the smooth alpha -> 0 limit
// r(0,.) = (2 beta q0^2 + Lap p0)/(1 - 2 beta p0), "zero" uses r(0,.) = 0.
struct InitProfile {
  std::string name = "gaussian";  // gaussian | constant | zero
  double amplitude = 1.0;
  double width = 1.0;
  double center = 0.0;
  std::string r0 = "consistent";  // consistent | zero
};

struct SolverConfig {
  double alpha = 0.0;  // damping coefficient, >= 0; 0 selects the undamped system
  double beta = 0.0;   // nonlinearity coefficient, > 0
  double x0 = 0.0;
  double x1 = 0.0;
  int nx = 0;          // grid points, >= 16
  Boundary bc = Boundary::periodic;
  double cfl = 0.5;    // in (0, 1]
  double t_end = 0.0;  // > 0
  InitProfile init;
  double delta = 1e-6;    // hyperbolicity margin
  int output_every = 50;  // simulate cadence, in steps

  bool damped() const { return alpha > 0.0; }

  // Uniform spacing: periodic grids identify x1 with x0 (nx cells), closed
  // grids include both endpoints (nx - 1 cells).
  double h() const {
    return bc == Boundary::periodic ? (x1 - x0) / nx : (x1 - x0) / (nx - 1);
  }

  double node(int i) const { return x0 + i * h(); }

  void validate() const {
    if (!(beta > 0.0)) throw std::invalid_argument("config: beta must be > 0");
    if (alpha < 0.0) throw std::invalid_argument("config: alpha must be >= 0");
    if (!(x1 > x0)) throw std::invalid_argument("config: domain needs x1 > x0");
    if (nx < 16) throw std::invalid_argument("config: nx must be >= 16");
    if (!(cfl > 0.0 && cfl <= 1.0))
      throw std::invalid_argument("config: cfl must lie in (0, 1]");
    if (!(t_end > 0.0)) throw std::invalid_argument("config: t_end must be > 0");
    if (!(delta > 0.0)) throw std::invalid_argument("config: delta must be > 0");
    if (output_every < 1)
      throw std::invalid_argument("config: output.every must be >= 1");
    if (init.name != "gaussian" && init.name != "constant" &&
        init.name != "zero")
      throw std::invalid_argument("config: unknown init profile " + init.name);
    if (init.name == "gaussian" && !(init.width > 0.0))
      throw std::invalid_argument("config: init.width must be > 0");
    if (init.r0 != "consistent" && init.r0 != "zero")
      throw std::invalid_argument("config: init.r0 must be consistent or zero");
  }
};

// Flat key=value configuration text: one pair per line, '#' comments, blank
// lines ignored.  Unknown or duplicate keys are errors.
inline SolverConfig parse_config(std::istream& in) {
  SolverConfig cfg;
  std::map<std::string, bool> seen;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(lineno) +
                                ": " + what);
  };
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  bool have_beta = false, have_x0 = false, have_x1 = false, have_nx = false,
       have_tend = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line.substr(0, line.find('#')));
    if (s.empty()) continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos) fail("expected key=value");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty() || val.empty()) fail("expected key=value");
    if (seen[key]) fail("duplicate key " + key);
    seen[key] = true;
    auto as_real = [&] {
      size_t pos = 0;
      double d;
      try {
        d = std::stod(val, &pos);
      } catch (const std::exception&) {
        fail("value of " + key + " is not a number");
        return 0.0;  // unreachable
      }
      if (pos != val.size()) fail("value of " + key + " is not a number");
      return d;
    };
    auto as_int = [&] {
      double d = as_real();
      int i = static_cast<int>(d);
      if (static_cast<double>(i) != d)
        fail("value of " + key + " is not an integer");
      return i;
    };
    if (key == "alpha") cfg.alpha = as_real();
    else if (key == "beta") { cfg.beta = as_real(); have_beta = true; }
    else if (key == "x0") { cfg.x0 = as_real(); have_x0 = true; }
    else if (key == "x1") { cfg.x1 = as_real(); have_x1 = true; }
    else if (key == "nx") { cfg.nx = as_int(); have_nx = true; }
    else if (key == "bc") {
      if (val == "periodic") cfg.bc = Boundary::periodic;
      else if (val == "dirichlet") cfg.bc = Boundary::dirichlet;
      else fail("bc must be periodic or dirichlet");
    }
    else if (key == "cfl") cfg.cfl = as_real();
    else if (key == "t_end") { cfg.t_end = as_real(); have_tend = true; }
    else if (key == "delta") cfg.delta = as_real();
    else if (key == "init.name") cfg.init.name = val;
    else if (key == "init.amplitude") cfg.init.amplitude = as_real();
    else if (key == "init.width") cfg.init.width = as_real();
    else if (key == "init.center") cfg.init.center = as_real();
    else if (key == "init.r0") cfg.init.r0 = val;
    else if (key == "output.every") cfg.output_every = as_int();
    else fail("unknown key " + key);
  }
  if (!have_beta || !have_x0 || !have_x1 || !have_nx || !have_tend)
    throw std::invalid_argument(
        "config: beta, x0, x1, nx, t_end are required");
  cfg.validate();
  return cfg;
}

inline SolverConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

// ---------------------------------------------------------------------------
// State
// ---------------------------------------------------------------------------

using Field = std::vector<double>;

struct SolverState {
  double t = 0.0;
  Field p;  // pressure
  Field q;  // p_t
  Field r;  // p_tt; populated only on damped runs
  Field v;  // time antiderivative of p, v(0,.) = 0
};

// Prescribed boundary values for closed (Dirichlet) runs.  When absent the
// boundary values are frozen at their initial data (static Dirichlet); when
// present -- e.g. manufactured-solution runs driven by an exact solution --
// the stencils read p at the stage time from `p`, and after each full step
// the boundary nodes are overwritten from all three callables.
struct BoundaryData {
  std::function<double(double t, double x)> p;
  std::function<double(double t, double x)> q;
  std::function<double(double t, double x)> v;
};

namespace detail {

inline double min_margin(const Field& p, double beta) {
  double m = std::numeric_limits<double>::infinity();
  for (double pi : p) m = std::min(m, 1.0 - 2.0 * beta * pi);
  return m;
}

inline void require_margin(const Field& p, const SolverConfig& cfg) {
  double m = min_margin(p, cfg.beta);
  if (!(m >= cfg.delta))
    throw DegenerateWaveSpeed(
        "hyperbolicity margin " + std::to_string(m) + " fell below delta = " +
        std::to_string(cfg.delta));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Semi-discrete right-hand side
// ---------------------------------------------------------------------------

struct StateDeriv {
  Field p, q, r, v;
};

// Time derivative of the state under the second-order central-difference
// semi-discretization.  On closed grids the boundary nodes carry zero
// derivative (their values are prescribed data, frozen or injected), and the
// interior stencils next to the boundary read the prescribed value at the
// stage time when `bd` is given.
inline StateDeriv rhs(const SolverState& s, const SolverConfig& cfg,
                      const BoundaryData* bd = nullptr) {
  const int n = cfg.nx;
  const double beta = cfg.beta;
  const double h2 = cfg.h() * cfg.h();
  detail::require_margin(s.p, cfg);
  if (cfg.damped() && s.r.size() != s.p.size())
    throw std::invalid_argument("rhs: damped run without the p_tt field");

  // pressure values entering the Laplacian: state nodes, except that
  // prescribed closed-boundary values are sampled at the stage time
  auto pval = [&](int i) {
    if (bd && cfg.bc == Boundary::dirichlet && (i == 0 || i == n - 1))
      return bd->p(s.t, cfg.node(i));
    return s.p[static_cast<size_t>(i)];
  };

  StateDeriv d;
  d.p.assign(n, 0.0);
  d.q.assign(n, 0.0);
  d.v.assign(n, 0.0);
  if (cfg.damped()) d.r.assign(n, 0.0);

  const bool periodic = cfg.bc == Boundary::periodic;
  const int lo = periodic ? 0 : 1;
  const int hi = periodic ? n - 1 : n - 2;
  for (int i = lo; i <= hi; ++i) {
    const int im = periodic ? (i == 0 ? n - 1 : i - 1) : i - 1;
    const int ip = periodic ? (i == n - 1 ? 0 : i + 1) : i + 1;
    const double lap = (pval(im) - 2.0 * s.p[i] + pval(ip)) / h2;
    const double B = 1.0 - 2.0 * beta * s.p[i];
    d.p[i] = s.q[i];
    d.v[i] = s.p[i];
    if (cfg.damped()) {
      d.q[i] = s.r[i];
      d.r[i] = (B * s.r[i] - 2.0 * beta * s.q[i] * s.q[i] - lap) / cfg.alpha;
    } else {
      d.q[i] = (2.0 * beta * s.q[i] * s.q[i] + lap) / B;
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Time stepping
// ---------------------------------------------------------------------------

// Largest stable step at the current state:  cfl * h * sqrt(min(1 - 2 beta p))
// (the inverse of the fastest local wave speed), additionally capped by
// cfl * alpha on damped runs (the relaxation scale of the stiff p_tt field).
inline double cfl_dt(const SolverState& s, const SolverConfig& cfg) {
  detail::require_margin(s.p, cfg);
  double dt = cfg.cfl * cfg.h() * std::sqrt(detail::min_margin(s.p, cfg.beta));
  if (cfg.damped()) dt = std::min(dt, cfg.cfl * cfg.alpha);
  return dt;
}

// One classical 4-stage Runge-Kutta step of size dt (default: cfl_dt).
// The returned state has been checked finite and hyperbolic.
inline SolverState step(const SolverState& s, const SolverConfig& cfg,
                        const BoundaryData* bd, double dt) {
  auto blend = [&](const SolverState& base, const StateDeriv& k, double w) {
    SolverState out;
    out.t = base.t + w;
    const size_t n = base.p.size();
    out.p.resize(n);
    out.q.resize(n);
    out.v.resize(n);
    if (cfg.damped()) out.r.resize(n);
    for (size_t i = 0; i < n; ++i) {
      out.p[i] = base.p[i] + w * k.p[i];
      out.q[i] = base.q[i] + w * k.q[i];
      out.v[i] = base.v[i] + w * k.v[i];
      if (cfg.damped()) out.r[i] = base.r[i] + w * k.r[i];
    }
    return out;
  };

  StateDeriv k1 = rhs(s, cfg, bd);
  SolverState s2 = blend(s, k1, dt / 2.0);
  StateDeriv k2 = rhs(s2, cfg, bd);
  SolverState s3 = blend(s, k2, dt / 2.0);
  StateDeriv k3 = rhs(s3, cfg, bd);
  SolverState s4 = blend(s, k3, dt);
  StateDeriv k4 = rhs(s4, cfg, bd);

  SolverState out;
  out.t = s.t + dt;
  const size_t n = s.p.size();
  out.p.resize(n);
  out.q.resize(n);
  out.v.resize(n);
  if (cfg.damped()) out.r.resize(n);
  for (size_t i = 0; i < n; ++i) {
    out.p[i] = s.p[i] + dt / 6.0 * (k1.p[i] + 2 * k2.p[i] + 2 * k3.p[i] + k4.p[i]);
    out.q[i] = s.q[i] + dt / 6.0 * (k1.q[i] + 2 * k2.q[i] + 2 * k3.q[i] + k4.q[i]);
    out.v[i] = s.v[i] + dt / 6.0 * (k1.v[i] + 2 * k2.v[i] + 2 * k3.v[i] + k4.v[i]);
    if (cfg.damped())
      out.r[i] =
          s.r[i] + dt / 6.0 * (k1.r[i] + 2 * k2.r[i] + 2 * k3.r[i] + k4.r[i]);
  }
  if (bd && cfg.bc == Boundary::dirichlet) {
    for (int i : {0, static_cast<int>(n) - 1}) {
      out.p[i] = bd->p(out.t, cfg.node(i));
      out.q[i] = bd->q(out.t, cfg.node(i));
      out.v[i] = bd->v(out.t, cfg.node(i));
    }
  }
  auto finite = [](const Field& f) {
    for (double x : f)
      if (!std::isfinite(x)) return false;
    return true;
  };
  if (!finite(out.p) || !finite(out.q) || !finite(out.v) ||
      (cfg.damped() && !finite(out.r)))
    throw NonFiniteState("non-finite value after step to t = " +
                         std::to_string(out.t));
  detail::require_margin(out.p, cfg);
  return out;
}

inline SolverState step(const SolverState& s, const SolverConfig& cfg) {
  return step(s, cfg, nullptr, cfl_dt(s, cfg));
}

// ---------------------------------------------------------------------------
// Initial states
// ---------------------------------------------------------------------------

// State from explicit initial fields; r (damped) from cfg.init.r0 unless
// provided.  v0 defaults to the zero gauge.
inline SolverState make_state(const SolverConfig& cfg, Field p0, Field q0,
                              Field v0 = {}, Field r0 = {}) {
  const size_t n = static_cast<size_t>(cfg.nx);
  if (p0.size() != n || q0.size() != n)
    throw std::invalid_argument("make_state: field length != nx");
  SolverState s;
  s.t = 0.0;
  s.p = std::move(p0);
  s.q = std::move(q0);
  s.v = v0.empty() ? Field(n, 0.0) : std::move(v0);
  if (s.v.size() != n) throw std::invalid_argument("make_state: bad v0 length");
  if (cfg.damped()) {
    if (!r0.empty()) {
      if (r0.size() != n) throw std::invalid_argument("make_state: bad r0 length");
      s.r = std::move(r0);
    } else if (cfg.init.r0 == "zero") {
      s.r.assign(n, 0.0);
    } else {
      // smooth alpha -> 0 limit: solve the undamped relation for p_tt
      detail::require_margin(s.p, cfg);
      s.r.resize(n);
      const double h2 = cfg.h() * cfg.h();
      const bool periodic = cfg.bc == Boundary::periodic;
      for (size_t i = 0; i < n; ++i) {
        size_t im = i > 0 ? i - 1 : (periodic ? n - 1 : 0);
        size_t ip = i + 1 < n ? i + 1 : (periodic ? 0 : n - 1);
        double lap = i == 0 || i == n - 1
                         ? (periodic ? (s.p[im] - 2 * s.p[i] + s.p[ip]) / h2 : 0.0)
                         : (s.p[im] - 2 * s.p[i] + s.p[ip]) / h2;
        s.r[i] = (2 * cfg.beta * s.q[i] * s.q[i] + lap) /
                 (1.0 - 2 * cfg.beta * s.p[i]);
      }
    }
  } else if (!r0.empty()) {
    throw std::invalid_argument("make_state: r0 given for an undamped run");
  }
  detail::require_margin(s.p, cfg);
  return s;
}

// State from the named profile in cfg.init.
inline SolverState initial_state(const SolverConfig& cfg) {
  cfg.validate();
  const int n = cfg.nx;
  Field p0(n, 0.0), q0(n, 0.0);
  if (cfg.init.name == "gaussian") {
    for (int i = 0; i < n; ++i) {
      double u = (cfg.node(i) - cfg.init.center) / cfg.init.width;
      p0[i] = cfg.init.amplitude * std::exp(-u * u);
    }
  } else if (cfg.init.name == "constant") {
    p0.assign(n, cfg.init.amplitude);
  }  // "zero": all fields zero
  return make_state(cfg, std::move(p0), std::move(q0));
}

// Advance to exactly t_target (the final step is clipped).
inline SolverState advance_to(SolverState s, const SolverConfig& cfg,
                              double t_target,
                              const BoundaryData* bd = nullptr) {
  const double tol = 1e-12 * std::max(1.0, std::abs(t_target));
  while (s.t < t_target - tol) {
    double dt = std::min(cfl_dt(s, cfg), t_target - s.t);
    s = step(s, cfg, bd, dt);
  }
  return s;
}

}  // namespace wvlab::pde
