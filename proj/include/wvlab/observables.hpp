// SPDX-License-Identifier: MIT
#pragma once

// observables.hpp -- grid quadrature of the conserved integrals over a solver
// state, and drift tracking across a run.
//
// Each monitor is the composite-trapezoid quadrature of one cataloged density:
//
//     C1..C4   pressure-level densities (damping terms included when alpha>0)
//     C5, C6   the rational pressure-level densities (undamped only)
//     E, M     energy and momentum of the potential formulation
//     K, H     the dilation-type energy/momentum integrands, vacuum-subtracted
//     Tv3, Tv4 the potential-level dilation densities (the conserved forms
//              of which K and H are rescalings), vacuum-subtracted
//     J_f      the generalized energy-momentum functional (needs f; use
//              evaluate_J)
//
// The symbolic densities come straight from the catalog; evaluation binds
// each jet to a grid column (q for p_t, r or the in-equation reduction for
// p_tt, central differences for x-derivatives) and evaluates the exact
// rational form in floating point node by node.  Denominator factors are
// guarded: a near-cancellation at any node raises DegenerateDenominator
// rather than returning a polluted quadrature.

#include "wvlab/catalog.hpp"
#include "wvlab/pde.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wvlab::observables {

// A monitored density's denominator lost all significant digits at a node
// (e.g. p_x^2 - (1 - 2 beta p) p_t^2 crossing zero for C5/C6).
struct DegenerateDenominator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class MonitorId { C1, C2, C3, C4, C5, C6, E, M, K, H, J_f, Tv3, Tv4 };

struct MonitorSpec {
  MonitorId id;
  const char* name;
  bool undamped_only;
  bool needs_v;
};

inline const std::vector<MonitorSpec>& monitor_table() {
  static const std::vector<MonitorSpec> table = {
      {MonitorId::C1, "C1", false, false}, {MonitorId::C2, "C2", false, false},
      {MonitorId::C3, "C3", false, false}, {MonitorId::C4, "C4", false, false},
      {MonitorId::C5, "C5", true, false},  {MonitorId::C6, "C6", true, false},
      {MonitorId::E, "E", true, true},     {MonitorId::M, "M", true, true},
      {MonitorId::K, "K", true, true},     {MonitorId::H, "H", true, true},
      {MonitorId::J_f, "J_f", true, true}, {MonitorId::Tv3, "Tv3", true, true},
      {MonitorId::Tv4, "Tv4", true, true}};
  return table;
}

inline const MonitorSpec& monitor_spec(MonitorId id) {
  for (const MonitorSpec& m : monitor_table())
    if (m.id == id) return m;
  throw std::invalid_argument("monitor_spec: unknown monitor");
}

// Monitors recorded by a simulation run, in CSV column order (J_f excluded:
// it needs a functional parameter).
inline std::vector<MonitorId> active_monitors(const pde::SolverConfig& cfg) {
  std::vector<MonitorId> out;
  for (const MonitorSpec& m : monitor_table()) {
    if (m.id == MonitorId::J_f) continue;
    if (m.undamped_only && cfg.damped()) continue;
    out.push_back(m.id);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic densities
// ---------------------------------------------------------------------------

namespace detail {

inline JetExpr current_density(EquationName eq, const std::string& id) {
  for (const catalog::ConservedCurrent& c : catalog::get_currents(eq))
    if (c.id == id) return c.T;
  throw std::invalid_argument("observables: no cataloged density " + id);
}

// Subtract the zero-field background of a potential-level density.  The
// dilation-type densities do not vanish on the vacuum v = 0: their background
// is a function of t and x alone (e.g. -7t/(24 beta^2) for the dilation
// energy density), which on a periodic domain integrates to a resolution-
// independent linear-in-t drift -- and on the line makes the raw integral
// diverge.  The monitored quantity is the field part, which the divergence
// identity conserves whenever the fields are at vacuum near the seam.
inline JetExpr subtract_vacuum(const JetExpr& e) {
  std::map<int, JetExpr> to_zero;
  for (const JetVar& w : jet_support(e, Dep::v))
    to_zero[indet_id(w)] = JetExpr();
  return e - e.substitute(to_zero);
}

// integrand for one monitor; damped selects the alpha-carrying form where one
// exists (C1..C4)
inline const JetExpr& integrand(MonitorId id, bool damped) {
  using EN = EquationName;
  struct Table {
    std::map<int, JetExpr> damped_form, undamped_form;
  };
  static const Table table = [] {
    Table t;
    auto put = [&](MonitorId m, JetExpr undamped, JetExpr damped = JetExpr()) {
      t.undamped_form[static_cast<int>(m)] = std::move(undamped);
      if (!damped.is_zero()) t.damped_form[static_cast<int>(m)] = std::move(damped);
    };
    const char* wc[] = {"W.c1", "W.c2", "W.c3", "W.c4"};
    MonitorId cm[] = {MonitorId::C1, MonitorId::C2, MonitorId::C3,
                      MonitorId::C4};
    for (int i = 0; i < 4; ++i)
      put(cm[i], current_density(EN::westervelt_undamped, wc[i]),
          current_density(EN::westervelt_damped, wc[i]));
    put(MonitorId::C5, current_density(EN::westervelt_undamped, "W.c5"));
    put(MonitorId::C6, current_density(EN::westervelt_undamped, "W.c6"));
    put(MonitorId::E, catalog::integrand_E());
    put(MonitorId::M, catalog::integrand_M());
    put(MonitorId::K, subtract_vacuum(catalog::integrand_K()));
    put(MonitorId::H, subtract_vacuum(catalog::integrand_H()));
    put(MonitorId::Tv3,
        subtract_vacuum(current_density(EN::potential_undamped, "V.c3")));
    put(MonitorId::Tv4,
        subtract_vacuum(current_density(EN::potential_undamped, "V.c4")));
    return t;
  }();
  const auto& forms = damped ? table.damped_form : table.undamped_form;
  auto it = forms.find(static_cast<int>(id));
  if (it == forms.end())
    throw std::invalid_argument("observables: no density for this monitor");
  return it->second;
}

// ---------------------------------------------------------------------------
// Grid binding: jet -> column of node values
// ---------------------------------------------------------------------------

struct GridColumns {
  const pde::SolverState& s;
  const pde::SolverConfig& cfg;
  std::map<int, pde::Field> cache;

  pde::Field d_dx(const pde::Field& f) const {
    const int n = cfg.nx;
    const double h = cfg.h();
    pde::Field out(n);
    if (cfg.bc == pde::Boundary::periodic) {
      for (int i = 0; i < n; ++i) {
        int im = i == 0 ? n - 1 : i - 1;
        int ip = i == n - 1 ? 0 : i + 1;
        out[i] = (f[ip] - f[im]) / (2 * h);
      }
    } else {
      for (int i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2 * h);
      out[0] = (-3 * f[0] + 4 * f[1] - f[2]) / (2 * h);
      out[n - 1] = (3 * f[n - 1] - 4 * f[n - 2] + f[n - 3]) / (2 * h);
    }
    return out;
  }

  pde::Field laplacian(const pde::Field& f) const {
    const int n = cfg.nx;
    const double h2 = cfg.h() * cfg.h();
    pde::Field out(n);
    if (cfg.bc == pde::Boundary::periodic) {
      for (int i = 0; i < n; ++i) {
        int im = i == 0 ? n - 1 : i - 1;
        int ip = i == n - 1 ? 0 : i + 1;
        out[i] = (f[im] - 2 * f[i] + f[ip]) / h2;
      }
    } else {
      for (int i = 1; i + 1 < n; ++i)
        out[i] = (f[i - 1] - 2 * f[i] + f[i + 1]) / h2;
      out[0] = (f[0] - 2 * f[1] + f[2]) / h2;  // one-sided at the endpoints
      out[n - 1] = (f[n - 1] - 2 * f[n - 2] + f[n - 3]) / h2;
    }
    return out;
  }

  // column of values for the pressure jet p[a, 0]
  const pde::Field& p_time(int a) {
    int key = -100 - a;  // private cache keys for the base time columns
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    pde::Field col;
    if (a == 0) col = s.p;
    else if (a == 1) col = s.q;
    else if (a == 2) {
      if (cfg.damped()) {
        col = s.r;
      } else {
        // in-equation reduction: p_tt = (2 beta q^2 + Lap p)/(1 - 2 beta p)
        pde::Field lap = laplacian(s.p);
        col.resize(cfg.nx);
        for (int i = 0; i < cfg.nx; ++i)
          col[i] = (2 * cfg.beta * s.q[i] * s.q[i] + lap[i]) /
                   (1.0 - 2 * cfg.beta * s.p[i]);
      }
    } else {
      throw std::invalid_argument(
          "observables: density needs a time derivative beyond the state");
    }
    return cache.emplace(key, std::move(col)).first->second;
  }

  const pde::Field& column(int id) {
    auto it = cache.find(id);
    if (it != cache.end()) return it->second;
    pde::Field col(cfg.nx);
    if (id == kIdAlpha) col.assign(cfg.nx, cfg.alpha);
    else if (id == kIdBeta) col.assign(cfg.nx, cfg.beta);
    else if (id == kIdT) col.assign(cfg.nx, s.t);
    else if (id == kIdX) {
      for (int i = 0; i < cfg.nx; ++i) col[i] = cfg.node(i);
    } else if (id >= kNumBase) {
      JetVar w = jetvar_of_id(id);
      if (w.dep == Dep::p) {
        col = p_time(w.t_order);
        for (int b = 0; b < w.x_order; ++b) col = d_dx(col);
      } else if (w.dep == Dep::v) {
        if (w.t_order >= 1) {
          col = p_time(w.t_order - 1);  // v_t = p
          for (int b = 0; b < w.x_order; ++b) col = d_dx(col);
        } else {
          col = s.v;
          for (int b = 0; b < w.x_order; ++b) col = d_dx(col);
        }
      } else {
        throw std::invalid_argument(
            "observables: density references a dependent outside the run");
      }
    } else {
      throw std::invalid_argument(
          "observables: density references a symbol with no grid value");
    }
    return cache.emplace(id, std::move(col)).first->second;
  }
};

inline double poly_at(const Poly& poly, GridColumns& g, int i) {
  double acc = 0.0;
  for (const Monomial& mo : poly.terms()) {
    double term = mo.c.get_d();
    for (const auto& [id, e] : mo.pw) {
      double base = g.column(id)[i];
      for (int k = 0; k < e; ++k) term *= base;
    }
    acc += term;
  }
  return acc;
}

// magnitude scale of the polynomial's value (sum of |monomial|): measures how
// much cancellation produced the actual value
inline double poly_scale_at(const Poly& poly, GridColumns& g, int i) {
  double acc = 0.0;
  for (const Monomial& mo : poly.terms()) {
    double term = std::abs(mo.c.get_d());
    for (const auto& [id, e] : mo.pw) {
      double base = std::abs(g.column(id)[i]);
      for (int k = 0; k < e; ++k) term *= base;
    }
    acc += term;
  }
  return acc;
}

// per-node values of a rational density over the grid
inline pde::Field sample_density(const JetExpr& e, const pde::SolverState& s,
                                 const pde::SolverConfig& cfg,
                                 double guard_eps) {
  GridColumns g{s, cfg, {}};
  // touch every column first so resolution errors surface before arithmetic
  for (int id : e.support())
    if (id != kIdZeta && id != kIdZ) g.column(id);
    else throw std::invalid_argument("observables: density references zeta/z");
  pde::Field out(cfg.nx);
  for (int i = 0; i < cfg.nx; ++i) {
    double num = poly_at(e.numerator(), g, i);
    double den = 1.0;
    for (const auto& [factor, mult] : e.denominator_factors()) {
      double f = poly_at(factor, g, i);
      double scale = std::max(1.0, poly_scale_at(factor, g, i));
      if (std::abs(f) < guard_eps * scale)
        throw DegenerateDenominator(
            "denominator factor lost significance at node " +
            std::to_string(i) + " (t = " + std::to_string(s.t) + ")");
      for (int k = 0; k < mult; ++k) den *= f;
    }
    out[i] = num / den;
  }
  return out;
}

inline double trapezoid(const pde::Field& f, const pde::SolverConfig& cfg) {
  const double h = cfg.h();
  double acc = 0.0;
  if (cfg.bc == pde::Boundary::periodic) {
    for (double x : f) acc += x;
    return acc * h;
  }
  for (size_t i = 1; i + 1 < f.size(); ++i) acc += f[i];
  return (acc + 0.5 * (f.front() + f.back())) * h;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

inline constexpr double kDefaultGuardEps = 1e-12;

// Composite-trapezoid value of one monitor at a state snapshot.
inline double evaluate(MonitorId id, const pde::SolverState& s,
                       const pde::SolverConfig& cfg,
                       double guard_eps = kDefaultGuardEps) {
  const MonitorSpec& spec = monitor_spec(id);
  if (id == MonitorId::J_f)
    throw std::invalid_argument(
        "evaluate: J_f needs a functional parameter; call evaluate_J");
  if (spec.undamped_only && cfg.damped())
    throw std::invalid_argument(std::string("evaluate: monitor ") + spec.name +
                                " requires an undamped run");
  const JetExpr& density = detail::integrand(id, cfg.damped());
  return detail::trapezoid(detail::sample_density(density, s, cfg, guard_eps),
                           cfg);
}

// Generalized energy-momentum functional: quadrature of the closed-form inner
// antiderivative of (1 - 2 beta v_t) f(v_t, v_x).  The parameter is validated
// against the linear characteristic equation by the catalog construction.
inline double evaluate_J(const JetExpr& f, const pde::SolverState& s,
                         const pde::SolverConfig& cfg,
                         double guard_eps = kDefaultGuardEps) {
  if (cfg.damped())
    throw std::invalid_argument("evaluate_J: requires an undamped run");
  catalog::instantiate_f_current(f);  // validation only
  JetExpr density = catalog::integrand_J(f);
  return detail::trapezoid(detail::sample_density(density, s, cfg, guard_eps),
                           cfg);
}

// ---------------------------------------------------------------------------
// Series and drift
// ---------------------------------------------------------------------------

struct MonitorSeries {
  MonitorId id;
  std::string name;
  std::vector<std::pair<double, double>> samples;  // (t, value), t increasing
  double reference = 0.0;  // value at the first sample

  void record(double t, double value) {
    if (!samples.empty() && !(t > samples.back().first))
      throw std::invalid_argument("MonitorSeries: samples must increase in t");
    if (samples.empty()) reference = value;
    samples.emplace_back(t, value);
  }
};

struct DriftReport {
  double max_abs;   // max |value - reference|
  double relative;  // max_abs / max(|reference|, 1): the unit floor keeps
                    // zero-reference conserved integrals comparable
};

inline DriftReport drift_report(const MonitorSeries& series) {
  if (series.samples.size() < 2)
    throw std::invalid_argument("drift_report: need at least 2 samples");
  double max_abs = 0.0;
  for (const auto& [t, value] : series.samples)
    max_abs = std::max(max_abs, std::abs(value - series.reference));
  return DriftReport{max_abs,
                     max_abs / std::max(std::abs(series.reference), 1.0)};
}

}  // namespace wvlab::observables
