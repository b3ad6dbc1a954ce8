// SPDX-License-Identifier: MIT
#pragma once

// mms.hpp -- grid-convergence measurement of the method-of-lines solver
// against exact solutions.  Each run integrates the undamped equation on a
// ladder of closed (Dirichlet) grids whose spacing halves between levels,
// with initial and boundary data sampled from the exact solution, and
// records the max-norm pressure error at the final time.  The observed
// order between consecutive levels is log2(e_i / e_{i+1}); a second-order
// semi-discretization paired with a spatially varying exact solution should
// sit near 2, while spatially exact data (affine or constant in x) leaves
// only time-integration and rounding error.
//
// Lives apart from the solver core so that pde.hpp stays independent of the
// exact-solution families.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wvlab/exact.hpp"
#include "wvlab/pde.hpp"

namespace wvlab::mms {

struct MmsSetup {
  double beta = 1.0;   // solver nonlinearity; must match the family's
  double x0 = -1.0;
  double x1 = 1.0;
  double t0 = 0.0;     // start time (exact data sampled here)
  double t_end = 0.5;  // comparison time
  int nx0 = 33;        // coarsest grid; refined as nx -> 2(nx - 1) + 1
  int refinements = 3; // number of grids in the ladder
  double cfl = 0.4;
  double delta = 1e-9; // hyperbolicity guard passed to the solver
};

struct MmsRow {
  int nx = 0;
  double h = 0.0;
  double max_error = 0.0;
};

namespace detail {

// Fourth-order centered stencil for p_t of an exact solution, used to seed q
// and to inject boundary q-data; its error (~1e-12 for O(1) derivatives) is
// far below the spatial truncation this harness measures.
inline double time_derivative(const exact::ExactSolution& sol, double t,
                              double x) {
  const double h = 1e-3 * std::max(1.0, std::abs(t));
  return (8.0 * (sol.eval_p(t + h, x) - sol.eval_p(t - h, x)) -
          (sol.eval_p(t + 2.0 * h, x) - sol.eval_p(t - 2.0 * h, x))) /
         (12.0 * h);
}

}  // namespace detail

// Run the ladder.  Throws exact::DomainViolation if any grid node leaves the
// family's domain at the start or comparison time, and propagates solver
// failures (DegenerateWaveSpeed for non-hyperbolic families) unchanged.
inline std::vector<MmsRow> mms_convergence(const exact::ExactSolution& sol,
                                           const MmsSetup& setup) {
  if (!(setup.x1 > setup.x0))
    throw std::invalid_argument("mms_convergence: need x1 > x0");
  if (!(setup.t_end > setup.t0))
    throw std::invalid_argument("mms_convergence: need t_end > t0");
  if (setup.nx0 < 17)
    throw std::invalid_argument("mms_convergence: coarsest grid too small");
  if (setup.refinements < 1)
    throw std::invalid_argument("mms_convergence: need at least one grid");

  std::vector<MmsRow> rows;
  int nx = setup.nx0;
  for (int level = 0; level < setup.refinements; ++level) {
    pde::SolverConfig cfg;
    cfg.alpha = 0.0;
    cfg.beta = setup.beta;
    cfg.x0 = setup.x0;
    cfg.x1 = setup.x1;
    cfg.nx = nx;
    cfg.bc = pde::Boundary::dirichlet;
    cfg.cfl = setup.cfl;
    cfg.t_end = setup.t_end - setup.t0;
    cfg.delta = setup.delta;
    cfg.validate();

    for (int i = 0; i < nx; ++i) {
      double xi = cfg.node(i);
      if (!sol.in_domain(setup.t0, xi) || !sol.in_domain(setup.t_end, xi))
        throw exact::DomainViolation(
            "mms_convergence: exact solution leaves its domain on [" +
            std::to_string(setup.t0) + ", " + std::to_string(setup.t_end) +
            "] at x = " + std::to_string(xi));
    }

    pde::Field p0(nx), q0(nx), v0(nx);
    for (int i = 0; i < nx; ++i) {
      double xi = cfg.node(i);
      p0[i] = sol.eval_p(setup.t0, xi);
      q0[i] = detail::time_derivative(sol, setup.t0, xi);
      v0[i] = sol.eval_v(setup.t0, xi);
    }
    pde::SolverState state = pde::make_state(cfg, p0, q0, v0);
    state.t = setup.t0;

    pde::BoundaryData bd;
    bd.p = [&sol](double t, double x) { return sol.eval_p(t, x); };
    bd.q = [&sol](double t, double x) { return detail::time_derivative(sol, t, x); };
    bd.v = [&sol](double t, double x) { return sol.eval_v(t, x); };

    pde::SolverState end = pde::advance_to(state, cfg, setup.t_end, &bd);

    double err = 0.0;
    for (int i = 0; i < nx; ++i)
      err = std::max(err, std::abs(end.p[i] - sol.eval_p(setup.t_end, cfg.node(i))));
    rows.push_back({nx, cfg.h(), err});

    nx = 2 * (nx - 1) + 1;  // exact halving of h on the closed grid
  }
  return rows;
}

// log2(e_i / e_{i+1}) per consecutive pair; NaN where an error vanishes
// (data the stencils represent exactly).
inline std::vector<double> observed_orders(const std::vector<MmsRow>& rows) {
  std::vector<double> orders;
  for (size_t i = 0; i + 1 < rows.size(); ++i) {
    if (rows[i].max_error <= 0.0 || rows[i + 1].max_error <= 0.0)
      orders.push_back(std::numeric_limits<double>::quiet_NaN());
    else
      orders.push_back(std::log2(rows[i].max_error / rows[i + 1].max_error));
  }
  return orders;
}

// Family-appropriate defaults: intervals on which the family is defined and
// hyperbolic, and horizons safely inside its domain.
inline MmsSetup default_setup(const exact::ExactSolution& sol) {
  MmsSetup s;
  auto param = [&](const char* k, double fallback) {
    auto it = sol.params.find(k);
    return it == sol.params.end() ? fallback : it->second;
  };
  s.beta = param("beta", 0.1);
  switch (sol.family) {
    case exact::Family::deg2:
      s.x0 = -1.0; s.x1 = 1.0; s.t0 = 0.0; s.t_end = 0.5;
      break;
    case exact::Family::deg3: {
      double a1 = param("a1", 1.0);
      s.x0 = -1.0; s.x1 = 1.0; s.t0 = 0.0;
      double horizon = 3.0 * a1 / (4.0 * s.beta * s.beta);
      s.t_end = a1 > 0.0 ? 0.5 * horizon : 0.5;
      break;
    }
    case exact::Family::deg4_a2zero:
    case exact::Family::deg4_a1zero:
      s.x0 = -0.5; s.x1 = 0.5; s.t0 = 0.0; s.t_end = 0.25;
      break;
    case exact::Family::similarity:
      s.x0 = 2.0; s.x1 = 6.0; s.t0 = 1.0; s.t_end = 1.5;
      break;
  }
  return s;
}

}  // namespace wvlab::mms
