// SPDX-License-Identifier: MIT
//
// Conserved-integral monitors: quadrature of the cataloged densities over
// solver states with known values, the degenerate-denominator guard, the
// functional-parameter integrals against pointwise identities, rescaling
// relations between the printed dilation integrands and the cataloged
// densities, and drift tracking.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <set>

#include "wvlab/observables.hpp"

using namespace wvlab;
using Catch::Approx;
using Catch::Matchers::WithinAbs;
namespace obs = wvlab::observables;

namespace {

pde::SolverConfig pulse_config() {
  pde::SolverConfig cfg;
  cfg.beta = 0.1;
  cfg.x0 = -10.0;
  cfg.x1 = 10.0;
  cfg.nx = 128;
  cfg.cfl = 0.5;
  cfg.t_end = 1.0;
  cfg.init.width = 1.5;
  return cfg;
}

// central-difference x-derivative on the periodic grid, for test-side sums
pde::Field central_dx(const pde::Field& f, const pde::SolverConfig& cfg) {
  const int n = cfg.nx;
  const double h = cfg.h();
  pde::Field out(n);
  for (int i = 0; i < n; ++i) {
    int im = i == 0 ? n - 1 : i - 1;
    int ip = i == n - 1 ? 0 : i + 1;
    out[i] = (f[ip] - f[im]) / (2 * h);
  }
  return out;
}

double periodic_sum(const pde::Field& f, const pde::SolverConfig& cfg) {
  double acc = 0.0;
  for (double x : f) acc += x;
  return acc * cfg.h();
}

}  // namespace

TEST_CASE("monitor table is well-formed") {
  std::set<std::string> names;
  for (const obs::MonitorSpec& m : obs::monitor_table()) {
    CHECK(names.insert(m.name).second);
    CHECK(&obs::monitor_spec(m.id) == &m);
  }
  CHECK(names.size() == 13);

  pde::SolverConfig undamped = pulse_config();
  pde::SolverConfig damped = pulse_config();
  damped.alpha = 0.5;
  CHECK(obs::active_monitors(undamped).size() == 12);  // all but J_f
  CHECK(obs::active_monitors(damped).size() == 4);     // C1..C4

  // damped forms exist exactly for C1..C4
  for (const obs::MonitorSpec& m : obs::monitor_table()) {
    if (m.id == obs::MonitorId::J_f) continue;
    CHECK_NOTHROW(obs::detail::integrand(m.id, false));
    if (m.undamped_only)
      CHECK_THROWS_AS(obs::detail::integrand(m.id, true),
                      std::invalid_argument);
    else
      CHECK_NOTHROW(obs::detail::integrand(m.id, true));
  }
}

TEST_CASE("quadrature of uniform states matches closed forms") {
  pde::SolverConfig cfg = pulse_config();
  cfg.beta = 1.0;
  cfg.x0 = 0.0;
  cfg.x1 = 1.0;
  cfg.nx = 16;

  SECTION("zero state: E carries exactly the vacuum background 1/12") {
    pde::SolverState s =
        pde::make_state(cfg, pde::Field(16, 0.0), pde::Field(16, 0.0));
    CHECK(obs::evaluate(obs::MonitorId::E, s, cfg) == Approx(1.0 / 12.0));
    CHECK(obs::evaluate(obs::MonitorId::C1, s, cfg) == 0.0);
    CHECK(obs::evaluate(obs::MonitorId::M, s, cfg) == 0.0);
    CHECK(obs::evaluate(obs::MonitorId::Tv3, s, cfg) == 0.0);
    CHECK(obs::evaluate(obs::MonitorId::Tv4, s, cfg) == 0.0);
    CHECK(obs::evaluate(obs::MonitorId::K, s, cfg) == 0.0);
    CHECK(obs::evaluate(obs::MonitorId::H, s, cfg) == 0.0);
  }

  SECTION("uniform (p, q): the linear-momentum densities") {
    const double c = 0.05, d = 0.25, tau = 1.5;
    pde::SolverState s =
        pde::make_state(cfg, pde::Field(16, c), pde::Field(16, d));
    s.t = tau;
    const double B = 1.0 - 2.0 * cfg.beta * c;
    // C1: (1 - 2 beta p) p_t integrated over unit length
    CHECK(obs::evaluate(obs::MonitorId::C1, s, cfg) == Approx(B * d));
    // C2 weights the same density by x
    double xsum = 0.0;
    for (int i = 0; i < 16; ++i) xsum += cfg.node(i);
    xsum *= cfg.h();
    CHECK(obs::evaluate(obs::MonitorId::C2, s, cfg) == Approx(B * d * xsum));
    // C3 = t * (C1 density) - (1 - beta p) p at explicit time t
    const double want3 = tau * B * d - (1.0 - cfg.beta * c) * c;
    CHECK(obs::evaluate(obs::MonitorId::C3, s, cfg) == Approx(want3));
  }

  SECTION("uniform damped state folds the damping term into C1") {
    pde::SolverConfig dcfg = cfg;
    dcfg.alpha = 0.3;
    const double c = 0.1, d = -0.2, e = 0.4;
    pde::SolverState s = pde::make_state(dcfg, pde::Field(16, c),
                                         pde::Field(16, d), {},
                                         pde::Field(16, e));
    const double B = 1.0 - 2.0 * dcfg.beta * c;
    CHECK(obs::evaluate(obs::MonitorId::C1, s, dcfg) ==
          Approx(B * d - dcfg.alpha * e));
  }
}

TEST_CASE("monitor guards reject unsupported combinations") {
  pde::SolverConfig damped = pulse_config();
  damped.alpha = 0.5;
  pde::SolverState s = pde::make_state(damped, pde::Field(128, 0.0),
                                       pde::Field(128, 0.0));
  CHECK_THROWS_AS(obs::evaluate(obs::MonitorId::E, s, damped),
                  std::invalid_argument);
  CHECK_THROWS_AS(obs::evaluate(obs::MonitorId::C5, s, damped),
                  std::invalid_argument);
  CHECK_THROWS_AS(obs::evaluate(obs::MonitorId::J_f, s, damped),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      obs::evaluate_J(sym::jet(Dep::v, 0, 1), s, damped),
      std::invalid_argument);

  pde::SolverConfig cfg = pulse_config();
  pde::SolverState u = pde::make_state(cfg, pde::Field(128, 0.0),
                                       pde::Field(128, 0.0));
  // the functional parameter must solve the characteristic equation and
  // depend on first-order potential jets only
  CHECK_THROWS_AS(obs::evaluate_J(sym::jet(Dep::p, 0, 0), u, cfg),
                  std::invalid_argument);
  JetExpr vt = sym::jet(Dep::v, 1, 0);
  CHECK_THROWS_AS(obs::evaluate_J(vt * vt, u, cfg), std::invalid_argument);
}

TEST_CASE("grid binding evaluates jets, symbols, and reductions") {
  pde::SolverConfig cfg = pulse_config();
  cfg.beta = 0.25;
  cfg.nx = 32;
  pde::SolverState s = pde::make_state(cfg, pde::Field(32, 0.0),
                                       pde::Field(32, 2.0));

  SECTION("p_tt reduces through the evolution equation on undamped runs") {
    pde::Field col = obs::detail::sample_density(sym::jet(Dep::p, 2, 0), s,
                                                 cfg, obs::kDefaultGuardEps);
    // p uniform zero, q = 2: p_tt = 2 beta q^2 / 1 = 2
    for (double x : col) CHECK(x == Approx(2.0));
  }
  SECTION("densities outside the state raise invalid_argument") {
    auto sample = [&](const JetExpr& e) {
      return obs::detail::sample_density(e, s, cfg, obs::kDefaultGuardEps);
    };
    CHECK_THROWS_AS(sample(sym::zeta()), std::invalid_argument);
    CHECK_THROWS_AS(sample(sym::z()), std::invalid_argument);
    CHECK_THROWS_AS(sample(sym::jet(Dep::f, 0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(sample(sym::jet(Dep::vstar, 0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(sample(sym::jet(Dep::p, 3, 0)), std::invalid_argument);
  }
  SECTION("denominator cancellation raises DegenerateDenominator") {
    JetExpr inv_p = sym::num(1) / sym::jet(Dep::p, 0, 0);
    CHECK_THROWS_AS(
        obs::detail::sample_density(inv_p, s, cfg, obs::kDefaultGuardEps),
        obs::DegenerateDenominator);
  }
}

TEST_CASE("rational monitors degenerate on at-rest data and survive a moving background") {
  pde::SolverConfig cfg = pulse_config();
  pde::SolverState rest = pde::initial_state(cfg);  // gaussian, q = 0
  CHECK_THROWS_AS(obs::evaluate(obs::MonitorId::C5, rest, cfg),
                  obs::DegenerateDenominator);
  CHECK_THROWS_AS(obs::evaluate(obs::MonitorId::C6, rest, cfg),
                  obs::DegenerateDenominator);

  // a uniformly moving background keeps the denominator margin: drift of the
  // rational integrals decreases under grid refinement
  auto drift_at = [](int nx) {
    pde::SolverConfig c;
    c.beta = 0.1;
    c.x0 = -10.0;
    c.x1 = 10.0;
    c.nx = nx;
    c.cfl = 0.4;
    c.t_end = 0.5;
    pde::Field p0(nx), q0(nx, 1.0);
    for (int i = 0; i < nx; ++i) {
      double u = c.node(i) / 1.5;
      p0[i] = 0.05 * std::exp(-u * u);
    }
    pde::SolverState s = pde::make_state(c, p0, q0);
    obs::MonitorSeries s5{obs::MonitorId::C5, "C5", {}, 0.0};
    obs::MonitorSeries s6{obs::MonitorId::C6, "C6", {}, 0.0};
    s5.record(s.t, obs::evaluate(obs::MonitorId::C5, s, c));
    s6.record(s.t, obs::evaluate(obs::MonitorId::C6, s, c));
    while (s.t < c.t_end - 1e-12) {
      double dt = std::min(pde::cfl_dt(s, c), c.t_end - s.t);
      s = pde::step(s, c, nullptr, dt);
      s5.record(s.t, obs::evaluate(obs::MonitorId::C5, s, c));
      s6.record(s.t, obs::evaluate(obs::MonitorId::C6, s, c));
    }
    return std::pair<double, double>{obs::drift_report(s5).max_abs,
                                     obs::drift_report(s6).max_abs};
  };
  auto [c5_coarse, c6_coarse] = drift_at(96);
  auto [c5_fine, c6_fine] = drift_at(192);
  std::printf("    C5 drift %.3e -> %.3e   C6 drift %.3e -> %.3e\n", c5_coarse,
              c5_fine, c6_coarse, c6_fine);
  CHECK(c5_fine <= std::max(0.6 * c5_coarse, 1e-14));
  CHECK(c6_fine <= std::max(0.6 * c6_coarse, 1e-14));
}

TEST_CASE("functional integrals reproduce their pointwise identities") {
  // evolve a pulse so the potential is nontrivial
  pde::SolverConfig cfg = pulse_config();
  pde::SolverState s = pde::advance_to(pde::initial_state(cfg), cfg, 0.5);
  const double L = cfg.x1 - cfg.x0;
  const double beta = cfg.beta;

  JetExpr vt = sym::jet(Dep::v, 1, 0);
  JetExpr vx = sym::jet(Dep::v, 0, 1);

  const double E = obs::evaluate(obs::MonitorId::E, s, cfg);
  const double M = obs::evaluate(obs::MonitorId::M, s, cfg);

  SECTION("f = v_x gives -beta * momentum (the telescoping x-flux vanishes)") {
    double J = obs::evaluate_J(vx, s, cfg);
    CHECK_THAT(J + beta * M, WithinAbs(0.0, 1e-12 * std::max(1.0, std::abs(J))));
  }
  SECTION("f = v_t - 1/(2 beta) gives the energy minus its quadratic part") {
    double J = obs::evaluate_J(vt - sym::frac(1, 2) / sym::beta(), s, cfg);
    pde::Field vxg = central_dx(s.v, cfg);
    double half_vx2 = 0.0;
    for (double g : vxg) half_vx2 += 0.5 * g * g;
    half_vx2 *= cfg.h();
    double want = E - half_vx2 - L / (12.0 * beta * beta);
    CHECK_THAT(J, WithinAbs(want, 1e-12 * std::max(1.0, std::abs(J))));
  }
  SECTION("the zero parameter integrates to zero") {
    CHECK(obs::evaluate_J(JetExpr(), s, cfg) == 0.0);
  }
  SECTION("a genuinely mixed admissible parameter stays finite") {
    // f = v_t^2 + v_x^2 - (2 beta/3) v_t^3 solves the characteristic equation
    JetExpr f = vt * vt + vx * vx -
                sym::frac(2, 3) * sym::beta() * vt * vt * vt;
    CHECK(std::isfinite(obs::evaluate_J(f, s, cfg)));
  }
}

TEST_CASE("printed dilation integrands against the cataloged densities") {
  // The dilation-type energy integrand is exactly -1/5 of the cataloged
  // density, as symbolic expressions; the momentum pair differs by a genuine
  // non-proportional term, so only its empirical ratio is reported.
  JetExpr t3, t4;
  for (const catalog::ConservedCurrent& c :
       catalog::get_currents(EquationName::potential_undamped)) {
    if (c.id == "V.c3") t3 = c.T;
    if (c.id == "V.c4") t4 = c.T;
  }
  REQUIRE(!t3.is_zero());
  REQUIRE(!t4.is_zero());
  CHECK(equivalent(sym::num(5) * catalog::integrand_K() + t3, JetExpr()));
  CHECK(!equivalent(sym::num(5) * catalog::integrand_H() + sym::num(3) * t4,
                    JetExpr()));

  // numerically: K/Tv3 = -1/5 to rounding on an evolved state.  The momentum
  // pair needs an off-center pulse: on mirror-symmetric data both sides of
  // the ratio vanish by parity.
  pde::SolverConfig cfg = pulse_config();
  cfg.init.center = 2.5;
  pde::SolverState s = pde::advance_to(pde::initial_state(cfg), cfg, 0.5);
  double K = obs::evaluate(obs::MonitorId::K, s, cfg);
  double Tv3 = obs::evaluate(obs::MonitorId::Tv3, s, cfg);
  double H = obs::evaluate(obs::MonitorId::H, s, cfg);
  double Tv4 = obs::evaluate(obs::MonitorId::Tv4, s, cfg);
  REQUIRE(Tv3 != 0.0);
  REQUIRE(Tv4 != 0.0);
  CHECK(K / Tv3 == Approx(-0.2).margin(1e-10));
  std::printf("    measured ratios: K/Tv3 = %.12f   H/Tv4 = %.6f\n", K / Tv3,
              H / Tv4);
  CHECK(std::isfinite(H));
}

TEST_CASE("a short pulse run keeps the conserved integrals flat") {
  pde::SolverConfig cfg = pulse_config();
  cfg.nx = 256;
  cfg.cfl = 0.25;
  cfg.t_end = 0.3;
  pde::SolverState s = pde::initial_state(cfg);

  using MI = obs::MonitorId;
  const MI ids[] = {MI::C1, MI::C2, MI::C3, MI::C4,
                    MI::E,  MI::M,  MI::Tv3, MI::Tv4};
  std::vector<obs::MonitorSeries> series;
  for (MI id : ids)
    series.push_back({id, obs::monitor_spec(id).name, {}, 0.0});
  auto sample = [&] {
    for (auto& sr : series) sr.record(s.t, obs::evaluate(sr.id, s, cfg));
  };
  sample();
  while (s.t < cfg.t_end - 1e-12) {
    double dt = std::min(pde::cfl_dt(s, cfg), cfg.t_end - s.t);
    s = pde::step(s, cfg, nullptr, dt);
    sample();
  }

  for (auto& sr : series) {
    obs::DriftReport d = obs::drift_report(sr);
    INFO(sr.name);
    std::printf("    %-4s reference %+.6e   relative drift %.3e\n",
                sr.name.c_str(), sr.reference, d.relative);
    // the time-integrator floor for the exactly telescoping densities; the
    // potential-level quadratures carry an O(h^2) truncation term whose
    // constant is largest for the x- and t-weighted dilation densities
    bool telescoping = sr.id == MI::C1 || sr.id == MI::C2 ||
                       sr.id == MI::C3 || sr.id == MI::C4;
    CHECK(d.relative <= (telescoping ? 1e-7 : 1e-2));
  }
}

TEST_CASE("series and drift bookkeeping") {
  obs::MonitorSeries sr{obs::MonitorId::E, "E", {}, 0.0};
  CHECK_THROWS_AS(obs::drift_report(sr), std::invalid_argument);
  sr.record(0.0, 2.5);
  CHECK(sr.reference == 2.5);
  CHECK_THROWS_AS(obs::drift_report(sr), std::invalid_argument);
  sr.record(0.1, 2.5);
  obs::DriftReport flat = obs::drift_report(sr);
  CHECK(flat.max_abs == 0.0);
  CHECK(flat.relative == 0.0);
  sr.record(0.2, 2.75);
  sr.record(0.3, 2.5);
  obs::DriftReport spike = obs::drift_report(sr);
  CHECK(spike.max_abs == Approx(0.25));
  CHECK(spike.relative == Approx(0.1));
  CHECK_THROWS_AS(sr.record(0.3, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(sr.record(0.2, 2.5), std::invalid_argument);

  // zero-reference series use the unit floor, keeping 'relative' meaningful
  obs::MonitorSeries zr{obs::MonitorId::M, "M", {}, 0.0};
  zr.record(0.0, 0.0);
  zr.record(1.0, 1e-3);
  CHECK(obs::drift_report(zr).relative == Approx(1e-3));
}
