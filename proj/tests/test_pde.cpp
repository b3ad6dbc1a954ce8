// SPDX-License-Identifier: MIT
//
// Method-of-lines solver: configuration parsing, the semi-discrete right-hand
// side on states with known derivatives, CFL step selection, Runge-Kutta
// accuracy against a closed-form spatially constant solution, exactness on
// affine steady data, time-reversal, gauge invariance, and the hyperbolicity
// watchdog.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <limits>

#include "wvlab/pde.hpp"

using namespace wvlab;
using Catch::Approx;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Baseline undamped periodic configuration; tests override fields as needed.
pde::SolverConfig base_config() {
  pde::SolverConfig cfg;
  cfg.alpha = 0.0;
  cfg.beta = 0.1;
  cfg.x0 = -10.0;
  cfg.x1 = 10.0;
  cfg.nx = 128;
  cfg.bc = pde::Boundary::periodic;
  cfg.cfl = 0.5;
  cfg.t_end = 1.0;
  cfg.init.width = 1.5;
  return cfg;
}

double sup_abs(const pde::Field& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

double sup_diff(const pde::Field& a, const pde::Field& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool bit_identical(const pde::Field& a, const pde::Field& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("configuration text parses into a validated config") {
  const std::string text =
      "# full configuration\n"
      "alpha = 0.25\n"
      "beta = 3.0   # trailing comment\n"
      "x0 = -2.0\n"
      "x1 = 2.0\n"
      "nx = 64\n"
      "bc = dirichlet\n"
      "cfl = 0.4\n"
      "t_end = 0.5\n"
      "delta = 1e-7\n"
      "init.name = gaussian\n"
      "init.amplitude = 0.01\n"
      "init.width = 0.3\n"
      "init.center = 0.5\n"
      "init.r0 = zero\n"
      "output.every = 10\n";
  pde::SolverConfig cfg = pde::parse_config(text);
  CHECK(cfg.alpha == 0.25);
  CHECK(cfg.beta == 3.0);
  CHECK(cfg.x0 == -2.0);
  CHECK(cfg.x1 == 2.0);
  CHECK(cfg.nx == 64);
  CHECK(cfg.bc == pde::Boundary::dirichlet);
  CHECK(cfg.cfl == 0.4);
  CHECK(cfg.t_end == 0.5);
  CHECK(cfg.delta == 1e-7);
  CHECK(cfg.init.name == "gaussian");
  CHECK(cfg.init.amplitude == 0.01);
  CHECK(cfg.init.width == 0.3);
  CHECK(cfg.init.center == 0.5);
  CHECK(cfg.init.r0 == "zero");
  CHECK(cfg.output_every == 10);
  CHECK(cfg.damped());
  // closed grid: nx - 1 cells
  CHECK(cfg.h() == Approx(4.0 / 63.0));
  CHECK(cfg.node(0) == -2.0);
  CHECK(cfg.node(63) == Approx(2.0));
}

TEST_CASE("configuration parser rejects malformed input") {
  const std::string minimal =
      "beta = 1\nx0 = 0\nx1 = 1\nnx = 32\nt_end = 1\n";
  CHECK_NOTHROW(pde::parse_config(minimal));

  // missing any required key
  CHECK_THROWS_AS(pde::parse_config("beta = 1\nx0 = 0\nx1 = 1\nnx = 32\n"),
                  std::invalid_argument);
  // unknown and duplicate keys
  CHECK_THROWS_AS(pde::parse_config(minimal + "gamma = 2\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(pde::parse_config(minimal + "beta = 2\n"),
                  std::invalid_argument);
  // malformed values
  CHECK_THROWS_AS(pde::parse_config(minimal + "cfl = fast\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(pde::parse_config(minimal + "output.every = 2.5\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(pde::parse_config(minimal + "bc = absorbing\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(pde::parse_config(minimal + "init.name = sinusoid\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(pde::parse_config(minimal + "just a line\n"),
                  std::invalid_argument);
}

TEST_CASE("config validation enforces the documented ranges") {
  pde::SolverConfig cfg = base_config();
  CHECK_NOTHROW(cfg.validate());

  auto broken = [&](auto mutate) {
    pde::SolverConfig c = base_config();
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(broken([](auto& c) { c.beta = 0.0; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(broken([](auto& c) { c.alpha = -1.0; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(broken([](auto& c) { c.x1 = c.x0; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(broken([](auto& c) { c.nx = 8; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(broken([](auto& c) { c.cfl = 1.5; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(broken([](auto& c) { c.cfl = 0.0; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(broken([](auto& c) { c.t_end = 0.0; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(broken([](auto& c) { c.delta = 0.0; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(broken([](auto& c) { c.output_every = 0; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(broken([](auto& c) { c.init.width = 0.0; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(broken([](auto& c) { c.init.r0 = "extrapolate"; }).validate(),
                  std::invalid_argument);
}

TEST_CASE("CFL step tracks the local wave speed and the damping scale") {
  pde::SolverConfig cfg = base_config();
  cfg.x0 = 0.0;
  cfg.x1 = 1.0;
  cfg.nx = 100;  // h = 0.01

  // rest state: margin 1, dt = cfl * h
  pde::SolverState s = pde::make_state(cfg, pde::Field(100, 0.0),
                                       pde::Field(100, 0.0));
  CHECK(pde::cfl_dt(s, cfg) == Approx(0.005));

  // uniform pressure with 1 - 2 beta p = 1/4: wave speed doubles, dt halves
  pde::SolverState s2 = pde::make_state(cfg, pde::Field(100, 3.75),
                                        pde::Field(100, 0.0));
  CHECK(pde::cfl_dt(s2, cfg) == Approx(0.0025));

  // damped runs are additionally capped by cfl * alpha
  pde::SolverConfig damped = cfg;
  damped.alpha = 1e-3;
  pde::SolverState s3 = pde::make_state(damped, pde::Field(100, 0.0),
                                        pde::Field(100, 0.0));
  CHECK(pde::cfl_dt(s3, damped) == Approx(0.5e-3));
}

TEST_CASE("right-hand side on states with known derivatives") {
  SECTION("uniform rest pressure is steady; the potential accumulates it") {
    pde::SolverConfig cfg = base_config();
    cfg.nx = 64;
    pde::SolverState s =
        pde::make_state(cfg, pde::Field(64, 0.1), pde::Field(64, 0.0));
    pde::StateDeriv d = pde::rhs(s, cfg);
    for (int i = 0; i < 64; ++i) {
      CHECK(d.p[i] == 0.0);
      CHECK(d.q[i] == 0.0);
      CHECK(d.v[i] == 0.1);
    }
    // p and q never change, bit for bit; v integrates exactly (linear flow)
    pde::SolverState s1 = pde::step(s, cfg, nullptr, 0.25);
    CHECK(bit_identical(s1.p, s.p));
    CHECK(bit_identical(s1.q, s.q));
    CHECK(s1.v[10] == Approx(0.025));
  }

  SECTION("uniform damped state reproduces the relaxation formula") {
    pde::SolverConfig cfg = base_config();
    cfg.alpha = 0.2;
    cfg.nx = 32;
    const double c = 0.3, qd = 0.4, e = -0.7;
    pde::SolverState s =
        pde::make_state(cfg, pde::Field(32, c), pde::Field(32, qd), {},
                        pde::Field(32, e));
    pde::StateDeriv d = pde::rhs(s, cfg);
    const double B = 1.0 - 2.0 * cfg.beta * c;
    const double want = (B * e - 2.0 * cfg.beta * qd * qd) / cfg.alpha;
    for (int i = 0; i < 32; ++i) {
      CHECK(d.q[i] == Approx(e));
      CHECK(d.r[i] == Approx(want));
    }
    CHECK_THROWS_AS(
        pde::rhs(pde::SolverState{0.0, s.p, s.q, {}, s.v}, cfg),
        std::invalid_argument);
  }
}

TEST_CASE("affine pressure on a closed grid is a bitwise fixed point") {
  // p = 2 + x on dyadic nodes: the central stencil cancels exactly in floating
  // point, so the semi-discrete derivative is identically zero and repeated
  // steps return the identical bit pattern.
  pde::SolverConfig cfg = base_config();
  cfg.beta = 0.05;
  cfg.x0 = 0.0;
  cfg.x1 = 1.0;
  cfg.nx = 33;  // h = 1/32
  cfg.bc = pde::Boundary::dirichlet;
  pde::Field p0(33), q0(33, 0.0);
  for (int i = 0; i < 33; ++i) p0[i] = 2.0 + cfg.node(i);
  pde::SolverState s = pde::make_state(cfg, p0, q0);

  pde::StateDeriv d = pde::rhs(s, cfg);
  for (int i = 0; i < 33; ++i) CHECK(d.q[i] == 0.0);

  pde::SolverState sN = s;
  for (int k = 0; k < 20; ++k) sN = pde::step(sN, cfg);
  CHECK(bit_identical(sN.p, p0));
  CHECK(bit_identical(sN.q, q0));

  // injecting the same affine data through prescribed boundary values keeps
  // the fixed point
  pde::BoundaryData bd;
  bd.p = [&](double, double x) { return 2.0 + x; };
  bd.q = [](double, double) { return 0.0; };
  bd.v = [](double t, double x) { return t * (2.0 + x); };
  pde::SolverState sB = s;
  for (int k = 0; k < 5; ++k) sB = pde::step(sB, cfg, &bd, 0.01);
  CHECK(sup_diff(sB.p, p0) == 0.0);
}

TEST_CASE("spatially constant evolution matches the closed-form solution") {
  // With no spatial variation the system reduces to (1 - 2 beta p) p_tt =
  // 2 beta p_t^2.  For beta = 1 the curve p(t) = (1 - sqrt(1 - 4t/3))/2,
  // p(0) = 0, p_t(0) = 1/3 solves it; compare the integrator at t = 1/2 and
  // check the co-evolved potential against the antiderivative.
  pde::SolverConfig cfg = base_config();
  cfg.beta = 1.0;
  cfg.x0 = 0.0;
  cfg.x1 = 1.0;
  cfg.nx = 16;
  cfg.cfl = 0.1;
  cfg.t_end = 0.5;

  pde::SolverState s = pde::make_state(cfg, pde::Field(16, 0.0),
                                       pde::Field(16, 1.0 / 3.0));
  s = pde::advance_to(s, cfg, 0.5);
  CHECK_THAT(s.t, WithinAbs(0.5, 1e-10));

  const double u = 1.0 - 4.0 * 0.5 / 3.0;  // 1 - 4t/3 at t = 1/2
  const double p_exact = (1.0 - std::sqrt(u)) / 2.0;
  const double v_exact = 0.5 / 2.0 + (std::pow(u, 1.5) - 1.0) / 4.0;
  for (int i : {0, 7, 15}) {
    CHECK_THAT(s.p[i], WithinAbs(p_exact, 1e-8));
    CHECK_THAT(s.q[i], WithinAbs(1.0 / (3.0 * std::sqrt(u)), 1e-8));
    CHECK_THAT(s.v[i], WithinAbs(v_exact, 1e-8));
  }
}

TEST_CASE("one step forward and one step back return the initial state") {
  // The scheme is not algebraically symmetric, so reversal holds up to a
  // method term of order dt^6; a small step pushes that term below roundoff
  // and the test pins the remaining error at the machine level.
  pde::SolverConfig cfg = base_config();
  pde::SolverState s0 = pde::initial_state(cfg);
  const double dt = pde::cfl_dt(s0, cfg) / 32.0;

  pde::SolverState s1 = pde::step(s0, cfg, nullptr, dt);
  pde::SolverState s2 = pde::step(s1, cfg, nullptr, -dt);

  const double norm = std::max({1.0, sup_abs(s0.p), sup_abs(s0.q)});
  CHECK(sup_diff(s2.p, s0.p) <= 10.0 * kEps * norm);
  CHECK(sup_diff(s2.q, s0.q) <= 10.0 * kEps * norm);
  CHECK(sup_diff(s2.v, s0.v) <= 10.0 * kEps * norm);
  CHECK_THAT(s2.t, WithinAbs(0.0, 1e-15));
}

TEST_CASE("shifting the potential gauge leaves pressure evolution identical") {
  pde::SolverConfig cfg = base_config();
  pde::SolverState a = pde::initial_state(cfg);
  pde::SolverState b = a;
  for (double& vi : b.v) vi += 5.0;

  for (int k = 0; k < 10; ++k) {
    double dt = pde::cfl_dt(a, cfg);
    a = pde::step(a, cfg, nullptr, dt);
    b = pde::step(b, cfg, nullptr, dt);
  }
  CHECK(bit_identical(a.p, b.p));
  CHECK(bit_identical(a.q, b.q));
  CHECK(sup_diff(a.v, b.v) == Approx(5.0).epsilon(1e-12));
}

TEST_CASE("the hyperbolicity watchdog halts degenerate states") {
  pde::SolverConfig cfg = base_config();  // beta = 0.1: margin dies at p = 5
  pde::Field flat(128, 5.0), zero(128, 0.0);
  CHECK_THROWS_AS(pde::make_state(cfg, flat, zero), pde::DegenerateWaveSpeed);

  pde::SolverState s = pde::make_state(cfg, zero, zero);
  s.p.assign(128, 5.0);  // degrade after construction
  CHECK_THROWS_AS(pde::cfl_dt(s, cfg), pde::DegenerateWaveSpeed);
  CHECK_THROWS_AS(pde::rhs(s, cfg), pde::DegenerateWaveSpeed);
  CHECK_THROWS_AS(pde::step(s, cfg, nullptr, 1e-3), pde::DegenerateWaveSpeed);
}

TEST_CASE("oversized steps fail through the documented errors") {
  // Deliberately violating the stability bound on a stiff damped run must
  // end in NonFiniteState or DegenerateWaveSpeed, never silent garbage.
  // The test is non-assertive about which: it only pins the error type.
  pde::SolverConfig cfg = base_config();
  cfg.alpha = 0.01;
  cfg.init.amplitude = 0.5;
  pde::SolverState s = pde::initial_state(cfg);
  const double big = 50.0 * pde::cfl_dt(s, cfg);
  bool blew_up = false;
  try {
    for (int k = 0; k < 200; ++k) s = pde::step(s, cfg, nullptr, big);
  } catch (const pde::NonFiniteState&) {
    blew_up = true;
  } catch (const pde::DegenerateWaveSpeed&) {
    blew_up = true;
  }
  CHECK((blew_up || std::isfinite(sup_abs(s.p))));
}

TEST_CASE("the zero state is an exact fixed point") {
  pde::SolverConfig cfg = base_config();
  cfg.init.name = "zero";
  pde::SolverState s = pde::initial_state(cfg);
  for (int k = 0; k < 25; ++k) s = pde::step(s, cfg);
  CHECK(sup_abs(s.p) == 0.0);
  CHECK(sup_abs(s.q) == 0.0);
  CHECK(sup_abs(s.v) == 0.0);
  CHECK(s.t > 0.0);
}

TEST_CASE("a pulse run stays finite and hyperbolic for a thousand steps") {
  pde::SolverConfig cfg = base_config();
  cfg.nx = 64;
  pde::SolverState s = pde::initial_state(cfg);
  for (int k = 0; k < 1000; ++k) s = pde::step(s, cfg);
  CHECK(std::isfinite(sup_abs(s.p)));
  CHECK(std::isfinite(sup_abs(s.q)));
  CHECK(s.t > 0.0);
}

TEST_CASE("damped initial data honors the third-order datum policy") {
  pde::SolverConfig cfg = base_config();
  cfg.alpha = 0.3;
  cfg.nx = 64;

  SECTION("consistent: the smooth limit of the undamped relation") {
    pde::SolverState s = pde::initial_state(cfg);
    const double h2 = cfg.h() * cfg.h();
    for (int i : {20, 32, 40}) {
      double lap = (s.p[i - 1] - 2 * s.p[i] + s.p[i + 1]) / h2;
      double want = lap / (1.0 - 2 * cfg.beta * s.p[i]);  // q0 = 0
      CHECK(s.r[i] == Approx(want));
    }
  }
  SECTION("zero: the free datum set to rest") {
    cfg.init.r0 = "zero";
    pde::SolverState s = pde::initial_state(cfg);
    CHECK(sup_abs(s.r) == 0.0);
  }
  SECTION("explicit field wins; undamped runs reject one") {
    pde::SolverState s =
        pde::make_state(cfg, pde::Field(64, 0.0), pde::Field(64, 0.0), {},
                        pde::Field(64, 2.5));
    CHECK(s.r[10] == 2.5);
    pde::SolverConfig undamped = cfg;
    undamped.alpha = 0.0;
    CHECK_THROWS_AS(pde::make_state(undamped, pde::Field(64, 0.0),
                                    pde::Field(64, 0.0), {},
                                    pde::Field(64, 1.0)),
                    std::invalid_argument);
  }
}
