// SPDX-License-Identifier: MIT
#pragma once

// verify.hpp -- the exact verification procedures behind the catalog:
// determining equations for symmetries, multipliers, and adjoint symmetries;
// divergence identities for conserved currents; variational classification;
// Hamiltonian/Legendre structure; inverse-Noether and recursion identities;
// the linearizing contact map round trip; and the similarity ODE reductions.
//
// Every check manipulates exact rational jet expressions and returns a
// VerifyReport whose witness is the expression that must vanish, so
// `passed == witness.is_zero()` holds by construction.  Checks made of
// several independent identities aggregate them as  sum_k z^k * defect_k
// using the inert indeterminate z, which vanishes iff every part does
// (no part ever involves z itself).

#include "wvlab/calculus.hpp"
#include "wvlab/catalog.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wvlab::verify {

// ---------------------------------------------------------------------------
// Report type
// ---------------------------------------------------------------------------

struct VerifyReport {
  std::string check_id;
  bool passed = false;
  JetExpr witness;  // canonical residual; passed iff witness is zero
  std::chrono::duration<double> elapsed{0.0};
};

namespace detail {

using clock = std::chrono::steady_clock;

inline VerifyReport make_report(std::string id, JetExpr witness,
                                clock::time_point t0) {
  VerifyReport r;
  r.check_id = std::move(id);
  r.passed = witness.is_zero();
  r.witness = std::move(witness);
  r.elapsed = clock::now() - t0;
  return r;
}

// z-tagged aggregation of a multi-part identity: part k contributes
// z^k * defect_k, so the sum vanishes iff each defect does.
inline JetExpr tag(int k, const JetExpr& defect) {
  return sym::z().pow(k) * defect;
}
// Boolean part: zero when the claim holds, the marker z^k when it fails.
inline JetExpr flag(int k, bool ok) {
  return ok ? JetExpr() : sym::z().pow(k);
}

inline const catalog::SymmetryChar& symmetry_entry(const std::string& id) {
  for (const catalog::SymmetryChar& s : catalog::all_symmetries())
    if (s.id == id) return s;
  throw std::invalid_argument("verify: no cataloged symmetry named " + id);
}

inline const catalog::ConservedCurrent& current_entry(const std::string& id) {
  for (const catalog::ConservedCurrent& c : catalog::all_currents())
    if (c.id == id) return c;
  throw std::invalid_argument("verify: no cataloged current named " + id);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Core determining-equation checks
// ---------------------------------------------------------------------------

// Infinitesimal symmetry in characteristic form: the linearization of the
// residual along P must vanish on the solution manifold.
inline VerifyReport check_symmetry(const JetExpr& P, const EquationSpec& eq,
                                   std::string id = "symmetry") {
  auto t0 = detail::clock::now();
  JetExpr det = prolong_evolutionary(P, eq.residual, eq.leading.dep);
  return detail::make_report(std::move(id),
                             reduce_to_solution_manifold(det, eq), t0);
}

// Conservation-law multiplier: E_w(residual * Q) must vanish identically
// (off-shell; the Euler operator annihilates exactly the total divergences).
inline VerifyReport check_multiplier(const JetExpr& Q, const EquationSpec& eq,
                                     std::string id = "multiplier") {
  auto t0 = detail::clock::now();
  JetExpr w = euler_operator(eq.residual * Q, eq.leading.dep);
  return detail::make_report(std::move(id), std::move(w), t0);
}

// Divergence identity of a cataloged current: off-shell
// D_t T + D_x Phi - Q * residual == 0, or, for entries without an off-shell
// multiplier form, D_t T + D_x Phi == 0 on the solution manifold.
inline VerifyReport check_current(const catalog::ConservedCurrent& c,
                                  std::string id = "") {
  auto t0 = detail::clock::now();
  if (id.empty()) id = c.id;
  JetExpr div = D_t(c.T) + D_x(c.Phi);
  JetExpr w = c.on_shell
                  ? reduce_to_solution_manifold(div, c.equation)
                  : div - c.Q * equation(c.equation).residual;
  return detail::make_report(std::move(id), std::move(w), t0);
}

// Adjoint-symmetry determining equation, reduced on-shell.  For the field
// equations this is the second-order operator with the damping term carried
// at third order; for the potential equations it is the formal adjoint of
// the residual's Frechet operator.
inline VerifyReport check_adjoint_symmetry(const JetExpr& Q,
                                           const EquationSpec& eq,
                                           std::string id = "adjoint-symmetry") {
  auto t0 = detail::clock::now();
  JetExpr det;
  if (eq.leading.dep == Dep::p) {
    JetExpr B = sym::num(1) - sym::num(2) * sym::beta() * sym::jet(Dep::p, 0, 0);
    det = B * iterated_derivative(Q, 2, 0) - iterated_derivative(Q, 0, 2);
    if (eq.name == EquationName::westervelt_damped)
      det = det - sym::alpha() * iterated_derivative(Q, 3, 0);
  } else {
    LinearDiffOp frechet = frechet_operator(eq.residual, eq.leading.dep);
    det = formal_adjoint(frechet).apply(Q);
  }
  return detail::make_report(std::move(id),
                             reduce_to_solution_manifold(det, eq), t0);
}

// Recover the multiplier from a conserved density: the first-shift Euler
// operator in t for a second-order-in-time equation, the second shift when
// the damping term raises the time order to three.  The caller compares the
// result against the catalog multiplier up to the leading-coefficient factor
// of the equation (e.g. -alpha for the damped family).
inline JetExpr multiplier_from_density(const JetExpr& T, const EquationSpec& eq) {
  int shift = (eq.name == EquationName::westervelt_damped ||
               eq.name == EquationName::potential_damped)
                  ? 2
                  : 1;
  return euler_operator(T, eq.leading.dep, shift, 0);
}

// ---------------------------------------------------------------------------
// Variational classification
// ---------------------------------------------------------------------------

// Variational-symmetry determining equation of the undamped potential
// equation: E_v(residual * P) == 0 off-shell.  (For this self-adjoint
// equation the condition coincides with the multiplier condition.)
inline VerifyReport check_variational(const JetExpr& P,
                                      std::string id = "variational") {
  auto t0 = detail::clock::now();
  const EquationSpec& eq = equation(EquationName::potential_undamped);
  JetExpr w = euler_operator(eq.residual * P, Dep::v);
  return detail::make_report(std::move(id), std::move(w), t0);
}

// Variational classification of a field-level characteristic P through its
// potential realization Pv (the time antiderivative of P, p = v_t): first
// confirms the pair, then evaluates the potential-level condition on Pv.
// The antiderivative is defined up to c1 + c2*x, both of which are
// variational, so the verdict does not depend on that choice.
inline VerifyReport check_westervelt_variational(const JetExpr& P,
                                                 const JetExpr& Pv,
                                                 std::string id =
                                                     "westervelt-variational") {
  JetExpr proj = project_potential_to_field(D_t(Pv));
  if (!equivalent(proj, P))
    throw std::invalid_argument(
        "check_westervelt_variational: D_t(Pv) does not project onto P");
  return check_variational(Pv, std::move(id));
}

// ---------------------------------------------------------------------------
// Recursion and Noether structure
// ---------------------------------------------------------------------------

using catalog::apply_recursion;

enum class NoetherExpectation { trivial, symmetry };

// Inverse Noether operator -D_t^2 applied to a multiplier of the undamped
// field equation.  `trivial` expects the image to vanish on the solution
// manifold (for the kinematic multipliers it vanishes identically, which is
// witnessed by Theta == 0 in the density form T = D_x Theta).  `symmetry`
// expects a genuine symmetry: the determining equation must close AND the
// image must not reduce to zero.
inline VerifyReport check_inverse_noether(const JetExpr& Q,
                                          NoetherExpectation expected,
                                          std::string id = "inverse-noether") {
  auto t0 = detail::clock::now();
  const EquationSpec& eq = equation(EquationName::westervelt_undamped);
  JetExpr P = JetExpr() - iterated_derivative(Q, 2, 0);
  JetExpr reduced = reduce_to_solution_manifold(P, eq);
  if (expected == NoetherExpectation::trivial)
    return detail::make_report(std::move(id), std::move(reduced), t0);
  JetExpr det = prolong_evolutionary(P, eq.residual, Dep::p);
  JetExpr w = detail::tag(1, reduce_to_solution_manifold(det, eq)) +
              detail::flag(2, !reduced.is_zero());
  return detail::make_report(std::move(id), std::move(w), t0);
}

// ---------------------------------------------------------------------------
// Structure checks (aggregated multi-part identities)
// ---------------------------------------------------------------------------

// Legendre/Hamiltonian structure of the undamped potential equation:
//  (1) conjugate momentum  dL/dv_t == beta v_t^2 - v_t;
//  (2) Legendre transform  momentum*v_t - L == -h  with
//      h = (1/2)(v_t^2 + v_x^2) - (2 beta/3) v_t^3;
//  (3) in field variables, E_p((1/2)(p^2 + v_x^2) - (2 beta/3)p^3)
//      == p - 2 beta p^2;
//  (4) h differs from the energy-integral density by
//      -1/(2 beta) * (undamped first potential density) + 1/(24 beta^2);
//  (5) the canonical motion equations v_t = p, momentum_t = -v_xx compose
//      to minus the potential residual.
inline VerifyReport check_hamiltonian(std::string id = "hamiltonian") {
  using namespace catalog;
  auto t0 = detail::clock::now();
  JetExpr vt = sym::jet(Dep::v, 1, 0);
  JetExpr vx = sym::jet(Dep::v, 0, 1);
  JetExpr beta = sym::beta();
  JetExpr L = lagrangian();
  JetExpr momentum = partial(L, indet_id(JetVar{Dep::v, 1, 0}));

  JetExpr part1 = momentum - (beta * vt * vt - vt);
  JetExpr part2 = momentum * vt - L + hamiltonian_density();

  JetExpr p = sym::jet(Dep::p, 0, 0);
  JetExpr h_field = sym::frac(1, 2) * (p * p + vx * vx) -
                    sym::frac(2, 3) * beta * p * p * p;
  JetExpr part3 =
      euler_operator(h_field, Dep::p) - (p - sym::num(2) * beta * p * p);

  JetExpr first_density_undamped =
      catalog::detail::drop_damping(detail::current_entry("V.c1").T);
  JetExpr part4 = hamiltonian_density() - integrand_E() +
                  (sym::frac(1, 2) / beta) * first_density_undamped -
                  sym::frac(1, 24) / (beta * beta);

  JetExpr part5 = D_t(legendre_momentum()) + sym::jet(Dep::v, 0, 2) +
                  equation(EquationName::potential_undamped).residual;

  JetExpr w = detail::tag(1, part1) + detail::tag(2, part2) +
              detail::tag(3, part3) + detail::tag(4, part4) +
              detail::tag(5, part5);
  return detail::make_report(std::move(id), std::move(w), t0);
}

// Projection relations between the potential-level and field-level catalogs:
// the four inherited point characteristics satisfy  P == rename(D_t P^v)
// exactly, and the two hidden-shift multipliers equal minus the total time
// derivative of the corresponding field-level multipliers.
inline VerifyReport check_projection_relations(std::string id =
                                                   "projection-relations") {
  auto t0 = detail::clock::now();
  auto pair_defect = [&](const std::string& pot, const std::string& field) {
    JetExpr proj = project_potential_to_field(
        D_t(detail::symmetry_entry(pot).expr));
    return proj - detail::symmetry_entry(field).expr;
  };
  JetExpr part1 = pair_defect("V.time_translation", "W.time_translation");
  JetExpr part2 = pair_defect("V.space_translation", "W.space_translation");
  JetExpr part3 = pair_defect("V.scaling_shift", "W.scaling_shift");
  JetExpr part4 = pair_defect("V.dilation", "W.dilation");
  // multiplier projection, with the divergence-consistent catalog signs
  JetExpr part5 = detail::current_entry("V.c1").Q +
                  D_t(detail::current_entry("W.c3").Q);
  JetExpr part6 = detail::current_entry("V.c2").Q +
                  D_t(detail::current_entry("W.c4").Q);
  JetExpr w = detail::tag(1, part1) + detail::tag(2, part2) +
              detail::tag(3, part3) + detail::tag(4, part4) +
              detail::tag(5, part5) + detail::tag(6, part6);
  return detail::make_report(std::move(id), std::move(w), t0);
}

// Contact-map round trip: composing the forward and inverse components in
// either order reproduces the identity on all five coordinates.
inline VerifyReport check_contact_roundtrip(std::string id =
                                                "contact-roundtrip") {
  auto t0 = detail::clock::now();
  const catalog::ContactMap& m = catalog::contact_map();
  JetExpr w =
      detail::tag(1, m.pull_back_to_potential(m.t_of) - sym::t()) +
      detail::tag(2, m.pull_back_to_potential(m.x_of) - sym::x()) +
      detail::tag(3, m.pull_back_to_potential(m.v_of) - sym::jet(Dep::v, 0, 0)) +
      detail::tag(4,
                  m.pull_back_to_potential(m.v_t_of) - sym::jet(Dep::v, 1, 0)) +
      detail::tag(5,
                  m.pull_back_to_potential(m.v_x_of) - sym::jet(Dep::v, 0, 1)) +
      detail::tag(6, m.pull_back_to_linear(m.t_star) - sym::t()) +
      detail::tag(7, m.pull_back_to_linear(m.x_star) - sym::x()) +
      detail::tag(8,
                  m.pull_back_to_linear(m.v_star) - sym::jet(Dep::vstar, 0, 0)) +
      detail::tag(
          9, m.pull_back_to_linear(m.v_star_t) - sym::jet(Dep::vstar, 1, 0)) +
      detail::tag(
          10, m.pull_back_to_linear(m.v_star_x) - sym::jet(Dep::vstar, 0, 1));
  return detail::make_report(std::move(id), std::move(w), t0);
}

// Linearization structure:
//  (1) the equation satisfied by f(v_t, v_x) is the linear wave equation
//      under a pure rename of the dependent;
//  (2) the linear wave operator D_t^2 - (1 - 2 beta t) D_x^2 on the starred
//      plane is formally self-adjoint;
//  (3) the Frechet operator of the undamped potential equation is formally
//      self-adjoint;
//  (4) the Frechet operator of the damped field equation is NOT (odd time
//      order), which is why no field-level Lagrangian exists.
inline VerifyReport check_linearization(std::string id = "linearization") {
  auto t0 = detail::clock::now();
  JetExpr part1 = rename_dependent(equation(EquationName::f_equation).residual,
                                   Dep::f, Dep::vstar) -
                  equation(EquationName::linear_wave).residual;

  JetExpr c0 = JetExpr() -
               (sym::num(1) - sym::num(2) * sym::beta() * sym::t());
  LinearDiffOp wave_op({LinearDiffOp::Term{sym::num(1), 2, 0},
                        LinearDiffOp::Term{c0, 0, 2}});
  bool wave_self_adjoint = operator_equal(wave_op, formal_adjoint(wave_op));

  LinearDiffOp pot = frechet_operator(
      equation(EquationName::potential_undamped).residual, Dep::v);
  bool pot_self_adjoint = operator_equal(pot, formal_adjoint(pot));

  LinearDiffOp damped = frechet_operator(
      equation(EquationName::westervelt_damped).residual, Dep::p);
  bool damped_self_adjoint = operator_equal(damped, formal_adjoint(damped));

  JetExpr w = detail::tag(1, part1) + detail::flag(2, wave_self_adjoint) +
              detail::flag(3, pot_self_adjoint) +
              detail::flag(4, !damped_self_adjoint);
  return detail::make_report(std::move(id), std::move(w), t0);
}

// Similarity ODE of the scaling-invariant solutions:
//   (beta^2 zeta^2 + 1/9) V'' + (1/3) beta (5 beta - 2q) zeta V'
//     - (1/9) q (2 beta - q) V = 0.
// Checks:
//  (1..4) the closed-form solutions V = zeta^s ((3 beta zeta)^2 + 1)^E,
//         E = (beta + 2q)/(6 beta), for (s, q) in
//         {(0,-beta),(0,-3 beta),(1,-4 beta),(1,-6 beta)}: the fractional
//         power enters only through the rational logarithmic derivative
//         W = V'/V, V''/V = W' + W^2, making each case a rational identity;
//  (5)    integrating factor zeta^0: E_V(ODE) == (q + beta)(q + 3 beta)/9,
//         whose roots are the stated q values (q carried symbolically);
//  (6)    integrating factor zeta^1: E_V(zeta * ODE)
//         == zeta (q + 4 beta)(q + 6 beta)/9;
//  (7)    integrating factor zeta^2 fails for every q: E_V(zeta^2 * ODE)
//         == zeta^2 (q + 7 beta)(q + 9 beta)/9 + 2/9, the constant 2/9
//         being the s(s-1)/9 obstruction at s = 2.
inline VerifyReport check_similarity_ode(std::string id = "similarity-ode") {
  auto t0 = detail::clock::now();
  JetExpr zt = sym::zeta();
  JetExpr beta = sym::beta();
  JetExpr third = sym::frac(1, 3);
  JetExpr ninth = sym::frac(1, 9);

  // ODE/V for a solution given through its logarithmic derivative W = V'/V.
  auto ode_log_form = [&](const JetExpr& W, const JetExpr& q) {
    JetExpr Vpp_over_V = D_t(W) + W * W;  // d/dzeta on zeta-only expressions
    return (beta * beta * zt * zt + ninth) * Vpp_over_V +
           third * beta * (sym::num(5) * beta - sym::num(2) * q) * zt * W -
           ninth * q * (sym::num(2) * beta - q);
  };
  auto closed_form_W = [&](int s, const JetExpr& E) {
    JetExpr rational_part = E * sym::num(18) * beta * beta * zt /
                            (sym::num(9) * beta * beta * zt * zt + sym::num(1));
    return s == 0 ? rational_part : sym::num(s) / zt + rational_part;
  };
  struct Case {
    int s;
    long q_over_beta;
  };
  const Case cases[] = {{0, -1}, {0, -3}, {1, -4}, {1, -6}};
  JetExpr w;
  int k = 1;
  for (const Case& c : cases) {
    JetExpr q = sym::num(c.q_over_beta) * beta;
    JetExpr E = sym::frac(1 + 2 * c.q_over_beta, 6);
    w = w + detail::tag(k++, ode_log_form(closed_form_W(c.s, E), q));
  }

  // Integrating-factor system, with the symbolic slot alpha standing for q.
  JetExpr q = sym::alpha();
  JetExpr ode_jets = (beta * beta * zt * zt + ninth) * sym::jet(Dep::V, 2, 0) +
                     third * beta * (sym::num(5) * beta - sym::num(2) * q) *
                         zt * sym::jet(Dep::V, 1, 0) -
                     ninth * q * (sym::num(2) * beta - q) *
                         sym::jet(Dep::V, 0, 0);
  JetExpr e0 = euler_operator(ode_jets, Dep::V) -
               ninth * (q + beta) * (q + sym::num(3) * beta);
  JetExpr e1 = euler_operator(zt * ode_jets, Dep::V) -
               ninth * zt * (q + sym::num(4) * beta) * (q + sym::num(6) * beta);
  JetExpr e2_full = euler_operator(zt * zt * ode_jets, Dep::V);
  JetExpr e2 = e2_full - ninth * zt * zt * (q + sym::num(7) * beta) *
                             (q + sym::num(9) * beta) -
               sym::frac(2, 9);
  std::map<int, JetExpr> at_zero{{kIdZeta, JetExpr()}};
  JetExpr obstruction = e2_full.substitute(at_zero) - sym::frac(2, 9);

  w = w + detail::tag(5, e0) + detail::tag(6, e1) + detail::tag(7, e2) +
      detail::tag(8, obstruction);
  return detail::make_report(std::move(id), std::move(w), t0);
}

// ---------------------------------------------------------------------------
// Suite runner
// ---------------------------------------------------------------------------

// A named check bound to its suite and to the expectation recorded in the
// catalog: negative claims (non-symmetries, non-multipliers, non-variational
// characteristics) are encoded as expect_pass = false, and the suite counts
// them as agreeing when the check fails.
struct SuiteEntry {
  std::string id;
  std::string suite;
  bool expect_pass;
  std::function<VerifyReport()> run;
};

struct SuiteOutcome {
  VerifyReport report;
  bool expect_pass;
  bool as_expected;
};

namespace detail {

inline void add_entry(std::vector<SuiteEntry>& v, std::string suite,
                      std::string id, bool expect,
                      std::function<VerifyReport()> fn) {
  v.push_back(SuiteEntry{std::move(id), std::move(suite), expect, std::move(fn)});
}

inline std::vector<SuiteEntry> build_suite_entries() {
  using namespace catalog;
  using catalog::detail::drop_damping;
  std::vector<SuiteEntry> v;
  auto add = [&](std::string suite, std::string id, bool expect,
                 std::function<VerifyReport()> fn) {
    add_entry(v, std::move(suite), std::move(id), expect, std::move(fn));
  };

  // ---- westervelt / potential: symmetries ---------------------------------
  for (const SymmetryChar& s : all_symmetries()) {
    const bool field = s.equation == EquationName::westervelt_damped ||
                       s.equation == EquationName::westervelt_undamped;
    std::string suite = field ? "westervelt" : "potential";
    std::string id = suite + ".symmetry." + s.id;
    add(suite, id, true, [s, id] {
      return check_symmetry(s.expr, equation(s.equation), id);
    });
  }

  // ---- westervelt: multipliers, currents, adjoints, density recovery ------
  {
    const std::pair<const char*, const char*> kinematic[] = {
        {"Q1", "W.c1"}, {"Q2", "W.c2"}, {"Q3", "W.c3"}, {"Q4", "W.c4"}};
    for (auto [qn, cid] : kinematic) {
      JetExpr Q = current_entry(cid).Q;
      std::string qname = qn;
      add("westervelt", "westervelt.multiplier." + qname, true, [Q, qname] {
        return check_multiplier(Q, equation(EquationName::westervelt_damped),
                                "westervelt.multiplier." + qname);
      });
      add("westervelt", "westervelt.adjoint." + qname, true, [Q, qname] {
        return check_adjoint_symmetry(
            Q, equation(EquationName::westervelt_damped),
            "westervelt.adjoint." + qname);
      });
    }
    JetExpr Q5 = current_entry("W.c5").Q;
    add("westervelt", "westervelt.multiplier.Q5", true, [Q5] {
      return check_multiplier(Q5, equation(EquationName::westervelt_undamped),
                              "westervelt.multiplier.Q5");
    });
    // the rational multiplier needs the undamped equation: with symbolic
    // damping the Euler identity breaks
    add("westervelt", "westervelt.multiplier.Q5.symbolic_damping", false,
        [Q5] {
          return check_multiplier(Q5,
                                  equation(EquationName::westervelt_damped),
                                  "westervelt.multiplier.Q5.symbolic_damping");
        });
    add("westervelt", "westervelt.adjoint.Q5", true, [Q5] {
      return check_adjoint_symmetry(
          Q5, equation(EquationName::westervelt_undamped),
          "westervelt.adjoint.Q5");
    });

    for (const char* cid : {"W.c1", "W.c2", "W.c3", "W.c4", "W.c5", "W.c6"}) {
      ConservedCurrent c = current_entry(cid);
      std::string id = std::string("westervelt.current.") + cid;
      add("westervelt", id, true, [c, id] { return check_current(c, id); });
    }

    // density -> multiplier recovery, with the leading-coefficient factor
    // reported by the equation: E_{p_tt}(T1) == -alpha * Q1 (damped),
    // E_{p_t}(T5) == (1 - 2 beta p) * Q5 (undamped).
    add("westervelt", "westervelt.density_multiplier.T1", true, [] {
      auto t0 = detail::clock::now();
      JetExpr got = multiplier_from_density(
          current_entry("W.c1").T, equation(EquationName::westervelt_damped));
      JetExpr w = got + sym::alpha() * current_entry("W.c1").Q;
      return detail::make_report("westervelt.density_multiplier.T1",
                                 std::move(w), t0);
    });
    add("westervelt", "westervelt.density_multiplier.T5", true, [] {
      auto t0 = detail::clock::now();
      JetExpr got = multiplier_from_density(
          current_entry("W.c5").T,
          equation(EquationName::westervelt_undamped));
      JetExpr B =
          sym::num(1) - sym::num(2) * sym::beta() * sym::jet(Dep::p, 0, 0);
      JetExpr w = got - B * current_entry("W.c5").Q;
      return detail::make_report("westervelt.density_multiplier.T5",
                                 std::move(w), t0);
    });
  }

  // ---- potential: multipliers, currents, adjoints --------------------------
  {
    struct MulCase {
      const char* name;
      const char* cid;
      bool damped_level;
    };
    const MulCase muls[] = {{"Qv1", "V.c1", true},    {"Qv2", "V.c2", true},
                            {"Qv3", "V.c3", false},   {"Qv4", "V.c4", false},
                            {"Qv5a", "V.c5a", false}, {"Qv5b", "V.c5b", false}};
    for (const MulCase& m : muls) {
      EquationName eq = m.damped_level ? EquationName::potential_damped
                                       : EquationName::potential_undamped;
      JetExpr Q = current_entry(m.cid).Q;
      std::string name = m.name;
      add("potential", "potential.multiplier." + name, true, [Q, name, eq] {
        return check_multiplier(Q, equation(eq),
                                "potential.multiplier." + name);
      });
      add("potential", "potential.adjoint." + name, true, [Q, name, eq] {
        return check_adjoint_symmetry(Q, equation(eq),
                                      "potential.adjoint." + name);
      });
    }
    for (const char* cid :
         {"V.c1", "V.c2", "V.c3", "V.c4", "V.c5a", "V.c5b", "V.hier3"}) {
      ConservedCurrent c = current_entry(cid);
      std::string id = std::string("potential.current.") + cid;
      add("potential", id, true, [c, id] { return check_current(c, id); });
    }
    // functional family: the two printed specializations plus a mixed
    // polynomial solution of the characteristic equation
    JetExpr vt = sym::jet(Dep::v, 1, 0);
    JetExpr vx = sym::jet(Dep::v, 0, 1);
    JetExpr beta = sym::beta();
    const std::pair<const char*, JetExpr> fcases[] = {
        {"energy_shift", vt - sym::frac(1, 2) / beta},
        {"momentum", vx},
        {"mixed_cubic",
         vx * vx + vt * vt - sym::frac(2, 3) * beta * vt * vt * vt}};
    for (const auto& [name, f] : fcases) {
      std::string id = std::string("potential.current.functional.") + name;
      add("potential", id, true, [f = f, id] {
        return check_current(instantiate_f_current(f), id);
      });
    }
  }

  // ---- recursion -----------------------------------------------------------
  {
    auto S = [](const char* id) { return symmetry_entry(id).expr; };
    auto img = [&v](std::string name, JetExpr seed, JetExpr expected) {
      std::string id = "recursion.image." + name;
      add_entry(v, "recursion", id, true, [seed, expected, id] {
        auto t0 = detail::clock::now();
        const RecursionOp& R = get_recursion(RecursionId::x_translation);
        return detail::make_report(id, R.apply(seed) - expected, t0);
      });
    };
    img("const_shift", S("V.const_shift"), JetExpr());
    img("linear_shift", S("V.linear_shift"), S("V.dilation_chain_2"));
    img("time_translation", S("V.time_translation"), JetExpr());
    img("space_translation", S("V.space_translation"), sym::num(1));
    img("scaling_shift", S("V.scaling_shift"),
        sym::num(3) * sym::beta() * sym::x() + S("V.scaling_chain_1"));
    img("dilation", S("V.dilation"), sym::x());

    add("recursion", "recursion.sequence.space_translation_twice", true, [] {
      auto t0 = detail::clock::now();
      const RecursionOp& R = get_recursion(RecursionId::x_translation);
      return detail::make_report(
          "recursion.sequence.space_translation_twice",
          apply_recursion(R, symmetry_entry("V.space_translation").expr, 2),
          t0);
    });
    add("recursion", "recursion.chain.dilation_cubed", true, [] {
      auto t0 = detail::clock::now();
      const RecursionOp& R = get_recursion(RecursionId::x_translation);
      JetExpr got = apply_recursion(R, symmetry_entry("V.dilation").expr, 3);
      return detail::make_report(
          "recursion.chain.dilation_cubed",
          got - symmetry_entry("V.dilation_chain_3").expr, t0);
    });
    add("recursion", "recursion.dilation_op.const_shift", true, [] {
      auto t0 = detail::clock::now();
      const RecursionOp& Rdil = get_recursion(RecursionId::dilation);
      return detail::make_report(
          "recursion.dilation_op.const_shift",
          Rdil.apply(symmetry_entry("V.const_shift").expr), t0);
    });
    add("recursion", "recursion.dilation_op.time_translation", true, [] {
      auto t0 = detail::clock::now();
      const RecursionOp& Rdil = get_recursion(RecursionId::dilation);
      JetExpr expected = sym::num(1) / sym::beta() -
                         sym::num(2) * sym::jet(Dep::v, 1, 0);
      return detail::make_report(
          "recursion.dilation_op.time_translation",
          Rdil.apply(symmetry_entry("V.time_translation").expr) - expected,
          t0);
    });

    // inverse Noether images of the undamped field multipliers
    for (auto [qn, cid] : std::initializer_list<
             std::pair<const char*, const char*>>{
             {"Q1", "W.c1"}, {"Q2", "W.c2"}, {"Q3", "W.c3"}, {"Q4", "W.c4"}}) {
      JetExpr Q = drop_damping(current_entry(cid).Q);
      std::string id = std::string("recursion.inverse_noether.") + qn;
      add("recursion", id, true, [Q, id] {
        return check_inverse_noether(Q, NoetherExpectation::trivial, id);
      });
    }
    add("recursion", "recursion.inverse_noether.Q5", true, [] {
      return check_inverse_noether(current_entry("W.c5").Q,
                                   NoetherExpectation::symmetry,
                                   "recursion.inverse_noether.Q5");
    });
    add("recursion", "recursion.inverse_noether.Q5_flipped", true, [] {
      return check_inverse_noether(JetExpr() - current_entry("W.c5").Q,
                                   NoetherExpectation::symmetry,
                                   "recursion.inverse_noether.Q5_flipped");
    });

    // hierarchy consistency: the time derivative of each dilation-chain
    // member, reduced through the spatially solved manifold and projected to
    // field variables, reproduces the lifted chain member on-shell
    auto hier = [&v](std::string name, const char* pot_id,
                     const char* field_id) {
      std::string id = "recursion.hierarchy." + name;
      add_entry(v, "recursion", id, true, [pot_id, field_id, id] {
        auto t0 = detail::clock::now();
        JetExpr dt = D_t(symmetry_entry(pot_id).expr);
        JetExpr spatial =
            reduce_to_solution_manifold(dt, potential_undamped_spatial_form());
        JetExpr proj = project_potential_to_field(spatial);
        JetExpr w = reduce_to_solution_manifold(
            proj - symmetry_entry(field_id).expr,
            EquationName::westervelt_undamped);
        return detail::make_report(id, std::move(w), t0);
      });
    };
    hier("field_2", "V.dilation_chain_2", "W.lifted_chain_2");
    hier("field_3", "V.dilation_chain_3", "W.lifted_chain_3");
  }

  // ---- variational ----------------------------------------------------------
  {
    auto S = [](const char* id) { return symmetry_entry(id).expr; };
    auto classify = [&v](std::string name, JetExpr P, bool expect) {
      std::string id = "variational.classify." + name;
      add_entry(v, "variational", id, expect,
                [P, id] { return check_variational(P, id); });
    };
    classify("dilation_chain_3", S("V.dilation_chain_3"), true);
    classify("Qv1", current_entry("V.c1").Q, true);
    classify("Qv2", current_entry("V.c2").Q, true);
    classify("Qv3", current_entry("V.c3").Q, true);
    classify("Qv4", current_entry("V.c4").Q, true);
    classify("Qv5a", current_entry("V.c5a").Q, true);
    classify("Qv5b", current_entry("V.c5b").Q, true);
    // negative claims: these chain members admit no conservation law
    classify("dilation_chain_2", S("V.dilation_chain_2"), false);
    classify("scaling_chain_1", S("V.scaling_chain_1"), false);
    {
      // the second scaling-chain member enters as the raw operator image,
      // the representative the classification refers to
      const RecursionOp& R = get_recursion(RecursionId::x_translation);
      classify("scaling_chain_2_raw",
               R.apply(symmetry_entry("V.scaling_chain_1").expr), false);
    }

    // the hidden-shift multiplier is itself a point-symmetry combination
    add("variational", "variational.identity.Qv3_as_point_combination", true,
        [] {
          auto t0 = detail::clock::now();
          JetExpr combo = symmetry_entry("V.dilation").expr +
                          (sym::num(2) / sym::beta()) *
                              symmetry_entry("V.scaling_shift").expr;
          JetExpr w = current_entry("V.c3").Q - combo;
          return detail::make_report(
              "variational.identity.Qv3_as_point_combination", std::move(w),
              t0);
        });

    // field-level classification through the potential realization
    auto west = [&v](std::string name, JetExpr P, JetExpr Pv, bool expect) {
      std::string id = "variational.westervelt." + name;
      add_entry(v, "variational", id, expect, [P, Pv, id] {
        return check_westervelt_variational(P, Pv, id);
      });
    };
    JetExpr P3 = drop_damping(S("W.scaling_shift"));
    JetExpr P4 = S("W.dilation");
    JetExpr Pv5 = drop_damping(S("V.scaling_shift"));
    JetExpr Pv6 = S("V.dilation");
    JetExpr two_over_beta = sym::num(2) / sym::beta();
    west("P1", S("W.time_translation"), S("V.time_translation"), true);
    west("P2", S("W.space_translation"), S("V.space_translation"), true);
    // the variational scaling/dilation combination: the projection of the
    // hidden-shift multiplier
    west("scaling_dilation_combination", two_over_beta * P3 + P4,
         two_over_beta * Pv5 + Pv6, true);
    // the same combination with the dilation weighted three times fails the
    // determining equation (its defect is 4x the residual); recorded as a
    // negative entry because the printed classification reports it as the
    // variational combination (see the repository notes)
    west("scaling_dilation_printed_weights",
         two_over_beta * P3 + sym::num(3) * P4,
         two_over_beta * Pv5 + sym::num(3) * Pv6, false);
    west("P3", P3, Pv5, false);
    west("P4", P4, Pv6, false);
  }

  // ---- mapping ---------------------------------------------------------------
  add("mapping", "mapping.contact_roundtrip", true, [] {
    return check_contact_roundtrip("mapping.contact_roundtrip");
  });
  add("mapping", "mapping.linearization", true,
      [] { return check_linearization("mapping.linearization"); });
  add("mapping", "mapping.projection_relations", true, [] {
    return check_projection_relations("mapping.projection_relations");
  });
  add("mapping", "mapping.similarity_ode", true,
      [] { return check_similarity_ode("mapping.similarity_ode"); });

  // ---- hamiltonian -----------------------------------------------------------
  add("hamiltonian", "hamiltonian.structure", true,
      [] { return check_hamiltonian("hamiltonian.structure"); });
  add("hamiltonian", "hamiltonian.euler_lagrange", true, [] {
    auto t0 = detail::clock::now();
    JetExpr w = euler_operator(catalog::lagrangian(), Dep::v) -
                equation(EquationName::potential_undamped).residual;
    return detail::make_report("hamiltonian.euler_lagrange", std::move(w), t0);
  });

  return v;
}

}  // namespace detail

inline const std::vector<SuiteEntry>& suite_entries() {
  static const std::vector<SuiteEntry> table = detail::build_suite_entries();
  return table;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "all",        "westervelt", "potential", "recursion",
      "variational", "mapping",    "hamiltonian"};
  return names;
}

// Run one suite (or "all").  Entries execute sequentially in catalog order,
// which is deterministic; each outcome records whether the result agrees
// with the cataloged expectation.
inline std::vector<SuiteOutcome> run_suite(const std::string& which) {
  bool known = false;
  for (const std::string& n : suite_names())
    if (n == which) known = true;
  if (!known)
    throw std::invalid_argument("run_suite: unknown suite " + which);
  std::vector<SuiteOutcome> out;
  for (const SuiteEntry& e : suite_entries()) {
    if (which != "all" && e.suite != which) continue;
    VerifyReport r = e.run();
    bool as_expected = r.passed == e.expect_pass;
    out.push_back(SuiteOutcome{std::move(r), e.expect_pass, as_expected});
  }
  return out;
}

}  // namespace wvlab::verify
