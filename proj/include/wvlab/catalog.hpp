// SPDX-License-Identifier: MIT
#pragma once

// catalog.hpp -- the machine-readable table of every structure this library
// certifies for the nonlinear acoustic wave models: symmetry characteristics,
// conservation-law multipliers and currents, recursion operators, the
// Lagrangian/Hamiltonian pieces, the linearizing contact map, and the
// conserved-integral densities tracked by the numerical monitors.
//
// Every expression is stored exactly (rational coefficients only).  Nothing
// in this file is trusted: the test suite re-verifies each entry through the
// determining identities in verify.hpp before the catalog is considered
// publishable.  Multipliers are normalized so that
//
//     D_t T + D_x Phi == Q * residual          (identically, off-shell)
//
// holds for the residual conventions fixed in calculus.hpp.  Entries whose
// divergence identity is only available on the solution manifold carry
// on_shell = true and store Q = 0.

#include "wvlab/calculus.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wvlab::catalog {

// ---------------------------------------------------------------------------
// Entry types
// ---------------------------------------------------------------------------

// An infinitesimal symmetry in characteristic (evolutionary) form: the flow
// w -> w + eps*expr maps solutions of `equation` to solutions.
struct SymmetryChar {
  std::string id;
  EquationName equation;  // equation whose solution manifold the check uses
  JetExpr expr;           // characteristic function
  int order = 0;          // highest jet order appearing in expr
  bool local = true;      // expressible in finitely many jets of the dependent
  bool undamped_only = false;  // fails when the damping term is present
  std::string tag;        // classification slug (see catalog_json)
  std::string note;       // human-readable meaning
};

// A conservation law D_t T + D_x Phi = Q * residual.  When on_shell is true
// the off-shell multiplier form is not part of the catalog and the identity
// is instead checked as reduce(D_t T + D_x Phi) == 0 on the solution
// manifold; such entries store Q = 0.
struct ConservedCurrent {
  std::string id;
  EquationName equation;
  JetExpr Q;
  JetExpr T;
  JetExpr Phi;
  bool undamped_only = false;
  bool on_shell = false;
  std::string tag;
  std::string note;
};

// First-order recursion operator  denom^{-1} (num_coeff_t * D_t
// + num_coeff_x * D_x).  `westervelt_lifted` stores the inner first-order
// factor of the lifted operator D_t o denom^{-1}(p_x D_t - p_t D_x) o D_t^{-1};
// the outer conjugation by D_t is applied by the callers that need it.
enum class RecursionId { x_translation, dilation, westervelt_lifted };

struct RecursionOp {
  RecursionId id;
  EquationName equation;
  JetExpr num_coeff_t;
  JetExpr num_coeff_x;
  JetExpr denom;

  JetExpr apply(const JetExpr& P) const {
    return (num_coeff_t * D_t(P) + num_coeff_x * D_x(P)) / denom;
  }
};

// The hodograph-type contact transformation linking the undamped potential
// equation (dependent v over (t, x)) with the linear wave equation
// (dependent vstar over the starred plane).  On the starred side the base
// symbols t, x of the jet algebra denote the starred coordinates.
struct ContactMap {
  // forward: starred objects as functions of (t, x, v, v_t, v_x)
  JetExpr t_star, x_star, v_star, v_star_t, v_star_x;
  // inverse: unstarred objects as functions of (t*, x*, vstar, vstar_t, vstar_x)
  JetExpr t_of, x_of, v_of, v_t_of, v_x_of;

  // Substitute the forward components into an expression over
  // {t, x, vstar, vstar[1,0], vstar[0,1]}, producing an expression in v-jets.
  JetExpr pull_back_to_potential(const JetExpr& e) const {
    std::map<int, JetExpr> m;
    m[kIdT] = t_star;
    m[kIdX] = x_star;
    m[indet_id(JetVar{Dep::vstar, 0, 0})] = v_star;
    m[indet_id(JetVar{Dep::vstar, 1, 0})] = v_star_t;
    m[indet_id(JetVar{Dep::vstar, 0, 1})] = v_star_x;
    return e.substitute(m);
  }

  // Substitute the inverse components into an expression over
  // {t, x, v, v[1,0], v[0,1]}, producing an expression in vstar-jets.
  JetExpr pull_back_to_linear(const JetExpr& e) const {
    std::map<int, JetExpr> m;
    m[kIdT] = t_of;
    m[kIdX] = x_of;
    m[indet_id(JetVar{Dep::v, 0, 0})] = v_of;
    m[indet_id(JetVar{Dep::v, 1, 0})] = v_t_of;
    m[indet_id(JetVar{Dep::v, 0, 1})] = v_x_of;
    return e.substitute(m);
  }
};

// ---------------------------------------------------------------------------
// Shared building blocks
// ---------------------------------------------------------------------------

namespace detail {

inline JetExpr b() { return sym::beta(); }
inline JetExpr al() { return sym::alpha(); }
inline JetExpr tt() { return sym::t(); }
inline JetExpr xx() { return sym::x(); }
inline JetExpr P(int a, int bx) { return sym::jet(Dep::p, a, bx); }
inline JetExpr V(int a, int bx) { return sym::jet(Dep::v, a, bx); }
inline JetExpr n(long v) { return sym::num(v); }
inline JetExpr q(long nu, long de) { return sym::frac(nu, de); }

// (beta*v_t - 1/2): the shifted wave amplitude around the degeneracy level.
inline JetExpr S() { return b() * V(1, 0) - q(1, 2); }
// 1 - 2*beta*v_t  and  1 - 2*beta*p
inline JetExpr Bv() { return n(1) - n(2) * b() * V(1, 0); }
inline JetExpr Bp() { return n(1) - n(2) * b() * P(0, 0); }

}  // namespace detail

// Hessian-type Jacobian of the potential-level hodograph map.
inline JetExpr jacobian_potential() {
  using namespace detail;
  return V(2, 0) * V(0, 2) - V(1, 1) * V(1, 1);
}

// The same Jacobian written on the solution manifold in field variables.
inline JetExpr jacobian_westervelt() {
  using namespace detail;
  return Bp() * P(1, 0) * P(1, 0) - P(0, 1) * P(0, 1);
}

// Lagrangian of the undamped potential equation: E_v(L) reproduces its
// residual exactly.
inline JetExpr lagrangian() {
  using namespace detail;
  return q(1, 2) * (V(0, 1) * V(0, 1) - V(1, 0) * V(1, 0)) +
         q(1, 3) * b() * V(1, 0) * V(1, 0) * V(1, 0);
}

// Conjugate momentum of the Legendre transformation, d L / d v_t.
inline JetExpr legendre_momentum() {
  using namespace detail;
  return b() * V(1, 0) * V(1, 0) - V(1, 0);
}

// Hamiltonian density h = (1/2)(v_t^2 + v_x^2) - (2 beta/3) v_t^3,
// the negative of the Legendre transform of the Lagrangian.
inline JetExpr hamiltonian_density() {
  using namespace detail;
  return q(1, 2) * (V(1, 0) * V(1, 0) + V(0, 1) * V(0, 1)) -
         q(2, 3) * b() * V(1, 0) * V(1, 0) * V(1, 0);
}

// ---------------------------------------------------------------------------
// Conserved-integral densities used by the numerical monitors.  These are the
// physically named spatial integrands, written in potential variables with
// p == v_t.  They differ from the corresponding catalog currents by unstated
// numerical rescalings and locally trivial terms, so both forms are tracked.
// ---------------------------------------------------------------------------

// Energy density: (1/2) v_x^2 - (2/3) beta (v_t - 1/(2 beta))^3.
inline JetExpr integrand_E() {
  using namespace detail;
  JetExpr d = V(1, 0) - q(1, 2) / b();
  return q(1, 2) * V(0, 1) * V(0, 1) - q(2, 3) * b() * d * d * d;
}

// Momentum density: (v_t - 1/(2 beta))^2 v_x.
inline JetExpr integrand_M() {
  using namespace detail;
  JetExpr d = V(1, 0) - q(1, 2) / b();
  return d * d * V(0, 1);
}

// Dilation-type energy density:
// t * (energy density) - (beta/5)(7 x v_x - v + t/(2 beta))(v_t - 1/(2 beta))^2.
inline JetExpr integrand_K() {
  using namespace detail;
  JetExpr d = V(1, 0) - q(1, 2) / b();
  return tt() * integrand_E() -
         q(1, 5) * b() * (n(7) * xx() * V(0, 1) - V(0, 0) + q(1, 2) * tt() / b()) * d * d;
}

// Dilation-type momentum density: the entire bracket carries a factor v_x.
// ((1/2) t (v_x^2 - 4 beta d^3) - (3/5) beta (4 x v_x - v + t/(2 beta)) d^2
//  + (16/25) beta^2 x v_x^4) * v_x,  d = v_t - 1/(2 beta).
inline JetExpr integrand_H() {
  using namespace detail;
  JetExpr vx = V(0, 1);
  JetExpr d = V(1, 0) - q(1, 2) / b();
  JetExpr bracket =
      q(1, 2) * tt() * (vx * vx - n(4) * b() * d * d * d) -
      q(3, 5) * b() * (n(4) * xx() * vx - V(0, 0) + q(1, 2) * tt() / b()) * d * d +
      q(16, 25) * b() * b() * xx() * vx * vx * vx * vx;
  return bracket * vx;
}

// Generalized energy-momentum density for a functional parameter f(v_t, v_x):
// the inner antiderivative of (1 - 2 beta v_t) f with respect to v_t.
inline JetExpr integrand_J(const JetExpr& f) {
  using namespace detail;
  return t_antiderivative(Bv() * f, JetVar{Dep::v, 1, 0});
}

// ---------------------------------------------------------------------------
// Symmetry catalog
// ---------------------------------------------------------------------------

namespace detail {

inline int max_jet_order(const JetExpr& e, Dep dep) {
  int best = 0;
  for (const JetVar& w : jet_support(e, dep)) {
    best = std::max(best, w.t_order + w.x_order);
  }
  return best;
}

inline SymmetryChar make_sym(std::string id, EquationName eq, JetExpr expr,
                             bool undamped_only, std::string tag,
                             std::string note) {
  Dep dep = equation(eq).leading.dep;
  SymmetryChar s;
  s.id = std::move(id);
  s.equation = eq;
  s.order = max_jet_order(expr, dep);
  s.expr = std::move(expr);
  s.local = true;
  s.undamped_only = undamped_only;
  s.tag = std::move(tag);
  s.note = std::move(note);
  return s;
}

// Characteristics of the field-level Lie point symmetries.
inline JetExpr field_P1() { return JetExpr() - P(1, 0); }
inline JetExpr field_P2() { return JetExpr() - P(0, 1); }
inline JetExpr field_P3() {
  return n(1) - n(2) * b() * P(0, 0) - n(2) * b() * tt() * P(1, 0) -
         n(3) * b() * xx() * P(0, 1);
}
inline JetExpr field_P4() { return JetExpr() - tt() * P(1, 0) - xx() * P(0, 1); }

// Characteristics of the potential-level Lie point symmetries.
inline JetExpr pot_P1() { return n(1); }
inline JetExpr pot_P2() { return xx(); }
inline JetExpr pot_P3() { return JetExpr() - V(1, 0); }
inline JetExpr pot_P4() { return JetExpr() - V(0, 1); }
inline JetExpr pot_P5() {
  return tt() - n(2) * b() * tt() * V(1, 0) - n(3) * b() * xx() * V(0, 1);
}
inline JetExpr pot_P6() {
  return V(0, 0) - tt() * V(1, 0) - xx() * V(0, 1);
}
// Scaling-shift combination whose recursion orbit stays free of t and x.
inline JetExpr pot_P5_core() {
  return tt() - n(3) * b() * V(0, 0) + b() * tt() * V(1, 0);
}

// Second member of the dilation chain: -v_tt / |J|.
inline JetExpr pot_chain_dil_2() {
  return (JetExpr() - V(2, 0)) / jacobian_potential();
}
// First member of the scaling chain: ((1-2 beta v_t) v_tx + 3 beta v_x v_tt)/|J|.
inline JetExpr pot_chain_scal_1() {
  return (Bv() * V(1, 1) + n(3) * b() * V(0, 1) * V(2, 0)) / jacobian_potential();
}
// Third member of the dilation chain (variational).
inline JetExpr pot_chain_dil_3() {
  JetExpr vtt = V(2, 0), vtx = V(1, 1), vtxx = V(1, 2), vttx = V(2, 1);
  JetExpr num = vtx * vtx * vtx * V(3, 0) - n(3) * vtt * vtx * vtx * vttx +
                n(3) * vtt * vtt * vtx * vtxx - vtt * vtt * vtt * V(0, 3);
  JetExpr J = jacobian_potential();
  return num / (J * J * J);
}

// Second-order member of the lifted field-level hierarchy.
inline JetExpr field_chain_2() {
  JetExpr pt = P(1, 0), px = P(0, 1), ptt = P(2, 0), ptx = P(1, 1);
  JetExpr J = jacobian_westervelt();
  JetExpr A = Bp() * pt * pt + px * px;
  JetExpr num = A * ptt - n(2) * pt * px * ptx - n(2) * b() * pt * pt * pt * pt;
  return num / (J * J);
}

// Third-order member of the lifted field-level hierarchy.
inline JetExpr field_chain_3() {
  JetExpr pt = P(1, 0), px = P(0, 1), ptt = P(2, 0), ptx = P(1, 1);
  JetExpr pttt = P(3, 0), pttx = P(2, 1);
  JetExpr B = Bp();
  JetExpr J = jacobian_westervelt();
  JetExpr pt2 = pt * pt, px2 = px * px;
  JetExpr head =
      (px * (n(3) * B * pt2 + px2) * pttt - pt * (B * pt2 + n(3) * px2) * pttx) /
      (J * J * J);
  JetExpr tail =
      (JetExpr() - n(12) * pt * px * (B * pt2 + px2) * (B * ptt * ptt + ptx * ptx) +
       n(6) * (B * B * pt2 * pt2 + n(6) * B * pt2 * px2 + px2 * px2) * ptx * ptt +
       n(4) * b() * pt2 * pt * px * (n(5) * B * pt2 + n(7) * px2) * ptt -
       n(8) * b() * pt2 * pt2 * (B * pt2 + n(5) * px2) * ptx -
       n(24) * b() * b() * pt2 * pt2 * pt2 * pt * px) /
      (J * J * J * J);
  return head + tail;
}

}  // namespace detail

// Master list of cataloged symmetries, keyed to the equation variant whose
// solution manifold verifies them.  Entries that survive damping are listed
// against the damped equation; get_symmetries re-keys them when the undamped
// variant is requested.
inline const std::vector<SymmetryChar>& all_symmetries() {
  using namespace detail;
  static const std::vector<SymmetryChar> table = [] {
    std::vector<SymmetryChar> v;
    // --- field level ---
    v.push_back(make_sym("W.time_translation", EquationName::westervelt_damped,
                         field_P1(), false, "lie-point", "time translation"));
    v.push_back(make_sym("W.space_translation", EquationName::westervelt_damped,
                         field_P2(), false, "lie-point", "space translation"));
    v.push_back(make_sym("W.scaling_shift", EquationName::westervelt_damped,
                         field_P3(), false, "lie-point",
                         "scaling combined with an amplitude shift"));
    v.push_back(make_sym("W.dilation", EquationName::westervelt_undamped,
                         field_P4(), true, "lie-point", "space-time dilation"));
    v.push_back(make_sym("W.lifted_chain_2", EquationName::westervelt_undamped,
                         field_chain_2(), true, "recursion-hierarchy",
                         "second-order member of the lifted recursion hierarchy"));
    v.push_back(make_sym("W.lifted_chain_3", EquationName::westervelt_undamped,
                         field_chain_3(), true, "recursion-hierarchy",
                         "third-order member of the lifted recursion hierarchy"));
    // --- potential level ---
    v.push_back(make_sym("V.const_shift", EquationName::potential_damped,
                         pot_P1(), false, "lie-point",
                         "constant shift of the potential (hidden at field level)"));
    v.push_back(make_sym("V.linear_shift", EquationName::potential_damped,
                         pot_P2(), false, "lie-point",
                         "x-linear shift of the potential (hidden at field level)"));
    v.push_back(make_sym("V.time_translation", EquationName::potential_damped,
                         pot_P3(), false, "lie-point", "time translation"));
    v.push_back(make_sym("V.space_translation", EquationName::potential_damped,
                         pot_P4(), false, "lie-point", "space translation"));
    v.push_back(make_sym("V.scaling_shift", EquationName::potential_damped,
                         pot_P5(), false, "lie-point",
                         "scaling combined with an amplitude shift"));
    v.push_back(make_sym("V.dilation", EquationName::potential_undamped,
                         pot_P6(), true, "lie-point", "space-time dilation"));
    v.push_back(make_sym("V.scaling_shift_core", EquationName::potential_undamped,
                         pot_P5_core(), true, "lie-point-combination",
                         "scaling-shift minus 3*beta times the dilation"));
    v.push_back(make_sym("V.dilation_chain_2", EquationName::potential_undamped,
                         pot_chain_dil_2(), true, "recursion-hierarchy",
                         "second member of the dilation recursion chain"));
    v.push_back(make_sym("V.scaling_chain_1", EquationName::potential_undamped,
                         pot_chain_scal_1(), true, "recursion-hierarchy",
                         "first member of the scaling recursion chain"));
    v.push_back(make_sym("V.dilation_chain_3", EquationName::potential_undamped,
                         pot_chain_dil_3(), true, "recursion-hierarchy",
                         "third member of the dilation recursion chain (variational)"));
    {
      // Second member of the scaling chain: one further application of the
      // x-translation recursion operator, stored as its on-shell normal form.
      JetExpr raw = (V(1, 1) * D_t(pot_chain_scal_1()) -
                     V(2, 0) * D_x(pot_chain_scal_1())) /
                    jacobian_potential();
      JetExpr reduced = reduce_to_solution_manifold(
          raw, EquationName::potential_undamped);
      v.push_back(make_sym("V.scaling_chain_2", EquationName::potential_undamped,
                           reduced, true, "recursion-hierarchy",
                           "second member of the scaling recursion chain"));
    }
    return v;
  }();
  return table;
}

// ---------------------------------------------------------------------------
// Current catalog
// ---------------------------------------------------------------------------

namespace detail {

inline ConservedCurrent make_cur(std::string id, EquationName eq, JetExpr Q,
                                 JetExpr T, JetExpr Phi, bool undamped_only,
                                 bool on_shell, std::string tag,
                                 std::string note) {
  ConservedCurrent c;
  c.id = std::move(id);
  c.equation = eq;
  c.Q = std::move(Q);
  c.T = std::move(T);
  c.Phi = std::move(Phi);
  c.undamped_only = undamped_only;
  c.on_shell = on_shell;
  c.tag = std::move(tag);
  c.note = std::move(note);
  return c;
}

// Field-level density shared by the first four currents.
inline JetExpr field_T1() { return Bp() * P(1, 0) - al() * P(2, 0); }
inline JetExpr field_T3() {
  return tt() * field_T1() - (n(1) - b() * P(0, 0)) * P(0, 0) + al() * P(1, 0);
}

// Rational density/flux pair closing the low-order field-level list.
inline JetExpr field_T5() {
  JetExpr pt = P(1, 0), px = P(0, 1);
  return px / (px * px - Bp() * pt * pt);
}
inline JetExpr field_Phi5() {
  JetExpr pt = P(1, 0), px = P(0, 1);
  return pt / (px * px - Bp() * pt * pt);
}
inline JetExpr field_Q5() {
  JetExpr pt = P(1, 0), px = P(0, 1);
  JetExpr den = px * px - Bp() * pt * pt;
  return n(2) * pt * px / (den * den);
}

// Sixth-order-hierarchy current at field level (density and flux).
inline JetExpr field_T6() {
  JetExpr pt = P(1, 0), px = P(0, 1), ptt = P(2, 0), ptx = P(1, 1);
  JetExpr B = Bp();
  JetExpr pt2 = pt * pt, px2 = px * px;
  JetExpr A = B * pt2 + px2;
  JetExpr Bm = B * pt2 - px2;
  JetExpr Bm5 = Bm * Bm * Bm * Bm * Bm;
  JetExpr B4 = B * B * B * B;
  JetExpr head =
      q(1, 2) *
      (px * (n(5) * A * A - n(4) * px2 * px2) * (B * ptt * ptt + ptx * ptx) -
       n(2) * pt * (n(5) * A * A - n(4) * B * B * pt2 * pt2) *
           (B * ptt - n(2) * b() * pt2) * ptx -
       n(8) * b() * B * px * pt2 * pt2 * (n(3) * B * pt2 + n(5) * px2) * ptt +
       n(4) * b() * b() * px * pt2 * pt2 * pt2 * (n(7) * B * pt2 + n(5) * px2)) /
      Bm5;
  JetExpr tail1 =
      n(4) * b() * px * (B * ptt - n(2) * b() * pt2) / (B4 * pt2 * pt2);
  JetExpr tail2 = n(8) * b() * px2 * (B * ptx - n(2) * b() * px * pt) /
                  (B4 * B * pt2 * pt2 * pt);
  return head + tail1 - tail2;
}

inline JetExpr field_Phi6() {
  JetExpr pt = P(1, 0), px = P(0, 1), ptt = P(2, 0), ptx = P(1, 1);
  JetExpr B = Bp();
  JetExpr pt2 = pt * pt, px2 = px * px;
  JetExpr A = B * pt2 + px2;
  JetExpr Bm = B * pt2 - px2;
  JetExpr Bm5 = Bm * Bm * Bm * Bm * Bm;
  JetExpr B4 = B * B * B * B;
  JetExpr head =
      q(1, 2) *
      (pt * (n(5) * A * A - n(4) * B * B * pt2 * pt2) *
           (B * ptt * ptt + ptx * ptx - n(4) * b() * pt2 * ptt) -
       n(2) * px * (n(5) * A * A - n(4) * px2 * px2) * ptx * ptt +
       n(8) * b() * px * pt2 * pt2 * (n(3) * B * pt2 + n(5) * px2) * ptx +
       n(4) * b() * b() * pt2 * pt2 * pt2 * pt * (B * pt2 + n(11) * px2)) /
      Bm5;
  JetExpr tail1 = n(4) * b() * px * ptx / (B4 * pt2 * pt2);
  JetExpr tail2 = n(8) * b() * px2 * (B * ptt - n(2) * b() * pt2) /
                  (B4 * B * pt2 * pt2 * pt);
  return head - tail1 + tail2;
}

// Potential-level densities.
inline JetExpr pot_T1() { return (S() * S()) / b() + al() * V(2, 0); }

inline JetExpr pot_Q3() {
  return q(2, 1) * tt() / b() + V(0, 0) - n(5) * tt() * V(1, 0) -
         n(7) * xx() * V(0, 1);
}
inline JetExpr pot_T3() {
  JetExpr s = S();
  JetExpr vx = V(0, 1);
  return tt() * (q(10, 3) * s * s * s / (b() * b()) - q(5, 2) * vx * vx) +
         n(7) * xx() * s * s * vx / b() -
         s * s * (V(0, 0) - q(1, 2) * tt() / b()) / b();
}
inline JetExpr pot_Phi3() {
  JetExpr s = S();
  JetExpr vx = V(0, 1);
  return n(5) * tt() * s * vx / b() +
         xx() * (q(7, 2) * vx * vx - q(7, 3) * s * s * s / (b() * b())) -
         vx * (V(0, 0) - q(1, 2) * tt() / b());
}

inline JetExpr pot_Q4() {
  JetExpr s = S();
  return (q(2, 1) * tt() / b() + V(0, 0) - n(5) * tt() * V(1, 0)) * V(0, 1) -
         n(4) * xx() * (V(0, 1) * V(0, 1) - q(2, 3) * s * s * s / (b() * b()));
}
inline JetExpr pot_T4() {
  JetExpr s = S();
  JetExpr vx = V(0, 1);
  JetExpr b2 = b() * b();
  return tt() * (q(10, 3) * s * s * s * vx / b2 - q(5, 6) * vx * vx * vx) +
         n(4) * xx() * s * s * (vx * vx - q(4, 15) * s * s * s / b2) / b() -
         s * s * vx * (V(0, 0) - q(1, 2) * tt() / b()) / b();
}
inline JetExpr pot_Phi4() {
  JetExpr s = S();
  JetExpr vx = V(0, 1);
  JetExpr b2 = b() * b();
  return tt() * (q(5, 2) * s * vx * vx / b() - q(5, 6) * s * s * s * s / (b2 * b())) +
         xx() * (q(4, 3) * vx * vx * vx - q(8, 3) * s * s * s * vx / b2) +
         (q(1, 3) * s * s * s / b2 - q(1, 2) * vx * vx) *
             (V(0, 0) - q(1, 2) * tt() / b());
}

inline JetExpr pot_T5a() {
  JetExpr s = S();
  return q(1, 2) * V(0, 1) * V(0, 1) - q(2, 3) * s * s * s / (b() * b());
}
inline JetExpr pot_Phi5a() {
  return JetExpr() - (V(1, 0) - q(1, 2) / b()) * V(0, 1);
}
// Density of the odd-momentum current.  The companion flux fixes the single
// power of 1/beta here; the printed square of it does not close the
// divergence identity (see the repository notes).
inline JetExpr pot_T5b() { return S() * S() * V(0, 1) / b(); }
inline JetExpr pot_Phi5b() {
  JetExpr s = S();
  return q(1, 2) * V(0, 1) * V(0, 1) - q(1, 3) * s * s * s / (b() * b());
}

}  // namespace detail

inline const std::vector<ConservedCurrent>& all_currents() {
  using namespace detail;
  static const std::vector<ConservedCurrent> table = [] {
    std::vector<ConservedCurrent> v;
    // --- field level ---
    v.push_back(make_cur("W.c1", EquationName::westervelt_damped, n(1),
                         field_T1(), JetExpr() - P(0, 1), false, false,
                         "low-order-multiplier",
                         "net mass displacement rate"));
    v.push_back(make_cur("W.c2", EquationName::westervelt_damped, xx(),
                         xx() * field_T1(), P(0, 0) - xx() * P(0, 1), false,
                         false, "low-order-multiplier",
                         "x-weighted mass displacement rate"));
    v.push_back(make_cur("W.c3", EquationName::westervelt_damped, tt(),
                         field_T3(), JetExpr() - tt() * P(0, 1), false, false,
                         "low-order-multiplier", "net mass displacement"));
    v.push_back(make_cur("W.c4", EquationName::westervelt_damped,
                         tt() * xx(), xx() * field_T3(),
                         tt() * (P(0, 0) - xx() * P(0, 1)), false, false,
                         "low-order-multiplier",
                         "x-weighted mass displacement"));
    v.push_back(make_cur("W.c5", EquationName::westervelt_undamped, field_Q5(),
                         field_T5(), field_Phi5(), true, false,
                         "low-order-multiplier",
                         "rational density outside the kinematic family"));
    v.push_back(make_cur("W.c6", EquationName::westervelt_undamped, JetExpr(),
                         field_T6(), field_Phi6(), true, true,
                         "recursion-hierarchy",
                         "next rational current in the recursion hierarchy"));
    // --- potential level ---
    v.push_back(make_cur("V.c1", EquationName::potential_damped,
                         JetExpr() - n(1), pot_T1(), V(0, 1), false, false,
                         "low-order-multiplier", "mass density (made local)"));
    v.push_back(make_cur("V.c2", EquationName::potential_damped,
                         JetExpr() - xx(), xx() * pot_T1(),
                         xx() * V(0, 1) - V(0, 0), false, false,
                         "low-order-multiplier",
                         "x-weighted mass density (made local)"));
    v.push_back(make_cur("V.c3", EquationName::potential_undamped,
                         pot_Q3(), pot_T3(), pot_Phi3(), true,
                         false, "low-order-multiplier",
                         "dilation-type energy current"));
    v.push_back(make_cur("V.c4", EquationName::potential_undamped,
                         pot_Q4(), pot_T4(), pot_Phi4(), true,
                         false, "low-order-multiplier",
                         "dilation-type momentum current"));
    v.push_back(make_cur("V.c5a", EquationName::potential_undamped,
                         V(1, 0) - q(1, 2) / b(), pot_T5a(), pot_Phi5a(), true,
                         false, "functional-family", "energy current"));
    v.push_back(make_cur("V.c5b", EquationName::potential_undamped,
                         JetExpr() - V(0, 1), pot_T5b(), pot_Phi5b(), true,
                         false, "functional-family", "momentum current"));
    {
      JetExpr J = jacobian_potential();
      v.push_back(make_cur("V.hier3", EquationName::potential_undamped,
                           JetExpr(), V(1, 1) / J, V(2, 0) / J, true, true,
                           "recursion-hierarchy",
                           "current of the third dilation-chain member"));
    }
    return v;
  }();
  return table;
}

// ---------------------------------------------------------------------------
// Per-equation views
// ---------------------------------------------------------------------------

namespace detail {

inline bool same_family(EquationName a, EquationName b) {
  auto fam = [](EquationName n) {
    switch (n) {
      case EquationName::westervelt_damped:
      case EquationName::westervelt_undamped:
        return 0;
      case EquationName::potential_damped:
      case EquationName::potential_undamped:
        return 1;
      default:
        return 2;
    }
  };
  return fam(a) == fam(b) && fam(a) != 2;
}

inline bool is_undamped(EquationName n) {
  return n == EquationName::westervelt_undamped ||
         n == EquationName::potential_undamped;
}

inline JetExpr drop_damping(const JetExpr& e) {
  std::map<int, JetExpr> m;
  m[kIdAlpha] = JetExpr();
  return e.substitute(m);
}

}  // namespace detail

// Catalog entries valid for the requested equation, re-keyed to it.  For an
// undamped variant, damping-robust entries are specialized by alpha -> 0.
// Equations outside the two cataloged families have no entries.
inline std::vector<SymmetryChar> get_symmetries(EquationName eq) {
  std::vector<SymmetryChar> out;
  for (const SymmetryChar& s : all_symmetries()) {
    if (!detail::same_family(s.equation, eq)) continue;
    if (!detail::is_undamped(eq) && s.undamped_only) continue;
    SymmetryChar copy = s;
    copy.equation = eq;
    if (detail::is_undamped(eq)) copy.expr = detail::drop_damping(copy.expr);
    out.push_back(std::move(copy));
  }
  return out;
}

inline std::vector<ConservedCurrent> get_currents(EquationName eq) {
  std::vector<ConservedCurrent> out;
  for (const ConservedCurrent& c : all_currents()) {
    if (!detail::same_family(c.equation, eq)) continue;
    if (!detail::is_undamped(eq) && c.undamped_only) continue;
    ConservedCurrent copy = c;
    copy.equation = eq;
    if (detail::is_undamped(eq)) {
      copy.Q = detail::drop_damping(copy.Q);
      copy.T = detail::drop_damping(copy.T);
      copy.Phi = detail::drop_damping(copy.Phi);
    }
    out.push_back(std::move(copy));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Functional family of potential-level currents
// ---------------------------------------------------------------------------

// Build the conserved current generated by a polynomial f(v_t, v_x) solving
// the characteristic linear equation f_{v_t v_t} = (1 - 2 beta v_t) f_{v_x v_x}.
// The antiderivative construction fixes integration "constants" (functions of
// v_x alone) so that the divergence identity
//     D_t T + D_x Phi == f * residual
// holds exactly off-shell; the result is locally equivalent to the printed
// special cases for f = v_t - 1/(2 beta) and f = v_x.
inline ConservedCurrent instantiate_f_current(const JetExpr& f) {
  using namespace detail;
  const JetVar vt{Dep::v, 1, 0};
  const JetVar vx{Dep::v, 0, 1};
  const int id_vt = indet_id(vt);

  // The parameter must be a function of v_t, v_x, and beta alone.
  for (int id : f.support()) {
    if (id < kNumBase) {
      if (id != kIdBeta)
        throw std::invalid_argument(
            "instantiate_f_current: parameter must depend on v_t and v_x only");
      continue;
    }
    JetVar w = jetvar_of_id(id);
    if (w.dep != Dep::v || !((w.t_order == 1 && w.x_order == 0) ||
                             (w.t_order == 0 && w.x_order == 1))) {
      throw std::invalid_argument(
          "instantiate_f_current: parameter must depend on v_t and v_x only");
    }
  }
  for (const auto& [factor, mult] : f.denominator_factors()) {
    (void)mult;
    for (int id : factor.support()) {
      if (id >= kNumBase) {
        throw std::invalid_argument(
            "instantiate_f_current: parameter must be polynomial in v_t, v_x");
      }
    }
  }
  JetExpr defect = partial(partial(f, id_vt), id_vt) -
                   Bv() * partial(partial(f, indet_id(vx)), indet_id(vx));
  if (!defect.is_zero()) {
    throw std::invalid_argument(
        "instantiate_f_current: parameter fails the characteristic equation "
        "f_{v_t v_t} = (1 - 2 beta v_t) f_{v_x v_x}");
  }

  std::map<int, JetExpr> at_vt0;
  at_vt0[id_vt] = JetExpr();
  JetExpr f0 = f.substitute(at_vt0);
  JetExpr fvt0 = partial(f, id_vt).substitute(at_vt0);
  JetExpr fvx = partial(f, indet_id(vx));

  JetExpr T = t_antiderivative(Bv() * f, vt) +
              t_antiderivative(t_antiderivative(fvt0, vx), vx);
  JetExpr Phi = t_antiderivative(Bv() * V(1, 0) * fvx, vt) -
                V(1, 0) * t_antiderivative(Bv() * fvx, vt) -
                V(1, 0) * t_antiderivative(fvt0, vx) -
                t_antiderivative(f0, vx);

  ConservedCurrent c;
  c.id = "V.functional(" + to_string(f) + ")";
  c.equation = EquationName::potential_undamped;
  c.Q = f;
  c.T = T;
  c.Phi = Phi;
  c.undamped_only = true;
  c.on_shell = false;
  c.tag = "functional-family";
  c.note = "current generated by a solution of the characteristic linear equation";
  return c;
}

// ---------------------------------------------------------------------------
// Recursion operators and the contact map
// ---------------------------------------------------------------------------

inline const RecursionOp& get_recursion(RecursionId id) {
  using namespace detail;
  static const RecursionOp x_transl = [] {
    RecursionOp r;
    r.id = RecursionId::x_translation;
    r.equation = EquationName::potential_undamped;
    r.num_coeff_t = V(1, 1);
    r.num_coeff_x = JetExpr() - V(2, 0);
    r.denom = jacobian_potential();
    return r;
  }();
  static const RecursionOp dil = [] {
    RecursionOp r;
    r.id = RecursionId::dilation;
    r.equation = EquationName::potential_undamped;
    JetExpr inv_b = n(1) / b();
    r.num_coeff_t =
        JetExpr() - (n(3) * V(0, 1) * V(1, 1) + (inv_b - n(2) * V(1, 0)) * V(0, 2));
    r.num_coeff_x =
        n(3) * V(0, 1) * V(2, 0) + (inv_b - n(2) * V(1, 0)) * V(1, 1);
    r.denom = jacobian_potential();
    return r;
  }();
  static const RecursionOp lifted = [] {
    RecursionOp r;
    r.id = RecursionId::westervelt_lifted;
    r.equation = EquationName::westervelt_undamped;
    r.num_coeff_t = P(0, 1);
    r.num_coeff_x = JetExpr() - P(1, 0);
    r.denom = jacobian_westervelt();
    return r;
  }();
  switch (id) {
    case RecursionId::x_translation: return x_transl;
    case RecursionId::dilation: return dil;
    case RecursionId::westervelt_lifted: return lifted;
  }
  throw std::invalid_argument("get_recursion: unknown id");
}

// k-fold raw application; intermediate results are kept in engine-canonical
// form, which reproduces the cataloged chain members exactly.
inline JetExpr apply_recursion(const RecursionOp& r, JetExpr P, int k) {
  if (k < 0) throw std::invalid_argument("apply_recursion: negative count");
  for (int i = 0; i < k; ++i) P = r.apply(P);
  return P;
}

inline const ContactMap& contact_map() {
  using namespace detail;
  static const ContactMap m = [] {
    ContactMap c;
    c.t_star = V(1, 0);
    c.x_star = V(0, 1);
    c.v_star = V(0, 0) - tt() * V(1, 0) - xx() * V(0, 1);
    c.v_star_t = JetExpr() - tt();
    c.v_star_x = JetExpr() - xx();
    JetExpr ws = sym::jet(Dep::vstar, 0, 0);
    JetExpr wst = sym::jet(Dep::vstar, 1, 0);
    JetExpr wsx = sym::jet(Dep::vstar, 0, 1);
    c.t_of = JetExpr() - wst;
    c.x_of = JetExpr() - wsx;
    c.v_of = ws - tt() * wst - xx() * wsx;
    c.v_t_of = tt();
    c.v_x_of = xx();
    return c;
  }();
  return m;
}

// The deterministic JSON snapshot of the catalog lives in catalog_json.hpp
// (catalog::catalog_json()) to keep the serializer dependency out of
// expression-level translation units.

}  // namespace wvlab::catalog
