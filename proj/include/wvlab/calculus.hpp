// SPDX-License-Identifier: MIT
//
// Differential calculus on jet-space expressions: total derivatives, Euler
// operators (plain and derivative-shifted), evolutionary prolongation,
// reduction onto a solution manifold, formal adjoints of linear operators,
// and single-variable antiderivatives.  All operations are exact.

#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "wvlab/jetspace.hpp"

namespace wvlab {

// ---- Directions --------------------------------------------------------------

enum class Axis { T, X };

// ---- Plain partial derivative -------------------------------------------------

// d e / d(indeterminate id), treating every other indeterminate as constant.
inline JetExpr partial(const JetExpr& e, int id) {
  JetExpr r = JetExpr::from_poly(e.numerator().partial(id));
  for (const auto& [f, m] : e.denominator_factors())
    r = r / JetExpr::from_poly(f).pow(m);
  for (const auto& [f, m] : e.denominator_factors()) {
    Poly df = f.partial(id);
    if (df.is_zero()) continue;
    r = r - JetExpr::from_int(m) * e * JetExpr::from_poly(df) / JetExpr::from_poly(f);
  }
  return r;
}

inline JetExpr partial(const JetExpr& e, const JetVar& w) {
  return partial(e, indet_id(w));
}

// ---- Total derivative ----------------------------------------------------------

// D of a single indeterminate along an axis.  Base symbols: t and zeta move
// under the first axis, x under the second; alpha, beta, z are constants.
// A jet variable w[a,b] moves to w[a+1,b] or w[a,b+1].
inline JetExpr total_derivative_of_indet(int id, Axis dir) {
  switch (id) {
    case kIdAlpha:
    case kIdBeta:
    case kIdZ:
      return JetExpr();
    case kIdT: return dir == Axis::T ? JetExpr::from_int(1) : JetExpr();
    case kIdZeta: return dir == Axis::T ? JetExpr::from_int(1) : JetExpr();
    case kIdX: return dir == Axis::X ? JetExpr::from_int(1) : JetExpr();
    default: break;
  }
  JetVar w = jetvar_of_id(id);
  int a = w.t_order + (dir == Axis::T ? 1 : 0);
  int b = w.x_order + (dir == Axis::X ? 1 : 0);
  return JetExpr::var(w.dep, a, b);  // JetVar construction enforces the cap
}

inline Poly total_derivative_poly(const Poly& p, Axis dir);

// Total derivative D_t or D_x of a rational expression (chain and quotient
// rules).  Differentiating past the order cap is a hard error raised by
// jet-variable construction.
inline JetExpr total_derivative(const JetExpr& e, Axis dir) {
  // numerator part over the existing denominator
  JetExpr r = JetExpr::from_poly(total_derivative_poly(e.numerator(), dir));
  for (const auto& [f, m] : e.denominator_factors())
    r = r / JetExpr::from_poly(f).pow(m);
  // quotient rule: - e * sum_i m_i * Df_i / f_i
  for (const auto& [f, m] : e.denominator_factors()) {
    Poly df = total_derivative_poly(f, dir);
    if (df.is_zero()) continue;
    r = r - JetExpr::from_int(m) * e * JetExpr::from_poly(df) / JetExpr::from_poly(f);
  }
  return r;
}

inline Poly total_derivative_poly(const Poly& p, Axis dir) {
  // termwise product rule; stays polynomial because D of an indeterminate is
  // an indeterminate or a constant
  Poly out;
  for (const auto& m : p.terms()) {
    for (size_t i = 0; i < m.pw.size(); ++i) {
      JetExpr dx = total_derivative_of_indet(m.pw[i].first, dir);
      if (dx.is_zero()) continue;
      Monomial rest = m;
      rest.c *= m.pw[i].second;
      if (rest.pw[i].second == 1) rest.pw.erase(rest.pw.begin() + i);
      else rest.pw[i].second -= 1;
      std::vector<Monomial> one{rest};
      Poly piece = Poly::from_terms(std::move(one)) * dx.numerator();
      out = out + piece;  // dx is 1 or a bare indeterminate: no denominator
    }
  }
  return out;
}

inline JetExpr D_t(const JetExpr& e) { return total_derivative(e, Axis::T); }
inline JetExpr D_x(const JetExpr& e) { return total_derivative(e, Axis::X); }

inline JetExpr iterated_derivative(JetExpr e, int t_times, int x_times) {
  for (int i = 0; i < t_times; ++i) e = D_t(e);
  for (int i = 0; i < x_times; ++i) e = D_x(e);
  return e;
}

// ---- Euler operators -----------------------------------------------------------

// Jet variables of `dep` occurring anywhere in e.
inline std::vector<JetVar> jet_support(const JetExpr& e, Dep dep) {
  std::vector<JetVar> ws;
  for (int id : e.support())
    if (is_jet_id(id)) {
      JetVar w = jetvar_of_id(id);
      if (w.dep == dep) ws.push_back(w);
    }
  return ws;
}

// Derivative-shifted Euler operator
//   E^{(r,s)}_w(e) = sum_{a,b >= 0} (-D_t)^a (-D_x)^b  d e / d w[r+a, s+b].
// (r,s) = (0,0) is the variational derivative, which annihilates exactly the
// total divergences.  (r,s) = (1,0) and (2,0) recover multipliers from
// conserved densities.
inline JetExpr euler_operator(const JetExpr& e, Dep dep, int t_shift = 0,
                              int x_shift = 0) {
  JetExpr acc;
  for (const JetVar& w : jet_support(e, dep)) {
    int a = w.t_order - t_shift, b = w.x_order - x_shift;
    if (a < 0 || b < 0) continue;
    JetExpr term = iterated_derivative(partial(e, w), a, b);
    if (((a + b) & 1) != 0) term = -term;
    acc = acc + term;
  }
  return acc;
}

// ---- Evolutionary prolongation --------------------------------------------------

// pr P (e) = sum_{a,b} D_t^a D_x^b (P) * d e / d w[a,b]  over the jet
// variables of `dep` in e: the Frechet derivative of e along the flow
// w -> w + eps P.
inline JetExpr prolong_evolutionary(const JetExpr& P, const JetExpr& e, Dep dep) {
  std::map<std::pair<int, int>, JetExpr> dmemo;
  std::function<const JetExpr&(int, int)> dP = [&](int a, int b) -> const JetExpr& {
    auto it = dmemo.find({a, b});
    if (it != dmemo.end()) return it->second;
    JetExpr val;
    if (a == 0 && b == 0) val = P;
    else if (b > 0) val = D_x(dP(a, b - 1));
    else val = D_t(dP(a - 1, 0));
    return dmemo.emplace(std::make_pair(a, b), std::move(val)).first->second;
  };
  JetExpr acc;
  for (const JetVar& w : jet_support(e, dep))
    acc = acc + dP(w.t_order, w.x_order) * partial(e, w);
  return acc;
}

// ---- Equations and solution-manifold reduction ----------------------------------

enum class EquationName {
  westervelt_damped,
  westervelt_undamped,
  potential_damped,
  potential_undamped,
  linear_wave,
  f_equation,
};

inline const char* equation_name_str(EquationName n) {
  switch (n) {
    case EquationName::westervelt_damped: return "westervelt_damped";
    case EquationName::westervelt_undamped: return "westervelt_undamped";
    case EquationName::potential_damped: return "potential_damped";
    case EquationName::potential_undamped: return "potential_undamped";
    case EquationName::linear_wave: return "linear_wave";
    case EquationName::f_equation: return "f_equation";
  }
  throw std::invalid_argument("equation_name_str: unknown equation");
}

// The elimination axis of a leading variable: the time slot when it carries
// any time derivatives, otherwise the space slot.
inline Axis leading_axis(const JetVar& lead) {
  return lead.t_order > 0 ? Axis::T : Axis::X;
}

inline int axis_order(const JetVar& w, Axis a) {
  return a == Axis::T ? w.t_order : w.x_order;
}

// A PDE in solved form: residual == 0 rewritten as leading = rewrite.
// Invariants (checked on construction): substituting the rewrite for the
// leading variable annihilates the residual, and the rewrite contains no
// variable of the same dependent at or above the leading order along the
// elimination axis.
struct EquationSpec {
  EquationName name;
  JetExpr residual;
  JetVar leading;
  JetExpr rewrite;

  EquationSpec(EquationName n, JetExpr res, JetVar lead, JetExpr rw)
      : name(n), residual(std::move(res)), leading(lead), rewrite(std::move(rw)) {
    std::map<int, JetExpr> bind{{indet_id(leading), rewrite}};
    if (!residual.substitute(bind).is_zero())
      throw std::invalid_argument(
          "EquationSpec: rewrite does not solve the residual for the leading "
          "variable");
    Axis ax = leading_axis(leading);
    int L = axis_order(leading, ax);
    for (const JetVar& w : jet_support(rewrite, leading.dep))
      if (axis_order(w, ax) >= L)
        throw std::invalid_argument(
            "EquationSpec: rewrite still contains a leading-order variable");
  }
};

// The six named equations.  alpha is the damping parameter, beta the
// nonlinearity parameter; p is the acoustic field, v its time potential
// (p = v_t), vstar the contact-transformed potential on starred coordinates,
// f a function of the two first derivatives (v_t, v_x) reusing the axis
// slots in that order.
inline const EquationSpec& equation(EquationName n) {
  using namespace sym;
  static const EquationSpec wd{
      EquationName::westervelt_damped,
      parse("(1 - 2*beta*p)*p[2,0] - 2*beta*p[1,0]^2 - alpha*p[3,0] - p[0,2]"),
      JetVar(Dep::p, 3, 0),
      parse("((1 - 2*beta*p)*p[2,0] - 2*beta*p[1,0]^2 - p[0,2])/alpha")};
  static const EquationSpec wu{
      EquationName::westervelt_undamped,
      parse("(1 - 2*beta*p)*p[2,0] - 2*beta*p[1,0]^2 - p[0,2]"),
      JetVar(Dep::p, 2, 0),
      parse("(2*beta*p[1,0]^2 + p[0,2])/(1 - 2*beta*p)")};
  static const EquationSpec pd{
      EquationName::potential_damped,
      parse("(1 - 2*beta*v[1,0])*v[2,0] - alpha*v[3,0] - v[0,2]"),
      JetVar(Dep::v, 3, 0),
      parse("((1 - 2*beta*v[1,0])*v[2,0] - v[0,2])/alpha")};
  static const EquationSpec pu{
      EquationName::potential_undamped,
      parse("(1 - 2*beta*v[1,0])*v[2,0] - v[0,2]"),
      JetVar(Dep::v, 2, 0),
      parse("v[0,2]/(1 - 2*beta*v[1,0])")};
  static const EquationSpec lw{
      EquationName::linear_wave,
      parse("vstar[2,0] - (1 - 2*beta*t)*vstar[0,2]"),
      JetVar(Dep::vstar, 2, 0),
      parse("(1 - 2*beta*t)*vstar[0,2]")};
  static const EquationSpec fe{
      EquationName::f_equation,
      parse("f[2,0] - (1 - 2*beta*t)*f[0,2]"),
      JetVar(Dep::f, 2, 0),
      parse("(1 - 2*beta*t)*f[0,2]")};
  switch (n) {
    case EquationName::westervelt_damped: return wd;
    case EquationName::westervelt_undamped: return wu;
    case EquationName::potential_damped: return pd;
    case EquationName::potential_undamped: return pu;
    case EquationName::linear_wave: return lw;
    case EquationName::f_equation: return fe;
  }
  throw std::invalid_argument("equation: unknown name");
}

// Same solution manifold as potential_undamped, but solved for the highest
// space derivative instead: v_xx = (1 - 2 beta v_t) v_tt.  Reducing with this
// form leaves only pure time jets plus v, v_x, which is what the projection
// onto the p-level needs.
inline const EquationSpec& potential_undamped_spatial_form() {
  static const EquationSpec spec{
      EquationName::potential_undamped,
      equation(EquationName::potential_undamped).residual,
      JetVar(Dep::v, 0, 2),
      parse("(1 - 2*beta*v[1,0])*v[2,0]")};
  return spec;
}

// Substitute the equation and its differential consequences until no variable
// of the leading dependent at or above the leading order (along the
// elimination axis) remains.  Idempotent; exact.
inline JetExpr reduce_to_solution_manifold(const JetExpr& e, const EquationSpec& eq) {
  const Axis ax = leading_axis(eq.leading);
  const int L = axis_order(eq.leading, ax);
  const Dep dep = eq.leading.dep;

  auto reducible = [&](const JetVar& w) {
    return w.dep == dep && axis_order(w, ax) >= L;
  };

  // table of reduced values for the differential consequences of the rewrite
  std::map<std::pair<int, int>, JetExpr> table;
  table[{eq.leading.t_order, eq.leading.x_order}] = eq.rewrite;

  std::function<JetExpr(const JetExpr&)> reduce_expr;
  std::function<const JetExpr&(int, int)> consequence = [&](int a, int b) -> const JetExpr& {
    auto it = table.find({a, b});
    if (it != table.end()) return it->second;
    // step down along the axis opposite to the elimination axis first, then
    // along the elimination axis
    JetExpr val;
    if (ax == Axis::T) {
      if (b > eq.leading.x_order) val = reduce_expr(D_x(consequence(a, b - 1)));
      else val = reduce_expr(D_t(consequence(a - 1, b)));
    } else {
      if (a > eq.leading.t_order) val = reduce_expr(D_t(consequence(a - 1, b)));
      else val = reduce_expr(D_x(consequence(a, b - 1)));
    }
    return table.emplace(std::make_pair(a, b), std::move(val)).first->second;
  };

  reduce_expr = [&](const JetExpr& ex) -> JetExpr {
    std::map<int, JetExpr> bind;
    for (const JetVar& w : jet_support(ex, dep))
      if (reducible(w))
        bind.emplace(indet_id(w), consequence(w.t_order, w.x_order));
    if (bind.empty()) return ex;
    return ex.substitute(bind);
  };

  return reduce_expr(e);
}

inline JetExpr reduce_to_solution_manifold(const JetExpr& e, EquationName n) {
  return reduce_to_solution_manifold(e, equation(n));
}

// ---- Linear differential operators and formal adjoints ---------------------------

// sum_i  coeff_i * D_t^{a_i} D_x^{b_i}, with distinct (a_i, b_i) pairs.
struct LinearDiffOp {
  struct Term {
    JetExpr coeff;
    int t_order;
    int x_order;
  };
  std::vector<Term> terms;

  explicit LinearDiffOp(std::vector<Term> ts) : terms(std::move(ts)) {
    for (size_t i = 0; i < terms.size(); ++i)
      for (size_t j = i + 1; j < terms.size(); ++j)
        if (terms[i].t_order == terms[j].t_order &&
            terms[i].x_order == terms[j].x_order)
          throw std::invalid_argument("LinearDiffOp: duplicate derivative slot");
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return std::tie(a.t_order, a.x_order) < std::tie(b.t_order, b.x_order);
    });
  }

  JetExpr apply(const JetExpr& e) const {
    JetExpr acc;
    for (const Term& tm : terms)
      acc = acc + tm.coeff * iterated_derivative(e, tm.t_order, tm.x_order);
    return acc;
  }
};

inline long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - i + 1) / i;
  return r;
}

// Formal adjoint: L* f = sum_i (-D)^{J_i} (coeff_i * f), expanded by the
// Leibniz rule back into coefficient * derivative form.
inline LinearDiffOp formal_adjoint(const LinearDiffOp& L) {
  std::map<std::pair<int, int>, JetExpr> slots;
  for (const auto& tm : L.terms) {
    int a = tm.t_order, b = tm.x_order;
    int sign = ((a + b) % 2 == 0) ? 1 : -1;
    for (int i = 0; i <= a; ++i)
      for (int j = 0; j <= b; ++j) {
        JetExpr dc = iterated_derivative(tm.coeff, i, j);
        if (dc.is_zero()) continue;
        JetExpr piece = JetExpr::from_int(sign * binomial(a, i) * binomial(b, j)) * dc;
        auto key = std::make_pair(a - i, b - j);
        auto it = slots.find(key);
        if (it == slots.end()) slots.emplace(key, piece);
        else it->second = it->second + piece;
      }
  }
  std::vector<LinearDiffOp::Term> ts;
  for (auto& [key, c] : slots)
    if (!c.is_zero()) ts.push_back({std::move(c), key.first, key.second});
  return LinearDiffOp(std::move(ts));
}

// Equality of operators as maps: identical slots with equivalent coefficients.
inline bool operator_equal(const LinearDiffOp& a, const LinearDiffOp& b) {
  auto nonzero = [](const LinearDiffOp& L) {
    std::map<std::pair<int, int>, JetExpr> s;
    for (const auto& tm : L.terms)
      if (!tm.coeff.is_zero()) s.emplace(std::make_pair(tm.t_order, tm.x_order), tm.coeff);
    return s;
  };
  auto sa = nonzero(a), sb = nonzero(b);
  if (sa.size() != sb.size()) return false;
  for (auto& [key, c] : sa) {
    auto it = sb.find(key);
    if (it == sb.end() || !equivalent(c, it->second)) return false;
  }
  return true;
}

// Frechet derivative of a residual with respect to one dependent, as a linear
// operator: sum_J  (d residual / d w_J) D^J.
inline LinearDiffOp frechet_operator(const JetExpr& residual, Dep dep) {
  std::vector<LinearDiffOp::Term> ts;
  for (const JetVar& w : jet_support(residual, dep))
    ts.push_back({partial(residual, w), w.t_order, w.x_order});
  return LinearDiffOp(std::move(ts));
}

// ---- Antiderivative ---------------------------------------------------------------

// Power-rule antiderivative with respect to one jet variable, zero constant of
// integration.  The expression must be polynomial in that variable (it may be
// rational in everything else); a denominator containing the variable is
// rejected.
inline JetExpr t_antiderivative(const JetExpr& e, const JetVar& var) {
  const int id = indet_id(var);
  for (const auto& [f, m] : e.denominator_factors())
    if (f.contains(id))
      throw std::invalid_argument(
          "t_antiderivative: expression is not polynomial in the variable");
  std::vector<Monomial> out;
  for (const auto& m : e.numerator().terms()) {
    Monomial r = m;
    bool found = false;
    for (auto& [i, ex] : r.pw)
      if (i == id) {
        r.c /= (ex + 1);
        ex += 1;
        found = true;
        break;
      }
    if (!found) {
      r.c /= 1;
      // insert exponent 1 keeping ids sorted
      auto pos = std::lower_bound(
          r.pw.begin(), r.pw.end(), id,
          [](const std::pair<int, int>& a, int b) { return a.first < b; });
      r.pw.insert(pos, {id, 1});
    }
    out.push_back(std::move(r));
  }
  JetExpr res = JetExpr::from_poly(Poly::from_terms(std::move(out)));
  for (const auto& [f, m] : e.denominator_factors())
    res = res / JetExpr::from_poly(f).pow(m);
  return res;
}

// ---- Dependent-symbol renames -------------------------------------------------------

// w[a,b] -> to[a,b] for every jet of `from` (used to carry an equation to
// identically-shaped coordinates).
inline JetExpr rename_dependent(const JetExpr& e, Dep from, Dep to) {
  std::map<int, JetExpr> bind;
  for (const JetVar& w : jet_support(e, from))
    bind.emplace(indet_id(w), JetExpr::var(to, w.t_order, w.x_order));
  return bind.empty() ? e : e.substitute(bind);
}

// v[a+1,b] -> p[a,b]: projects an expression in derivatives of the potential
// onto the field level via p = v_t.  Any underived v (or pure space
// derivative of v) has no image and raises an error naming the offender.
inline JetExpr project_potential_to_field(const JetExpr& e) {
  std::map<int, JetExpr> bind;
  for (const JetVar& w : jet_support(e, Dep::v)) {
    if (w.t_order == 0)
      throw std::invalid_argument(
          "project_potential_to_field: expression contains " +
          indet_name(indet_id(w)) + ", which has no local image");
    bind.emplace(indet_id(w), JetExpr::var(Dep::p, w.t_order - 1, w.x_order));
  }
  return bind.empty() ? e : e.substitute(bind);
}

}  // namespace wvlab
