// SPDX-License-Identifier: MIT
#pragma once

// exact.hpp -- exact solutions of the undamped pressure equation
//
//     (1 - 2 beta p) p_tt - 2 beta p_t^2 = p_xx,
//
// constructed by inverting the contact transformation that maps the potential
// form to the linear wave equation v*_{t*t*} = (2 beta t* - 1) v*_{x*x*}.
// Given a linear-level potential v* = psi*(t*, x*), the inversion runs
//
//     (1)  t* = psi_t,  x* = psi_x,  v* = psi - t psi_t - x psi_x,
//          v*_{t*} = -t,  v*_{x*} = -x;
//     (2)  solve  psi*_{t*}(Psi1, Psi2) = -t,  psi*_{x*}(Psi1, Psi2) = -x
//          for Psi1 = psi_t (= p) and Psi2 = psi_x;
//     (3)  v = t Psi1 + x Psi2 + psi*(Psi1, Psi2).
//
// Polynomial psi* of degrees two and three give closed forms; degree four and
// the similarity ansatz leave one scalar implicit equation for Psi1, solved
// per sample by safeguarded Newton (bisection fallback inside a bracket grown
// geometrically from the seed) with continuation from an exactly known anchor
// root.  Finite symmetry-group transforms map solutions to solutions.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace wvlab::exact {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

// Evaluation point outside the family's domain of validity.
struct DomainViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Safeguarded Newton failed to converge or to bracket the branch.
struct NewtonFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

enum class Family { deg2, deg3, deg4_a2zero, deg4_a1zero, similarity };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::deg2: return "deg2";
    case Family::deg3: return "deg3";
    case Family::deg4_a2zero: return "deg4_a2zero";
    case Family::deg4_a1zero: return "deg4_a1zero";
    case Family::similarity: return "similarity";
  }
  return "?";
}

// One exact solution: evaluators plus a domain-of-validity predicate.  Every
// family here has a closed-form potential as well (possibly through the same
// per-sample root), so eval_v is always populated.
struct ExactSolution {
  Family family;
  std::map<std::string, double> params;
  std::function<double(double t, double x)> eval_p;
  std::function<double(double t, double x)> eval_v;
  std::function<bool(double t, double x)> in_domain;
};

// Square Newton system of one or two unknowns.
struct NewtonProblem {
  int dim = 1;
  std::function<void(const double* u, double* r)> residual;  // r[dim]
  std::function<void(const double* u, double* j)> jacobian;  // j[dim*dim], row-major
  double guess[2] = {0.0, 0.0};
  double tol = 1e-12;  // max-norm residual target
  int max_iter = 50;
};

struct NewtonResult {
  double root[2] = {0.0, 0.0};
  double residual_norm = 0.0;
  int iterations = 0;
};

// Plain Newton iteration on a 1- or 2-dimensional square system.  The process
// is a pure function of the inputs: identical seeds and tolerances give
// bit-identical roots.
inline NewtonResult solve_newton(const NewtonProblem& prob) {
  if (prob.dim != 1 && prob.dim != 2)
    throw std::invalid_argument("solve_newton: system must have 1 or 2 unknowns");
  double u[2] = {prob.guess[0], prob.guess[1]};
  double r[2] = {0.0, 0.0};
  double j[4] = {0.0, 0.0, 0.0, 0.0};
  for (int it = 0; it <= prob.max_iter; ++it) {
    prob.residual(u, r);
    double norm = std::abs(r[0]);
    if (prob.dim == 2) norm = std::max(norm, std::abs(r[1]));
    if (!std::isfinite(norm))
      throw NewtonFailure("solve_newton: non-finite residual");
    if (norm <= prob.tol) {
      NewtonResult out;
      out.root[0] = u[0];
      out.root[1] = u[1];
      out.residual_norm = norm;
      out.iterations = it;
      return out;
    }
    if (it == prob.max_iter) break;
    prob.jacobian(u, j);
    if (prob.dim == 1) {
      if (j[0] == 0.0 || !std::isfinite(j[0]))
        throw NewtonFailure("solve_newton: singular Jacobian");
      u[0] -= r[0] / j[0];
    } else {
      double det = j[0] * j[3] - j[1] * j[2];
      double scale = std::abs(j[0]) + std::abs(j[1]) + std::abs(j[2]) +
                     std::abs(j[3]);
      if (!std::isfinite(det) || std::abs(det) <= 1e-14 * scale * scale)
        throw NewtonFailure("solve_newton: singular Jacobian");
      u[0] -= (j[3] * r[0] - j[1] * r[1]) / det;
      u[1] -= (j[0] * r[1] - j[2] * r[0]) / det;
    }
  }
  throw NewtonFailure("solve_newton: no convergence within max_iter");
}

// ---------------------------------------------------------------------------
// Safeguarded scalar solves
// ---------------------------------------------------------------------------

namespace detail {

// Newton with a bisection fallback on [lo, hi]; requires a sign change over
// the interval.  fn returns the residual and writes its derivative.
inline double newton_bisect(const std::function<double(double, double&)>& fn,
                            double lo, double hi, double seed, double tol,
                            int max_iter) {
  double dummy;
  double flo = fn(lo, dummy);
  double fhi = fn(hi, dummy);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!std::isfinite(flo) || !std::isfinite(fhi) || flo * fhi > 0.0)
    throw NewtonFailure("newton_bisect: interval does not bracket a root");
  double u = std::min(std::max(seed, lo), hi);
  for (int it = 0; it < max_iter; ++it) {
    double df;
    double f = fn(u, df);
    if (std::isfinite(f) && std::abs(f) <= tol) return u;
    if (std::isfinite(f)) {
      if ((f > 0.0) == (fhi > 0.0)) hi = u;
      else lo = u;
    }
    double next = std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(f) && std::isfinite(df) && df != 0.0)
      next = u - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    u = next;
  }
  throw NewtonFailure("newton_bisect: no convergence within max_iter");
}

// Grow a bracketing interval geometrically around the seed, preferring the
// crossing nearest the seed so continuation stays on its branch.
inline std::pair<double, double> grow_bracket(
    const std::function<double(double, double&)>& fn, double seed) {
  double dummy;
  double fs = fn(seed, dummy);
  if (!std::isfinite(fs))
    throw NewtonFailure("grow_bracket: residual not finite at the seed");
  if (fs == 0.0) return {seed, seed};
  double delta = 0.05 * std::max(1.0, std::abs(seed));
  for (int tries = 0; tries < 60; ++tries) {
    double fl = fn(seed - delta, dummy);
    if (std::isfinite(fl) && fl * fs < 0.0) return {seed - delta, seed};
    double fr = fn(seed + delta, dummy);
    if (std::isfinite(fr) && fr * fs < 0.0) return {seed, seed + delta};
    delta *= 1.6;
  }
  throw NewtonFailure("grow_bracket: no sign change found near the seed");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Degree-two family: psi* = a3 t* x* + a2 t* + a1 x*
// ---------------------------------------------------------------------------

// p = -(x + a1)/a3, v = -(t + a2)(x + a1)/a3: the general static solution.
inline ExactSolution make_deg2(double a1, double a2, double a3) {
  if (a3 == 0.0) throw std::invalid_argument("make_deg2: a3 must be nonzero");
  ExactSolution sol;
  sol.family = Family::deg2;
  sol.params = {{"a1", a1}, {"a2", a2}, {"a3", a3}};
  sol.eval_p = [=](double, double x) { return -(x + a1) / a3; };
  sol.eval_v = [=](double t, double x) { return -(t + a2) * (x + a1) / a3; };
  sol.in_domain = [](double, double) { return true; };
  return sol;
}

// ---------------------------------------------------------------------------
// Degree-three family: psi* = a1 (t*^3 - (3/2)(t*^2 + x*^2)/beta)
// ---------------------------------------------------------------------------

// p = (1 +- sqrt(1 - 4 beta^2 t/(3 a1)))/(2 beta): the general spatially
// constant solution (up to time translation).  The potential follows from the
// three-step inversion with Psi2 = beta x/(3 a1):
//
//     v = t/(2 beta) + beta x^2/(6 a1) - a1/(4 beta^3)
//         +- sqrt(1 - 4 beta^2 t/(3 a1)) (t/(3 beta) - a1/(4 beta^3)).
inline ExactSolution make_deg3(double a1, int branch, double beta) {
  if (a1 == 0.0) throw std::invalid_argument("make_deg3: a1 must be nonzero");
  if (!(beta > 0.0)) throw std::invalid_argument("make_deg3: beta must be > 0");
  if (branch != 1 && branch != -1)
    throw std::invalid_argument("make_deg3: branch must be +1 or -1");
  ExactSolution sol;
  sol.family = Family::deg3;
  sol.params = {{"a1", a1}, {"beta", beta}, {"branch", double(branch)}};
  auto disc = [=](double t) { return 1.0 - 4.0 * beta * beta * t / (3.0 * a1); };
  sol.in_domain = [=](double t, double) { return disc(t) >= 0.0; };
  sol.eval_p = [=](double t, double) {
    double s2 = disc(t);
    if (s2 < 0.0)
      throw DomainViolation("deg3: 1 - 4 beta^2 t/(3 a1) < 0 at t = " +
                            std::to_string(t));
    return (1.0 + branch * std::sqrt(s2)) / (2.0 * beta);
  };
  sol.eval_v = [=](double t, double x) {
    double s2 = disc(t);
    if (s2 < 0.0)
      throw DomainViolation("deg3: 1 - 4 beta^2 t/(3 a1) < 0 at t = " +
                            std::to_string(t));
    double b3 = beta * beta * beta;
    return t / (2.0 * beta) + beta * x * x / (6.0 * a1) - a1 / (4.0 * b3) +
           branch * std::sqrt(s2) * (t / (3.0 * beta) - a1 / (4.0 * b3));
  };
  return sol;
}

// ---------------------------------------------------------------------------
// Degree-four families
// ---------------------------------------------------------------------------

enum class Deg4Case { a2zero, a1zero };

namespace detail {

// Scalar implicit equations for Psi1 in the two simple degree-four cases,
// with the closed-form back-substitution for Psi2:
//
//  a2 = 0:  a (2 beta u - 3) u^2 - beta^2 t^2/(3 a u^2 (beta u - 1)^2) + 2 beta x = 0,
//           Psi2 = -beta t/(3 a u (beta u - 1));
//  a1 = 0:  a (4 beta^2 u^2 - 3) u - beta^5 x^2/(3 a (2 beta u + 1)^2) + beta^2 t = 0,
//           Psi2 = beta^2 x/(3 a (2 beta u + 1)).
struct Deg4Forms {
  Deg4Case which;
  double a, beta;

  double residual(double u, double t, double x, double& df) const {
    const double b = beta;
    if (which == Deg4Case::a2zero) {
      double pole = u * (b * u - 1.0);
      double inv = 1.0 / (3.0 * a * pole * pole);
      df = 6.0 * a * u * (b * u - 1.0) +
           b * b * t * t * inv * (2.0 / u + 2.0 * b / (b * u - 1.0));
      return a * (2.0 * b * u - 3.0) * u * u - b * b * t * t * inv +
             2.0 * b * x;
    }
    double w = 2.0 * b * u + 1.0;
    double b5 = b * b * b * b * b;
    df = a * (12.0 * b * b * u * u - 3.0) +
         4.0 * b * b5 * x * x / (3.0 * a * w * w * w);
    return a * (4.0 * b * b * u * u - 3.0) * u -
           b5 * x * x / (3.0 * a * w * w) + b * b * t;
  }

  double anchor() const {
    return which == Deg4Case::a2zero ? 3.0 / (2.0 * beta)
                                     : std::sqrt(3.0) / (2.0 * beta);
  }

  double psi2(double u, double t, double x) const {
    const double b = beta;
    if (which == Deg4Case::a2zero)
      return -b * t / (3.0 * a * u * (b * u - 1.0));
    return b * b * x / (3.0 * a * (2.0 * b * u + 1.0));
  }

  // psi*(t*, x*) evaluated at (Psi1, Psi2), for step (3)
  double psi_star(double p1, double p2) const {
    const double b = beta;
    if (which == Deg4Case::a2zero)
      return a * (2.0 * b * p1 * p1 * p1 - 3.0 * p1 * p1 - p2 * p2) * p2 /
             (2.0 * b);
    return a *
           (2.0 * b * b * p1 * p1 * p1 * p1 - 6.0 * b * p1 * p2 * p2 -
            3.0 * (p1 * p1 + p2 * p2)) /
           (2.0 * b * b);
  }

  // Continuation along the straight path lambda -> (lambda t, lambda x) from
  // the exact root at the origin, with adaptive step halving.
  double solve(double t, double x, double tol, int max_iter) const {
    auto at = [&](double lt, double lx, double seed) {
      auto fn = [&](double u, double& df) { return residual(u, lt, lx, df); };
      auto [lo, hi] = grow_bracket(fn, seed);
      if (lo == hi) return lo;
      return newton_bisect(fn, lo, hi, seed, tol, max_iter);
    };
    double lambda = 0.0, root = anchor(), step = 0.125;
    while (lambda < 1.0 - 1e-14) {
      double next = std::min(1.0, lambda + step);
      try {
        root = at(next * t, next * x, root);
        lambda = next;
        if (step < 0.125) step *= 2.0;
      } catch (const NewtonFailure&) {
        step *= 0.5;
        if (step < 1e-5)
          throw NewtonFailure(
              "deg4: continuation stalled at (t, x) = (" + std::to_string(t) +
              ", " + std::to_string(x) + ")");
      }
    }
    return root;
  }
};

}  // namespace detail

// Per-sample safeguarded Newton on the printed implicit equation, continued
// in (t, x) from the exact anchor root at the origin (Psi1 = 3/(2 beta) for
// the a2 = 0 case, sqrt(3)/(2 beta) for a1 = 0).
inline ExactSolution make_deg4(Deg4Case which, double a, double beta,
                               double tol = 1e-12, int max_iter = 50) {
  if (a == 0.0)
    throw std::invalid_argument("make_deg4: the family constant must be nonzero");
  if (!(beta > 0.0)) throw std::invalid_argument("make_deg4: beta must be > 0");
  detail::Deg4Forms forms{which, a, beta};
  ExactSolution sol;
  sol.family =
      which == Deg4Case::a2zero ? Family::deg4_a2zero : Family::deg4_a1zero;
  sol.params = {{which == Deg4Case::a2zero ? "a1" : "a2", a}, {"beta", beta}};
  sol.eval_p = [=](double t, double x) { return forms.solve(t, x, tol, max_iter); };
  sol.eval_v = [=](double t, double x) {
    double p1 = forms.solve(t, x, tol, max_iter);
    double p2 = forms.psi2(p1, t, x);
    return t * p1 + x * p2 + forms.psi_star(p1, p2);
  };
  // no closed-form global domain: convergence is reported per sample
  sol.in_domain = [](double, double) { return true; };
  return sol;
}

// ---------------------------------------------------------------------------
// Similarity family
// ---------------------------------------------------------------------------

enum class SimilarityBranch { nonsingular, singular };

namespace detail {

// The invariant profile Psi0(z) of the similarity solution solves
//     (1 + z^2 Psi0)^7 Psi0^9 = 1.
// Nonsingular branch: Psi0 in (0, 1], computed from the monotone log form
//     7 log1p(z^2 Psi0) + 9 log Psi0 = 0;
// singular branch: Psi0 = -(1 + u)/z^2 with u > 0 solving the monotone form
//     7 log u + 9 log1p(u) = 9 log(z^2).
inline double psi0_nonsingular(double z, double tol, int max_iter) {
  const double w = z * z;
  if (w == 0.0) return 1.0;  // the equation degenerates to Psi0^9 = 1
  auto fn = [&](double u, double& df) {
    df = 7.0 * w / (1.0 + w * u) + 9.0 / u;
    return 7.0 * std::log1p(w * u) + 9.0 * std::log(u);
  };
  double seed = w > 1.0 ? std::pow(w, -7.0 / 16.0)
                        : std::exp(-(7.0 / 9.0) * std::log1p(w));
  double hi = 1.0;  // residual there is 7 log1p(w) >= 0
  double lo = seed;
  double dummy;
  for (int k = 0; k < 1200 && fn(lo, dummy) > 0.0; ++k) lo *= 0.5;
  return newton_bisect(fn, lo, hi, seed, tol, max_iter);
}

inline double psi0_singular(double z, double tol, int max_iter) {
  const double w = z * z;
  if (w == 0.0)
    throw DomainViolation("similarity (singular): profile blows up at z = 0");
  const double rhs = 9.0 * std::log(w);
  auto fn = [&](double u, double& df) {
    df = 7.0 / u + 9.0 / (1.0 + u);
    return 7.0 * std::log(u) + 9.0 * std::log1p(u) - rhs;
  };
  double seed = w > 1.0 ? std::pow(w, 9.0 / 16.0) : std::pow(w, 9.0 / 7.0);
  double lo = seed, hi = seed, dummy;
  for (int k = 0; k < 1200 && fn(lo, dummy) > 0.0; ++k) lo *= 0.5;
  for (int k = 0; k < 1200 && fn(hi, dummy) < 0.0; ++k) hi *= 2.0;
  double u = newton_bisect(fn, lo, hi, seed, tol, max_iter);
  return -(1.0 + u) / w;
}

}  // namespace detail

// Profile equation solver, exposed for asymptotic studies.
inline double similarity_profile(SimilarityBranch branch, double z,
                                 double tol = 1e-12, int max_iter = 80) {
  return branch == SimilarityBranch::nonsingular
             ? detail::psi0_nonsingular(z, tol, max_iter)
             : detail::psi0_singular(z, tol, max_iter);
}

// p(t, x) = (1 + (beta/t)^{2/3} Psi0(beta^{1/3} x/t^{4/3}))/(2 beta), t > 0.
// The potential follows from the inversion in closed form through the root:
// with u = 2 beta p - 1,
//     Psi2 = x u^2/(3 beta t),   v = t p + x Psi2 + (u^3 (1 + z^2 Psi0))^{-1/6}.
// The nonsingular branch is a positive single-peak profile (not hyperbolic
// for the pressure equation: 1 - 2 beta p < 0); the singular branch is
// negative with a -1/z^2 blow-up at z = 0 and is hyperbolic away from x = 0.
inline ExactSolution make_similarity(SimilarityBranch branch, double beta,
                                     double tol = 1e-12, int max_iter = 80) {
  if (!(beta > 0.0))
    throw std::invalid_argument("make_similarity: beta must be > 0");
  ExactSolution sol;
  sol.family = Family::similarity;
  sol.params = {{"beta", beta},
                {"branch", branch == SimilarityBranch::nonsingular ? 1.0 : -1.0}};
  auto zed = [=](double t, double x) {
    return std::cbrt(beta) * x / std::pow(t, 4.0 / 3.0);
  };
  sol.in_domain = [=](double t, double x) {
    return t > 0.0 && (branch == SimilarityBranch::nonsingular || x != 0.0);
  };
  auto profile_at = [=](double t, double x) {
    if (!(t > 0.0))
      throw DomainViolation("similarity: requires t > 0");
    return similarity_profile(branch, zed(t, x), tol, max_iter);
  };
  sol.eval_p = [=](double t, double x) {
    double psi0 = profile_at(t, x);
    return (1.0 + std::pow(beta / t, 2.0 / 3.0) * psi0) / (2.0 * beta);
  };
  sol.eval_v = [=](double t, double x) {
    double psi0 = profile_at(t, x);
    double z = zed(t, x);
    double u = std::pow(beta / t, 2.0 / 3.0) * psi0;
    double p = (1.0 + u) / (2.0 * beta);
    double psi2 = x * u * u / (3.0 * beta * t);
    double w = u * u * u * (1.0 + z * z * psi0);
    if (!(w > 0.0))
      throw DomainViolation("similarity: potential root argument not positive");
    return t * p + x * psi2 + std::pow(w, -1.0 / 6.0);
  };
  return sol;
}

// ---------------------------------------------------------------------------
// Contact inversion for a user-supplied linear-level potential
// ---------------------------------------------------------------------------

// A differentiable closed form psi*(t*, x*) with its gradient.
struct ContactPotential {
  std::function<double(double, double)> value;
  std::function<std::array<double, 2>(double, double)> gradient;
};

struct ContactInversion {
  double Psi1 = 0.0;  // = p(t, x)
  double Psi2 = 0.0;  // = v_x(t, x)
  double v = 0.0;     // = t Psi1 + x Psi2 + psi*(Psi1, Psi2)
  int iterations = 0;
};

// Solve  psi*_{t*}(Psi1, Psi2) = -t,  psi*_{x*}(Psi1, Psi2) = -x  by 2D
// Newton from the seed (Jacobian = Hessian of psi*, by central differences
// of the gradient), then assemble the potential value.
inline ContactInversion invert_contact(const ContactPotential& psi, double t,
                                       double x, std::array<double, 2> seed,
                                       double tol = 1e-12, int max_iter = 50) {
  NewtonProblem prob;
  prob.dim = 2;
  prob.guess[0] = seed[0];
  prob.guess[1] = seed[1];
  prob.tol = tol;
  prob.max_iter = max_iter;
  prob.residual = [&](const double* u, double* r) {
    std::array<double, 2> g = psi.gradient(u[0], u[1]);
    r[0] = g[0] + t;
    r[1] = g[1] + x;
  };
  prob.jacobian = [&](const double* u, double* j) {
    for (int l = 0; l < 2; ++l) {
      double h = 1e-6 * std::max(1.0, std::abs(u[l]));
      double a0 = u[0] + (l == 0 ? h : 0.0), a1 = u[1] + (l == 1 ? h : 0.0);
      double b0 = u[0] - (l == 0 ? h : 0.0), b1 = u[1] - (l == 1 ? h : 0.0);
      std::array<double, 2> gp = psi.gradient(a0, a1);
      std::array<double, 2> gm = psi.gradient(b0, b1);
      j[0 * 2 + l] = (gp[0] - gm[0]) / (2.0 * h);
      j[1 * 2 + l] = (gp[1] - gm[1]) / (2.0 * h);
    }
  };
  NewtonResult res = solve_newton(prob);
  ContactInversion out;
  out.Psi1 = res.root[0];
  out.Psi2 = res.root[1];
  out.v = t * out.Psi1 + x * out.Psi2 + psi.value(out.Psi1, out.Psi2);
  out.iterations = res.iterations;
  return out;
}

// ---------------------------------------------------------------------------
// Finite symmetry-group transforms
// ---------------------------------------------------------------------------

enum class Generator { X1, X2, X3, X4 };

// Finite flows of the point symmetries (all exact families are undamped, so
// the dilation X4 is always admissible here):
//
//     X1: p^(t, x) = p(t - eps, x)
//     X2: p^(t, x) = p(t, x - eps)
//     X3: p^(t, x) = 1/(2 beta) + (p(e^{-2 beta eps} t, e^{-3 beta eps} x)
//                                  - 1/(2 beta)) e^{-2 beta eps}
//     X4: p^(t, x) = p(t/e^eps, x/e^eps)
//
// The potential transforms compatibly (v^_t = p^ and the potential equation
// is preserved):  X1/X2 shift arguments, X4 gives e^eps v(t/e^eps, x/e^eps),
// and X3 gives t (1 - e^{-2 beta eps})/(2 beta) + v(scaled arguments).
// beta is read from the solution's parameters unless overridden (the static
// degree-two family carries none of its own).
inline ExactSolution group_transform(
    const ExactSolution& sol, Generator gen, double eps,
    double beta = std::numeric_limits<double>::quiet_NaN()) {
  ExactSolution out;
  out.family = sol.family;
  out.params = sol.params;
  out.params["eps"] = eps;

  auto src_p = sol.eval_p;
  auto src_v = sol.eval_v;
  auto src_dom = sol.in_domain;

  switch (gen) {
    case Generator::X1:
      out.eval_p = [=](double t, double x) { return src_p(t - eps, x); };
      out.eval_v = [=](double t, double x) { return src_v(t - eps, x); };
      out.in_domain = [=](double t, double x) { return src_dom(t - eps, x); };
      return out;
    case Generator::X2:
      out.eval_p = [=](double t, double x) { return src_p(t, x - eps); };
      out.eval_v = [=](double t, double x) { return src_v(t, x - eps); };
      out.in_domain = [=](double t, double x) { return src_dom(t, x - eps); };
      return out;
    case Generator::X3: {
      double b = beta;
      if (std::isnan(b)) {
        auto it = sol.params.find("beta");
        if (it == sol.params.end())
          throw std::invalid_argument(
              "group_transform: X3 needs beta (pass it or carry it in params)");
        b = it->second;
      }
      if (!(b > 0.0))
        throw std::invalid_argument("group_transform: X3 needs beta > 0");
      out.params["beta"] = b;
      const double ct = std::exp(-2.0 * b * eps);
      const double cx = std::exp(-3.0 * b * eps);
      out.eval_p = [=](double t, double x) {
        return 1.0 / (2.0 * b) + (src_p(ct * t, cx * x) - 1.0 / (2.0 * b)) * ct;
      };
      out.eval_v = [=](double t, double x) {
        return t * (1.0 - ct) / (2.0 * b) + src_v(ct * t, cx * x);
      };
      out.in_domain = [=](double t, double x) { return src_dom(ct * t, cx * x); };
      return out;
    }
    case Generator::X4: {
      const double c = std::exp(eps);
      out.eval_p = [=](double t, double x) { return src_p(t / c, x / c); };
      out.eval_v = [=](double t, double x) { return c * src_v(t / c, x / c); };
      out.in_domain = [=](double t, double x) { return src_dom(t / c, x / c); };
      return out;
    }
  }
  throw std::invalid_argument("group_transform: unknown generator");
}

// ---------------------------------------------------------------------------
// Finite-difference residual oracle
// ---------------------------------------------------------------------------

// Residual of (1 - 2 beta p) p_tt - 2 beta p_t^2 - p_xx on the 5-point star
// {(t, x), (t +- h_t, x), (t, x +- h_x)} with second-order centered stencils;
// steps default to max(1, |coordinate|) * 1e-3.
inline double fd_residual(const ExactSolution& sol, double beta, double t,
                          double x, double h_factor = 1e-3) {
  const double ht = h_factor * std::max(1.0, std::abs(t));
  const double hx = h_factor * std::max(1.0, std::abs(x));
  const double pc = sol.eval_p(t, x);
  const double ptm = sol.eval_p(t - ht, x), ptp = sol.eval_p(t + ht, x);
  const double pxm = sol.eval_p(t, x - hx), pxp = sol.eval_p(t, x + hx);
  const double ptt = (ptm - 2.0 * pc + ptp) / (ht * ht);
  const double pxx = (pxm - 2.0 * pc + pxp) / (hx * hx);
  const double pt = (ptp - ptm) / (2.0 * ht);
  return (1.0 - 2.0 * beta * pc) * ptt - 2.0 * beta * pt * pt - pxx;
}

}  // namespace wvlab::exact
