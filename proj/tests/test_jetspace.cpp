// SPDX-License-Identifier: MIT
//
// Exact-arithmetic core: canonical forms, ring axioms on random expressions,
// the cross-multiplication equality oracle, substitution, and the debug
// syntax round-trip.

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "wvlab/jetspace.hpp"

using namespace wvlab;

namespace {

// Deterministic random rational expressions.  Divisions only ever use
// denominators of the shape (nonzero constant + monomial), which cannot be
// identically zero.
struct Rng {
  std::mt19937 gen{20260816u};

  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  }

  JetExpr atom() {
    switch (uniform(0, 7)) {
      case 0: return sym::alpha();
      case 1: return sym::beta();
      case 2: return sym::t();
      case 3: return sym::x();
      case 4: return sym::jet(Dep::p, uniform(0, 2), uniform(0, 2));
      case 5: return sym::jet(Dep::v, uniform(0, 1), uniform(0, 1));
      case 6: return JetExpr::from_rat(Rat(uniform(-6, 6), uniform(1, 4)));
      default: return JetExpr::from_int(uniform(-3, 3));
    }
  }

  JetExpr nonzero_divisor() {
    JetExpr m = atom();
    // constant + atom^2 is never the zero polynomial
    return JetExpr::from_int(uniform(1, 5)) + m * m;
  }

  JetExpr expr(int depth = 3) {
    if (depth == 0) return atom();
    switch (uniform(0, 4)) {
      case 0: return expr(depth - 1) + expr(depth - 1);
      case 1: return expr(depth - 1) - expr(depth - 1);
      case 2: return expr(depth - 1) * expr(depth - 1);
      case 3: return expr(depth - 1) / nonzero_divisor();
      default: return atom();
    }
  }
};

}  // namespace

TEST_CASE("jet variable construction enforces the order cap and axis rules") {
  REQUIRE_NOTHROW(JetVar(Dep::p, 5, 5));
  REQUIRE_THROWS_AS(JetVar(Dep::p, 6, 5), std::invalid_argument);
  REQUIRE_THROWS_AS(JetVar(Dep::p, -1, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(JetVar(Dep::V, 0, 1), std::invalid_argument);
  REQUIRE_NOTHROW(JetVar(Dep::V, 3, 0));
}

TEST_CASE("additive identity and like-term collection") {
  JetExpr pt = sym::jet(Dep::p, 1, 0);
  CHECK(pt + JetExpr() == pt);
  JetExpr half_x = sym::frac(1, 2) * sym::x();
  CHECK(half_x + half_x == sym::x());
}

TEST_CASE("adding reciprocals forms the product denominator") {
  JetExpr p = sym::jet(Dep::p, 0, 0);
  JetExpr pt = sym::jet(Dep::p, 1, 0);
  JetExpr sum = JetExpr::from_int(1) / p + JetExpr::from_int(1) / pt;
  CHECK(to_string(sum) == "(p[1,0] + p)/(p*p[1,0])");
  CHECK(equivalent(sum, (pt + p) / (p * pt)));
}

TEST_CASE("multiplication expands binomial squares") {
  JetExpr b = sym::beta();
  JetExpr p = sym::jet(Dep::p, 0, 0);
  JetExpr base = sym::num(1) - sym::num(2) * b * p;
  JetExpr sq = base * base;
  JetExpr expect = sym::num(1) - sym::num(4) * b * p + sym::num(4) * b * b * p * p;
  CHECK(sq == expect);
}

TEST_CASE("multiplying by the denominator cancels it exactly") {
  JetExpr p = sym::jet(Dep::p, 0, 0);
  JetExpr pt = sym::jet(Dep::p, 1, 0);
  JetExpr px = sym::jet(Dep::p, 0, 1);
  JetExpr jac =
      (sym::num(1) - sym::num(2) * sym::beta() * p) * pt * pt - px * px;
  JetExpr quotient = px / jac;
  CHECK_FALSE(quotient.is_polynomial());
  CHECK(quotient * jac == px);
}

TEST_CASE("equality is decided by cross-multiplication, not representation") {
  JetExpr x = sym::x(), t = sym::t();
  JetExpr a = (x * x - t * t) / (x - t);  // not reduced by any GCD
  JetExpr b = x + t;
  CHECK(equivalent(a, b));
  CHECK_FALSE(equivalent(a, x - t));
}

TEST_CASE("ring axioms hold on random expressions") {
  Rng rng;
  for (int i = 0; i < 120; ++i) {
    JetExpr a = rng.expr(), b = rng.expr(), c = rng.expr();
    CAPTURE(i);
    CHECK(equivalent(a + b, b + a));
    CHECK(equivalent((a + b) + c, a + (b + c)));
    CHECK(equivalent(a * b, b * a));
    CHECK(equivalent((a * b) * c, a * (b * c)));
    CHECK(equivalent(a * (b + c), a * b + a * c));
    CHECK(equivalent(a + JetExpr(), a));
    CHECK(equivalent(a * JetExpr::from_int(1), a));
    CHECK(equivalent(a - a, JetExpr()));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("canonicalization is idempotent") {
  Rng rng;
  for (int i = 0; i < 100; ++i) {
    JetExpr a = rng.expr();
    // rebuilding from the canonical parts must reproduce the value bit-for-bit
    JetExpr rebuilt = a + JetExpr();
    CHECK(rebuilt == a);
    JetExpr reparsed = parse(to_string(a));
    CHECK(to_string(reparsed) == to_string(a));
  }
}

TEST_CASE("cross-multiplication equality is an equivalence relation") {
  Rng rng;
  for (int i = 0; i < 60; ++i) {
    JetExpr a = rng.expr(2);
    JetExpr g = rng.nonzero_divisor(), h = rng.nonzero_divisor();
    JetExpr b = (a * g) / g;  // same value, possibly different representation
    JetExpr c = (a * h) / h;
    CHECK(equivalent(a, a));
    CHECK(equivalent(a, b));
    CHECK(equivalent(b, a));
    CHECK((equivalent(a, b) && equivalent(b, c)) == equivalent(a, c));
  }
}

TEST_CASE("denominators stay primitive with positive leading coefficient") {
  Rng rng;
  for (int i = 0; i < 80; ++i) {
    JetExpr a = rng.expr();
    if (a.is_polynomial()) continue;
    Poly den = a.denominator();
    REQUIRE_FALSE(den.is_zero());
    CHECK(den.leading().c > 0);
    CHECK(den.content() == 1);
  }
  // sign normalization moves through the numerator
  JetExpr e = sym::x() / (JetExpr::from_int(0) - sym::jet(Dep::p, 1, 0));
  CHECK(to_string(e) == "(-x)/(p[1,0])");
}

TEST_CASE("substitution binds parameters exactly") {
  // damped residual specializes to the undamped one at alpha = 0
  JetExpr damped = parse(
      "(1 - 2*beta*p)*p[2,0] - 2*beta*p[1,0]^2 - alpha*p[3,0] - p[0,2]");
  JetExpr undamped = parse("(1 - 2*beta*p)*p[2,0] - 2*beta*p[1,0]^2 - p[0,2]");
  std::map<int, JetExpr> bind{{kIdAlpha, JetExpr()}};
  CHECK(equivalent(damped.substitute(bind), undamped));
}

TEST_CASE("substitution renames jet variables simultaneously") {
  // v_tt -> p_t, v_t -> p at once (simultaneity matters: the bindings below
  // overlap if applied one after the other)
  JetExpr e = sym::jet(Dep::v, 2, 0) * sym::jet(Dep::v, 1, 0);
  std::map<int, JetExpr> bind{
      {indet_id(JetVar(Dep::v, 2, 0)), sym::jet(Dep::p, 1, 0)},
      {indet_id(JetVar(Dep::v, 1, 0)), sym::jet(Dep::p, 0, 0)},
      {indet_id(JetVar(Dep::p, 1, 0)), sym::x()}};
  CHECK(equivalent(e.substitute(bind),
                   sym::jet(Dep::p, 1, 0) * sym::jet(Dep::p, 0, 0)));
}

TEST_CASE("substitution rejects denominators that vanish identically") {
  JetExpr e = sym::x() / sym::jet(Dep::p, 1, 0);
  std::map<int, JetExpr> kill{{indet_id(JetVar(Dep::p, 1, 0)), JetExpr()}};
  CHECK_THROWS_AS(e.substitute(kill), std::runtime_error);
}

TEST_CASE("substitution composes rational expressions") {
  JetExpr e = (sym::num(1) + sym::t()) / sym::x();
  std::map<int, JetExpr> bind{{kIdT, sym::x() / (sym::num(1) + sym::x())}};
  // (1 + x/(1+x))/x = (1+2x)/(x(1+x))
  JetExpr expect = (sym::num(1) + sym::num(2) * sym::x()) /
                   (sym::x() * (sym::num(1) + sym::x()));
  CHECK(equivalent(e.substitute(bind), expect));
}

TEST_CASE("print/parse round-trips canonical forms") {
  Rng rng;
  for (int i = 0; i < 100; ++i) {
    JetExpr a = rng.expr();
    std::string s = to_string(a);
    JetExpr back = parse(s);
    CHECK(equivalent(back, a));
    CHECK(to_string(back) == s);
  }
  // representative spellings
  for (const char* s :
       {"p[2,0]", "v[1,1]", "alpha", "beta", "zeta", "z", "3/2", "0", "1",
        "(p[1,0] + p)/(p*p[1,0])", "vstar[0,2]", "V[2,0]", "f[1,1]",
        "1 - 2*beta*p"}) {
    CHECK(to_string(parse(s)) == s);
  }
}

TEST_CASE("parser reports malformed input") {
  CHECK_THROWS_AS(parse("p[1"), std::invalid_argument);
  CHECK_THROWS_AS(parse("q"), std::invalid_argument);
  CHECK_THROWS_AS(parse("1 +"), std::invalid_argument);
  CHECK_THROWS_AS(parse("p[1,0] extra"), std::invalid_argument);
  CHECK_THROWS_AS(parse("x/0"), std::invalid_argument);
}

TEST_CASE("operations never mutate their operands") {
  JetExpr a = parse("1 - 2*beta*p");
  JetExpr b = parse("x/(1 + t)");
  std::string sa = to_string(a), sb = to_string(b);
  JetExpr sum = a + b, prod = a * b, quot = a / b, diff = a - b;
  (void)sum, (void)prod, (void)quot, (void)diff;
  CHECK(to_string(a) == sa);
  CHECK(to_string(b) == sb);
}

TEST_CASE("integer powers agree with repeated multiplication") {
  JetExpr base = parse("1 + x + p[1,0]");
  JetExpr acc = JetExpr::from_int(1);
  for (int k = 0; k <= 5; ++k) {
    CHECK(base.pow(k) == acc);
    acc = acc * base;
  }
  CHECK(equivalent(base.pow(-2) * base.pow(2), JetExpr::from_int(1)));
}
