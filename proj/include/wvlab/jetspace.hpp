// SPDX-License-Identifier: MIT
//
// Exact multivariate rational arithmetic over a fixed jet-space alphabet.
//
// The alphabet has six base indeterminates (alpha, beta, t, x, zeta, z) and a
// family of jet variables w[a,b] for five dependent symbols w.  A jet variable
// carries a pair of derivative counts along the two independent axes of its
// dependent symbol; the axes are *slots*, so the same machinery serves
// space-time fields (p, v), starred coordinates (vstar), a similarity profile
// (V, one axis only) and a function of two first derivatives (f).
//
// Everything here is immutable value semantics.  Equality of rational
// expressions is decided solely by cross-multiplication to a zero numerator;
// no polynomial GCD is ever computed (integer content stripping only).

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wvlab {

using Rat = mpq_class;
using Int = mpz_class;

// ---- Dependent symbols and the order cap ------------------------------------

enum class Dep : int { p = 0, v = 1, vstar = 2, V = 3, f = 4 };

inline const char* dep_name(Dep d) {
  switch (d) {
    case Dep::p: return "p";
    case Dep::v: return "v";
    case Dep::vstar: return "vstar";
    case Dep::V: return "V";
    case Dep::f: return "f";
  }
  throw std::invalid_argument("dep_name: unknown dependent symbol");
}

// Maximum total differential order a jet variable may carry.  Exceeding the
// cap is a hard error everywhere (construction and differentiation).
inline int& order_cap() {
  static int cap = 10;
  return cap;
}

// Hard encoding bound: per-axis orders must fit the id layout below.
inline constexpr int kAxisMax = 32;

// ---- JetVar ------------------------------------------------------------------

// One derivative coordinate w[a,b] of a dependent symbol w.  `t_order` counts
// derivatives along the first axis of w, `x_order` along the second.  The
// profile V is a function of a single variable: its second slot must stay 0.
struct JetVar {
  Dep dep;
  int t_order;
  int x_order;

  JetVar(Dep d, int a, int b) : dep(d), t_order(a), x_order(b) {
    if (a < 0 || b < 0)
      throw std::invalid_argument("JetVar: negative derivative order");
    if (a + b > order_cap() || a > kAxisMax || b > kAxisMax)
      throw std::invalid_argument("JetVar: differential order exceeds cap");
    if (d == Dep::V && b != 0)
      throw std::invalid_argument("JetVar: V is a one-variable profile");
  }

  friend bool operator==(const JetVar&, const JetVar&) = default;
};

// ---- Indeterminate ids -------------------------------------------------------
//
// A single integer id enumerates every indeterminate.  The enumeration is
// fixed once and for all; the monomial order below ties to it.
//   0..5                : alpha, beta, t, x, zeta, z
//   6 + dep*33*33 + a*33 + b : jet variable dep[a,b]

inline constexpr int kIdAlpha = 0;
inline constexpr int kIdBeta = 1;
inline constexpr int kIdT = 2;
inline constexpr int kIdX = 3;
inline constexpr int kIdZeta = 4;
inline constexpr int kIdZ = 5;
inline constexpr int kNumBase = 6;
inline constexpr int kAxisStride = kAxisMax + 1;

inline int indet_id(const JetVar& w) {
  return kNumBase + static_cast<int>(w.dep) * kAxisStride * kAxisStride +
         w.t_order * kAxisStride + w.x_order;
}

inline bool is_jet_id(int id) { return id >= kNumBase; }

inline JetVar jetvar_of_id(int id) {
  int r = id - kNumBase;
  int d = r / (kAxisStride * kAxisStride);
  r %= kAxisStride * kAxisStride;
  return JetVar(static_cast<Dep>(d), r / kAxisStride, r % kAxisStride);
}

inline std::string indet_name(int id) {
  switch (id) {
    case kIdAlpha: return "alpha";
    case kIdBeta: return "beta";
    case kIdT: return "t";
    case kIdX: return "x";
    case kIdZeta: return "zeta";
    case kIdZ: return "z";
    default: break;
  }
  JetVar w = jetvar_of_id(id);
  if (w.t_order == 0 && w.x_order == 0) return dep_name(w.dep);
  std::ostringstream os;
  os << dep_name(w.dep) << '[' << w.t_order << ',' << w.x_order << ']';
  return os.str();
}

// ---- Monomial ----------------------------------------------------------------

// coefficient * product of indeterminate powers.  `pw` is sorted by id and
// holds strictly positive exponents only.
struct Monomial {
  Rat c;
  std::vector<std::pair<int, int>> pw;  // (indeterminate id, exponent >= 1)

  int degree() const {
    int d = 0;
    for (auto& [id, e] : pw) d += e;
    return d;
  }
};

// Graded-lexicographic comparison of exponent vectors: higher total degree
// first; ties broken by the first id (in enumeration order) whose exponents
// differ, the larger exponent winning.  Returns <0, 0, >0 like strcmp.
inline int grlex_cmp(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  size_t i = 0, j = 0;
  while (i < a.pw.size() && j < b.pw.size()) {
    if (a.pw[i].first != b.pw[j].first) {
      // the monomial owning the smaller id has a positive exponent where the
      // other has zero, so it is the larger one
      return a.pw[i].first < b.pw[j].first ? 1 : -1;
    }
    if (a.pw[i].second != b.pw[j].second)
      return a.pw[i].second < b.pw[j].second ? -1 : 1;
    ++i, ++j;
  }
  if (i < a.pw.size()) return 1;
  if (j < b.pw.size()) return -1;
  return 0;
}

inline bool same_powers(const Monomial& a, const Monomial& b) {
  return a.pw == b.pw;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.c = a.c * b.c;
  r.pw.reserve(a.pw.size() + b.pw.size());
  size_t i = 0, j = 0;
  while (i < a.pw.size() || j < b.pw.size()) {
    if (j == b.pw.size() || (i < a.pw.size() && a.pw[i].first < b.pw[j].first))
      r.pw.push_back(a.pw[i++]);
    else if (i == a.pw.size() || b.pw[j].first < a.pw[i].first)
      r.pw.push_back(b.pw[j++]);
    else {
      r.pw.emplace_back(a.pw[i].first, a.pw[i].second + b.pw[j].second);
      ++i, ++j;
    }
  }
  return r;
}

// Divides a by b when b's powers all fit inside a's; nullopt otherwise.
inline std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.c = a.c / b.c;
  size_t j = 0;
  for (size_t i = 0; i < a.pw.size(); ++i) {
    int id = a.pw[i].first, e = a.pw[i].second;
    if (j < b.pw.size() && b.pw[j].first == id) {
      e -= b.pw[j].second;
      ++j;
      if (e < 0) return std::nullopt;
    }
    if (e > 0) r.pw.emplace_back(id, e);
  }
  if (j < b.pw.size()) return std::nullopt;
  return r;
}

// ---- Poly --------------------------------------------------------------------

// Canonical multivariate polynomial: terms sorted descending in graded-lex
// order, no duplicate exponent vectors, no zero coefficients.  The empty term
// list is the zero polynomial.
class Poly {
 public:
  Poly() = default;

  static Poly from_terms(std::vector<Monomial> ts) {
    Poly p;
    std::sort(ts.begin(), ts.end(), [](const Monomial& a, const Monomial& b) {
      return grlex_cmp(a, b) > 0;
    });
    for (auto& m : ts) {
      if (m.c == 0) continue;
      if (!p.terms_.empty() && same_powers(p.terms_.back(), m))
        p.terms_.back().c += m.c;
      else
        p.terms_.push_back(std::move(m));
      if (p.terms_.back().c == 0) p.terms_.pop_back();
    }
    return p;
  }

  static Poly constant(Rat c) {
    Poly p;
    if (c != 0) p.terms_.push_back(Monomial{std::move(c), {}});
    return p;
  }

  static Poly indet(int id, int exp = 1) {
    if (exp < 0) throw std::invalid_argument("Poly::indet: negative exponent");
    if (exp == 0) return constant(1);
    Poly p;
    p.terms_.push_back(Monomial{Rat(1), {{id, exp}}});
    return p;
  }

  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].pw.empty());
  }

  Rat constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant())
      throw std::invalid_argument("Poly: not a constant polynomial");
    return terms_[0].c;
  }

  const Monomial& leading() const {
    if (terms_.empty()) throw std::invalid_argument("Poly: zero has no leading term");
    return terms_[0];
  }

  int total_degree() const {
    return terms_.empty() ? -1 : terms_[0].degree();
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Monomial> merged;
    merged.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int cmp;
      if (i == a.terms_.size()) cmp = -1;
      else if (j == b.terms_.size()) cmp = 1;
      else cmp = grlex_cmp(a.terms_[i], b.terms_[j]);
      if (cmp > 0) merged.push_back(a.terms_[i++]);
      else if (cmp < 0) merged.push_back(b.terms_[j++]);
      else {
        Monomial m = a.terms_[i++];
        m.c += b.terms_[j++].c;
        if (m.c != 0) merged.push_back(std::move(m));
      }
    }
    Poly r;
    r.terms_ = std::move(merged);
    return r;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& m : r.terms_) m.c = -m.c;
    return r;
  }

  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    // accumulate into an ordered map keyed by exponent vector
    struct Cmp {
      bool operator()(const std::vector<std::pair<int, int>>& x,
                      const std::vector<std::pair<int, int>>& y) const {
        Monomial mx{Rat(0), x}, my{Rat(0), y};
        return grlex_cmp(mx, my) > 0;
      }
    };
    std::map<std::vector<std::pair<int, int>>, Rat, Cmp> acc;
    for (const auto& ma : a.terms_)
      for (const auto& mb : b.terms_) {
        Monomial m = mono_mul(ma, mb);
        auto [it, fresh] = acc.emplace(std::move(m.pw), m.c);
        if (!fresh) it->second += m.c;
      }
    Poly r;
    r.terms_.reserve(acc.size());
    for (auto& [pw, c] : acc)
      if (c != 0) r.terms_.push_back(Monomial{std::move(c), pw});
    return r;
  }

  Poly pow(int k) const {
    if (k < 0) throw std::invalid_argument("Poly::pow: negative exponent");
    Poly r = constant(1);
    Poly base = *this;
    while (k > 0) {
      if (k & 1) r = r * base;
      base = (k >>= 1) ? base * base : base;
    }
    return r;
  }

  // Partial derivative with respect to a single indeterminate.
  Poly partial(int id) const {
    std::vector<Monomial> out;
    for (const auto& m : terms_) {
      for (size_t i = 0; i < m.pw.size(); ++i) {
        if (m.pw[i].first != id) continue;
        Monomial d = m;
        d.c *= m.pw[i].second;
        if (d.pw[i].second == 1) d.pw.erase(d.pw.begin() + i);
        else d.pw[i].second -= 1;
        out.push_back(std::move(d));
        break;
      }
    }
    return from_terms(std::move(out));
  }

  // Set of indeterminate ids that occur with positive exponent.
  std::vector<int> support() const {
    std::vector<int> ids;
    for (const auto& m : terms_)
      for (auto& [id, e] : m.pw) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  }

  bool contains(int id) const {
    for (const auto& m : terms_)
      for (auto& [i, e] : m.pw)
        if (i == id) return true;
    return false;
  }

  // Positive rational c such that (*this)/c has coprime integer coefficients.
  // Zero polynomial reports content 1.
  Rat content() const {
    if (terms_.empty()) return Rat(1);
    Int g = 0, l = 1;
    for (const auto& m : terms_) {
      Int num = m.c.get_num(), den = m.c.get_den();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    Rat c(g, l);
    c.canonicalize();
    return c;
  }

  Poly scaled(const Rat& k) const {
    if (k == 0) return Poly();
    Poly r = *this;
    for (auto& m : r.terms_) m.c *= k;
    return r;
  }

  // structural equality (canonical forms make this semantic equality too)
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].c != b.terms_[i].c || !same_powers(a.terms_[i], b.terms_[i]))
        return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // total order on polynomials (degree, then termwise grlex/coefficient);
  // used only to keep denominator factor lists canonical
  friend bool poly_less(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size())
      return a.terms_.size() < b.terms_.size();
    for (size_t i = 0; i < a.terms_.size(); ++i) {
      int c = grlex_cmp(a.terms_[i], b.terms_[i]);
      if (c != 0) return c < 0;
      if (a.terms_[i].c != b.terms_[i].c) return a.terms_[i].c < b.terms_[i].c;
    }
    return false;
  }

 private:
  std::vector<Monomial> terms_;
};

// Exact multivariate division: returns q with a == q*b, or nullopt when b
// does not divide a.  Standard leading-term long division; termination is
// guaranteed because the leading monomial of the remainder strictly
// decreases in graded-lex order.
inline std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::invalid_argument("exact_divide: division by zero");
  Poly r = a;
  std::vector<Monomial> q;
  while (!r.is_zero()) {
    auto tm = mono_div(r.leading(), b.leading());
    if (!tm) return std::nullopt;
    q.push_back(*tm);
    Poly sub;
    {
      std::vector<Monomial> one{*tm};
      sub = Poly::from_terms(std::move(one)) * b;
    }
    r = r - sub;
  }
  return Poly::from_terms(std::move(q));
}

// ---- JetExpr -----------------------------------------------------------------

// Rational expression numerator/denominator.  The denominator is held as a
// multiset of primitive (integer-content-free) factors with positive leading
// coefficients; the public `denominator()` view is their expanded product,
// which by Gauss's lemma is again primitive with positive leading
// coefficient.  Keeping factors unexpanded is what makes repeated quotient
// rule differentiation of deeply nested rationals affordable.
class JetExpr {
 public:
  JetExpr() = default;  // zero

  static JetExpr from_rat(Rat c) {
    c.canonicalize();  // two-argument mpq construction is not canonical
    return JetExpr(Poly::constant(std::move(c)), {});
  }
  static JetExpr from_int(long n) { return from_rat(Rat(n)); }
  static JetExpr from_poly(Poly p) { return JetExpr(std::move(p), {}); }
  static JetExpr atom(int indet) { return from_poly(Poly::indet(indet)); }
  static JetExpr var(const JetVar& w) { return atom(indet_id(w)); }
  static JetExpr var(Dep d, int a, int b) { return atom(indet_id(JetVar(d, a, b))); }

  const Poly& numerator() const { return num_; }

  // factored view: list of (primitive factor, multiplicity)
  const std::vector<std::pair<Poly, int>>& denominator_factors() const {
    return den_;
  }

  Poly denominator() const {
    Poly d = Poly::constant(1);
    for (const auto& [f, m] : den_) d = d * f.pow(m);
    return d;
  }

  bool is_zero() const { return num_.is_zero(); }

  bool is_polynomial() const { return den_.empty(); }

  // true when the expression involves no indeterminates at all
  bool is_rational_constant() const { return den_.empty() && num_.is_constant(); }

  Rat rational_value() const {
    if (!is_rational_constant())
      throw std::invalid_argument("JetExpr: not a rational constant");
    return num_.constant_value();
  }

  friend JetExpr operator-(const JetExpr& a) { return JetExpr(-a.num_, a.den_); }

  friend JetExpr operator+(const JetExpr& a, const JetExpr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // lcm of the two factor multisets
    std::vector<std::pair<Poly, int>> lcm = a.den_;
    for (const auto& [f, m] : b.den_) {
      bool found = false;
      for (auto& [g, n] : lcm)
        if (g == f) {
          n = std::max(n, m);
          found = true;
          break;
        }
      if (!found) lcm.emplace_back(f, m);
    }
    auto cofactor = [&](const std::vector<std::pair<Poly, int>>& den) {
      Poly c = Poly::constant(1);
      for (const auto& [f, m] : lcm) {
        int have = 0;
        for (const auto& [g, n] : den)
          if (g == f) { have = n; break; }
        if (m > have) c = c * f.pow(m - have);
      }
      return c;
    };
    Poly num = a.num_ * cofactor(a.den_) + b.num_ * cofactor(b.den_);
    return make_cancelled(std::move(num), std::move(lcm));
  }

  friend JetExpr operator-(const JetExpr& a, const JetExpr& b) { return a + (-b); }

  friend JetExpr operator*(const JetExpr& a, const JetExpr& b) {
    if (a.is_zero() || b.is_zero()) return JetExpr();
    std::vector<std::pair<Poly, int>> den = a.den_;
    for (const auto& [f, m] : b.den_) {
      bool found = false;
      for (auto& [g, n] : den)
        if (g == f) { n += m; found = true; break; }
      if (!found) den.emplace_back(f, m);
    }
    return make_cancelled(a.num_ * b.num_, std::move(den));
  }

  // a / b; errors when b is identically zero.
  friend JetExpr operator/(const JetExpr& a, const JetExpr& b) {
    if (b.is_zero()) throw std::invalid_argument("JetExpr: division by zero");
    if (a.is_zero()) return JetExpr();
    // a * reciprocal(b): numerator of b becomes a denominator factor
    JetExpr r = a;
    // multiply numerator by b's denominator factors
    for (const auto& [f, m] : b.den_) r.num_ = r.num_ * f.pow(m);
    // divide by b's numerator
    Rat c = b.num_.content();
    if (b.num_.leading().c < 0) c = -c;
    Poly prim = b.num_.scaled(Rat(1) / c);
    r.num_ = r.num_.scaled(Rat(1) / c);
    if (!prim.is_constant()) {
      bool found = false;
      for (auto& [g, n] : r.den_)
        if (g == prim) { n += 1; found = true; break; }
      if (!found) r.den_.emplace_back(prim, 1);
    }
    return make_cancelled(std::move(r.num_), std::move(r.den_));
  }

  JetExpr pow(int k) const {
    if (k < 0) {
      JetExpr inv = from_int(1) / *this;
      return inv.pow(-k);
    }
    JetExpr r = from_int(1);
    JetExpr base = *this;
    while (k > 0) {
      if (k & 1) r = r * base;
      base = (k >>= 1) ? base * base : base;
    }
    return r;
  }

  // Equality oracle: cross-multiplication to a zero numerator.
  friend bool equivalent(const JetExpr& a, const JetExpr& b) {
    return (a - b).is_zero();
  }

  // structural comparison of canonical forms (used by tests for idempotence)
  friend bool operator==(const JetExpr& a, const JetExpr& b) {
    if (!(a.num_ == b.num_)) return false;
    if (a.den_.size() != b.den_.size()) return false;
    // factor lists are kept sorted, so compare in order
    for (size_t i = 0; i < a.den_.size(); ++i)
      if (a.den_[i].second != b.den_[i].second || !(a.den_[i].first == b.den_[i].first))
        return false;
    return true;
  }
  friend bool operator!=(const JetExpr& a, const JetExpr& b) { return !(a == b); }

  // Union of indeterminates appearing in numerator or denominator.
  std::vector<int> support() const {
    std::vector<int> ids = num_.support();
    for (const auto& [f, m] : den_) {
      auto s = f.support();
      ids.insert(ids.end(), s.begin(), s.end());
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  }

  bool contains(int id) const {
    if (num_.contains(id)) return true;
    for (const auto& [f, m] : den_)
      if (f.contains(id)) return true;
    return false;
  }

  // Simultaneous substitution of indeterminates by expressions.  Keys are
  // indeterminate ids; unbound indeterminates map to themselves.  Errors when
  // a denominator factor becomes identically zero.
  JetExpr substitute(const std::map<int, JetExpr>& bind) const {
    JetExpr result = subst_poly(num_, bind);
    for (const auto& [f, m] : den_) {
      JetExpr fs = subst_poly(f, bind);
      if (fs.is_zero())
        throw std::runtime_error(
            "substitute: a denominator vanishes identically under the binding");
      result = result / fs.pow(m);
    }
    return result;
  }

 private:
  JetExpr(Poly n, std::vector<std::pair<Poly, int>> d)
      : num_(std::move(n)), den_(std::move(d)) {
    if (num_.is_zero()) den_.clear();
    sort_factors();
  }

  void sort_factors() {
    std::sort(den_.begin(), den_.end(),
              [](const std::pair<Poly, int>& a, const std::pair<Poly, int>& b) {
                return poly_less(a.first, b.first);
              });
  }

  // Normalize a (numerator, factor multiset) pair: drop factors cancelled by
  // exact division, fold constant factors into the numerator.
  static JetExpr make_cancelled(Poly num, std::vector<std::pair<Poly, int>> den) {
    if (num.is_zero()) return JetExpr();
    std::vector<std::pair<Poly, int>> kept;
    kept.reserve(den.size());
    for (auto& [f, m] : den) {
      if (f.is_constant()) {
        Rat c = f.constant_value();
        if (c == 0) throw std::invalid_argument("JetExpr: zero denominator factor");
        for (int i = 0; i < m; ++i) num = num.scaled(Rat(1) / c);
        continue;
      }
      while (m > 0) {
        auto q = exact_divide(num, f);
        if (!q) break;
        num = std::move(*q);
        --m;
        if (num.is_zero()) return JetExpr();
      }
      if (m > 0) kept.emplace_back(std::move(f), m);
    }
    return JetExpr(std::move(num), std::move(kept));
  }

  static JetExpr subst_poly(const Poly& p, const std::map<int, JetExpr>& bind) {
    // Group the per-monomial images by denominator factor multiset: numerators
    // sharing a denominator merge as plain polynomials, and the cross-multiply
    // plus cancellation of operator+ runs once per distinct denominator rather
    // than once per monomial.  When the images telescope to zero this skips
    // every exact-division attempt.
    struct DenLess {
      bool operator()(const std::vector<std::pair<Poly, int>>& a,
                      const std::vector<std::pair<Poly, int>>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = 0; i < a.size(); ++i) {
          if (a[i].second != b[i].second) return a[i].second < b[i].second;
          if (poly_less(a[i].first, b[i].first)) return true;
          if (poly_less(b[i].first, a[i].first)) return false;
        }
        return false;
      }
    };
    std::map<std::vector<std::pair<Poly, int>>, std::vector<Poly>, DenLess> buckets;
    for (const auto& mo : p.terms()) {
      JetExpr term = from_rat(mo.c);
      for (auto& [id, e] : mo.pw) {
        auto it = bind.find(id);
        JetExpr base = (it == bind.end()) ? atom(id) : it->second;
        term = term * base.pow(e);
      }
      if (!term.is_zero()) buckets[term.den_].push_back(std::move(term.num_));
    }
    JetExpr acc;
    for (auto& [den, nums] : buckets) {
      // balanced pairwise merge keeps the polynomial additions near-linear
      while (nums.size() > 1) {
        std::vector<Poly> next;
        next.reserve((nums.size() + 1) / 2);
        for (size_t i = 0; i + 1 < nums.size(); i += 2)
          next.push_back(nums[i] + nums[i + 1]);
        if (nums.size() & 1) next.push_back(std::move(nums.back()));
        nums = std::move(next);
      }
      if (nums.front().is_zero()) continue;
      acc = acc + make_cancelled(std::move(nums.front()), den);
    }
    return acc;
  }

  Poly num_;
  std::vector<std::pair<Poly, int>> den_;  // primitive positive-leading factors
};

// ---- Convenience atoms -------------------------------------------------------

namespace sym {
inline JetExpr alpha() { return JetExpr::atom(kIdAlpha); }
inline JetExpr beta() { return JetExpr::atom(kIdBeta); }
inline JetExpr t() { return JetExpr::atom(kIdT); }
inline JetExpr x() { return JetExpr::atom(kIdX); }
inline JetExpr zeta() { return JetExpr::atom(kIdZeta); }
inline JetExpr z() { return JetExpr::atom(kIdZ); }
inline JetExpr num(long n) { return JetExpr::from_int(n); }
inline JetExpr frac(long a, long b) { return JetExpr::from_rat(Rat(a, b)); }
// jet variable atom, e.g. jet(Dep::p, 1, 0) is p_t
inline JetExpr jet(Dep d, int a, int b) { return JetExpr::var(d, a, b); }
}  // namespace sym

// ---- Printing ----------------------------------------------------------------

inline std::string to_string(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // canonical storage is descending graded-lex; the debug syntax reads in
  // ascending order (constants first), so walk the terms backwards
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& m = *it;
    Rat c = m.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << '-';
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    bool coeff_one = (c == 1);
    if (!coeff_one || m.pw.empty()) os << c;
    bool need_star = !coeff_one || m.pw.empty();
    for (auto& [id, e] : m.pw) {
      if (need_star) os << '*';
      os << indet_name(id);
      if (e > 1) os << '^' << e;
      need_star = true;
    }
  }
  return os.str();
}

inline std::string to_string(const JetExpr& e) {
  if (e.is_polynomial()) return to_string(e.numerator());
  return "(" + to_string(e.numerator()) + ")/(" + to_string(e.denominator()) + ")";
}

// ---- Parsing -----------------------------------------------------------------
//
// Grammar (whitespace ignored):
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' uint]
//   atom   := uint | name ['[' uint ',' uint ']'] | '(' expr ')'
// Names: alpha beta t x zeta z  and dependents p v vstar V f (bare name is
// the order-(0,0) jet variable).  print -> parse is the identity.

class Parser {
 public:
  explicit Parser(std::string s) : s_(std::move(s)) {}

  JetExpr parse() {
    JetExpr e = parse_expr();
    skip_ws();
    if (pos_ != s_.size())
      throw std::invalid_argument("parse: trailing input at position " +
                                  std::to_string(pos_));
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  JetExpr parse_expr() {
    JetExpr e = eat('-') ? -parse_term() : (eat('+'), parse_term());
    for (;;) {
      if (eat('+')) e = e + parse_term();
      else if (eat('-')) e = e - parse_term();
      else return e;
    }
  }

  JetExpr parse_term() {
    JetExpr e = parse_factor();
    for (;;) {
      if (eat('*')) e = e * parse_factor();
      else if (eat('/')) e = e / parse_factor();
      else return e;
    }
  }

  JetExpr parse_factor() {
    bool neg = false;
    while (eat('-')) neg = !neg;
    JetExpr e = parse_atom();
    if (eat('^')) {
      long k = parse_uint();
      e = e.pow(static_cast<int>(k));
    }
    return neg ? -e : e;
  }

  long parse_uint() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_)
      throw std::invalid_argument("parse: expected integer at position " +
                                  std::to_string(start));
    return std::stol(s_.substr(start, pos_ - start));
  }

  JetExpr parse_atom() {
    skip_ws();
    if (pos_ >= s_.size())
      throw std::invalid_argument("parse: unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)))
      return JetExpr::from_rat(Rat(parse_uint()));
    if (c == '(') {
      ++pos_;
      JetExpr e = parse_expr();
      if (!eat(')'))
        throw std::invalid_argument("parse: expected ')' at position " +
                                    std::to_string(pos_));
      return e;
    }
    // name
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name.empty())
      throw std::invalid_argument("parse: unexpected character at position " +
                                  std::to_string(pos_));
    if (name == "alpha") return sym::alpha();
    if (name == "beta") return sym::beta();
    if (name == "t") return sym::t();
    if (name == "x") return sym::x();
    if (name == "zeta") return sym::zeta();
    if (name == "z") return sym::z();
    Dep d;
    if (name == "p") d = Dep::p;
    else if (name == "v") d = Dep::v;
    else if (name == "vstar") d = Dep::vstar;
    else if (name == "V") d = Dep::V;
    else if (name == "f") d = Dep::f;
    else
      throw std::invalid_argument("parse: unknown symbol '" + name + "'");
    if (eat('[')) {
      long a = parse_uint();
      if (!eat(','))
        throw std::invalid_argument("parse: expected ',' in jet index");
      long b = parse_uint();
      if (!eat(']'))
        throw std::invalid_argument("parse: expected ']' in jet index");
      return JetExpr::var(d, static_cast<int>(a), static_cast<int>(b));
    }
    return JetExpr::var(d, 0, 0);
  }

  std::string s_;
  size_t pos_ = 0;
};

inline JetExpr parse(const std::string& s) { return Parser(s).parse(); }

}  // namespace wvlab
