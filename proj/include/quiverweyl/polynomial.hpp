#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "quiverweyl/errors.hpp"
#include "quiverweyl/rational.hpp"

namespace quiverweyl {

// Exponent vector indexed by parameter index; trailing zeros are trimmed so
// equal monomials have equal representations.
struct Monomial {
  std::vector<std::uint32_t> exps;

  static Monomial variable(std::size_t v, std::uint32_t e = 1) {
    Monomial m;
    if (e == 0) return m;
    m.exps.assign(v + 1, 0);
    m.exps[v] = e;
    return m;
  }

  std::uint32_t exponent(std::size_t v) const { return v < exps.size() ? exps[v] : 0; }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (auto e : exps) d += e;
    return d;
  }

  bool is_one() const { return exps.empty(); }

  bool divides(const Monomial& o) const {
    if (exps.size() > o.exps.size()) return false;
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > o.exps[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.exps.assign(std::max(a.exps.size(), b.exps.size()), 0);
    for (std::size_t i = 0; i < a.exps.size(); ++i) m.exps[i] += a.exps[i];
    for (std::size_t i = 0; i < b.exps.size(); ++i) m.exps[i] += b.exps[i];
    return m;
  }

  // Requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (std::size_t i = 0; i < b.exps.size(); ++i) m.exps[i] -= b.exps[i];
    m.trim();
    return m;
  }

  void trim() {
    while (!exps.empty() && exps.back() == 0) exps.pop_back();
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic order; t1 > t2 > ... within a degree.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    auto da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    std::size_t n = std::max(a.exps.size(), b.exps.size());
    for (std::size_t i = 0; i < n; ++i) {
      auto ea = a.exponent(i), eb = b.exponent(i);
      if (ea != eb) return ea < eb;
    }
    return false;
  }
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT: constants embed implicitly
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
  }
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT

  static Polynomial variable(std::size_t v, std::uint32_t e = 1) {
    return term(Monomial::variable(v, e), Rational(1));
  }

  static Polynomial term(Monomial m, const Rational& c) {
    Polynomial p;
    m.trim();
    if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }
  Rational constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  // Leading term under grlex; undefined on zero.
  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

  std::uint32_t total_degree() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
  }

  std::uint32_t degree_in(std::size_t v) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
    return d;
  }

  // Highest parameter index present, or -1 for constants.
  long max_variable() const {
    long v = -1;
    for (const auto& [m, c] : terms_) v = std::max(v, static_cast<long>(m.exps.size()) - 1);
    return v;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this * leading_coefficient().inverse();
  }

  // Integer coefficients with gcd 1 and positive leading coefficient.
  Polynomial integer_primitive() const {
    if (is_zero()) return *this;
    mpz_class g = 0, l = 1;
    for (const auto& [m, c] : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.raw().get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.raw().get_den_mpz_t());
    }
    Rational s{mpq_class(l, g)};
    if (leading_coefficient().raw() < 0) s = -s;
    return *this * s;
  }

  Polynomial derivative(std::size_t v) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
      auto e = m.exponent(v);
      if (e == 0) continue;
      Monomial n = m;
      n.exps[v] -= 1;
      n.trim();
      r.add_term(n, c * Rational(static_cast<long>(e)));
    }
    return r;
  }

  // value(v) supplies the value of parameter v.
  template <typename Lookup>
  Rational evaluate(Lookup&& value) const {
    Rational sum;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t v = 0; v < m.exps.size(); ++v)
        if (m.exps[v] != 0) t *= value(v).pow(m.exps[v]);
      sum += t;
    }
    return sum;
  }

  // Coefficients as a polynomial in parameter v: result[k] multiplies t_v^k.
  std::vector<Polynomial> coefficients_in(std::size_t v) const {
    std::vector<Polynomial> out(degree_in(v) + 1);
    for (const auto& [m, c] : terms_) {
      auto e = m.exponent(v);
      Monomial rest = m;
      if (e != 0) {
        rest.exps[v] = 0;
        rest.trim();
      }
      out[e].add_term(rest, c);
    }
    return out;
  }

  Polynomial leading_coefficient_in(std::size_t v) const {
    auto d = degree_in(v);
    Polynomial r;
    for (const auto& [m, c] : terms_) {
      if (m.exponent(v) != d) continue;
      Monomial rest = m;
      if (d != 0) {
        rest.exps[v] = 0;
        rest.trim();
      }
      r.add_term(rest, c);
    }
    return r;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

 private:
  Terms terms_;
};

// Multivariate division by a single divisor under grlex.
inline std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero();
  Polynomial q, r, p = a;
  const Monomial& lb = b.leading_monomial();
  Rational lcb_inv = b.leading_coefficient().inverse();
  while (!p.is_zero()) {
    Monomial lp = p.leading_monomial();
    Rational cp = p.leading_coefficient();
    if (lb.divides(lp)) {
      Polynomial t = Polynomial::term(lp / lb, cp * lcb_inv);
      q += t;
      p -= t * b;
    } else {
      r.add_term(lp, cp);
      p.add_term(lp, -cp);
    }
  }
  return {std::move(q), std::move(r)};
}

inline Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  auto [q, r] = divide(a, b);
  if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
  return q;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

inline Polynomial content_in(const Polynomial& a, std::size_t v) {
  Polynomial g;
  for (const auto& c : a.coefficients_in(v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

inline Polynomial primitive_part_in(const Polynomial& a, std::size_t v) {
  if (a.is_zero()) return a;
  return divide_exact(a, content_in(a, v));
}

// lc(b)^k · a reduced modulo b as polynomials in t_v; the power of lc(b) is
// not tracked since callers only need the primitive part.
inline Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, std::size_t v) {
  auto db = b.degree_in(v);
  Polynomial lcb = b.leading_coefficient_in(v);
  while (!a.is_zero() && a.degree_in(v) >= db) {
    auto da = a.degree_in(v);
    Polynomial lca = a.leading_coefficient_in(v);
    a = lcb * a - lca * Polynomial::variable(v, da - db) * b;
  }
  return a;
}

}  // namespace detail

// Monic greatest common divisor, computed recursively on the highest
// parameter with primitive pseudo-remainder sequences.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  auto v = static_cast<std::size_t>(std::max(a.max_variable(), b.max_variable()));
  if (a.degree_in(v) == 0) return gcd(a, detail::content_in(b, v));
  if (b.degree_in(v) == 0) return gcd(detail::content_in(a, v), b);

  Polynomial ca = detail::content_in(a, v), cb = detail::content_in(b, v);
  Polynomial c = gcd(ca, cb);
  Polynomial pa = divide_exact(a, ca).integer_primitive();
  Polynomial pb = divide_exact(b, cb).integer_primitive();
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  for (;;) {
    Polynomial r = detail::pseudo_remainder(pa, pb, v);
    if (r.is_zero()) return (c * detail::primitive_part_in(pb, v)).monic();
    if (r.degree_in(v) == 0) return c.monic();
    pa = std::move(pb);
    pb = detail::primitive_part_in(r, v).integer_primitive();
  }
}

}  // namespace quiverweyl
