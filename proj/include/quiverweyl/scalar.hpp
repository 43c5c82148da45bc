#pragma once

#include <cctype>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quiverweyl/errors.hpp"
#include "quiverweyl/polynomial.hpp"
#include "quiverweyl/rational.hpp"

namespace quiverweyl {

struct TimeParameter {
  std::size_t index = 0;
  friend auto operator<=>(const TimeParameter&, const TimeParameter&) = default;
};

// Declared time parameters; the declaration index fixes the monomial order.
class ParameterSet {
 public:
  ParameterSet() = default;
  explicit ParameterSet(const std::vector<std::string>& names) {
    for (const auto& n : names) declare(n);
  }

  TimeParameter declare(const std::string& name) {
    if (auto t = find(name)) return *t;
    names_.push_back(name);
    return TimeParameter{names_.size() - 1};
  }

  std::optional<TimeParameter> find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return TimeParameter{i};
    return std::nullopt;
  }

  TimeParameter at(std::string_view name) const {
    if (auto t = find(name)) return *t;
    throw UnknownParameter(std::string(name));
  }

  bool contains(TimeParameter t) const { return t.index < names_.size(); }
  const std::string& name(TimeParameter t) const { return names_.at(t.index); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

inline std::string default_parameter_name(std::size_t index) {
  return "t" + std::to_string(index + 1);
}

inline std::string to_string(const Polynomial& p, const ParameterSet* names = nullptr) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::string factors;
    for (std::size_t v = 0; v < m.exps.size(); ++v) {
      if (m.exps[v] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += names && v < names->size() ? names->name(TimeParameter{v})
                                            : default_parameter_name(v);
      if (m.exps[v] > 1) factors += "^" + std::to_string(m.exps[v]);
    }
    Rational mag = c.sign() < 0 ? -c : c;
    std::string term;
    if (factors.empty()) term = mag.to_string();
    else if (mag.is_one()) term = factors;
    else term = mag.to_string() + "*" + factors;
    if (first) out = c.sign() < 0 ? "-" + term : term;
    else out += (c.sign() < 0 ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

// Element of Q(t1, ..., tn): reduced fraction with grlex-monic denominator.
// Constants skip the polynomial representation entirely.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long c) : c_(c) {}               // NOLINT
  Scalar(const Rational& c) : c_(c) {}    // NOLINT

  static Scalar parameter(TimeParameter t) {
    return from_parts(Polynomial::variable(t.index), Polynomial(1));
  }

  static Scalar fraction(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw DivisionByZero();
    if (num.is_zero()) return Scalar();
    if (den.is_constant()) return from_parts(num * den.constant_term().inverse(), Polynomial(1));
    Polynomial g = gcd(num, den);
    Polynomial n = g.is_constant() ? num : divide_exact(num, g);
    Polynomial d = g.is_constant() ? den : divide_exact(den, g);
    Rational lc_inv = d.leading_coefficient().inverse();
    return from_parts(n * lc_inv, d * lc_inv);
  }

  bool is_zero() const { return !f_ && c_.is_zero(); }
  bool is_one() const { return !f_ && c_.is_one(); }
  bool is_constant() const { return !f_; }
  // Valid when is_constant().
  const Rational& constant() const { return c_; }

  Polynomial numerator() const { return f_ ? f_->num : Polynomial(c_); }
  Polynomial denominator() const { return f_ ? f_->den : Polynomial(1); }

  Scalar operator-() const {
    if (!f_) return Scalar(-c_);
    return from_parts(-f_->num, f_->den);
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    if (!x.f_ && !y.f_) return Scalar(x.c_ + y.c_);
    if (!x.f_) return y.add_constant(x.c_);
    if (!y.f_) return x.add_constant(y.c_);
    if (x.f_->den == y.f_->den) return fraction(x.f_->num + y.f_->num, x.f_->den);
    // With g = gcd of the denominators, only factors of g can cancel.
    Polynomial g = gcd(x.f_->den, y.f_->den);
    if (g.is_constant())
      return from_parts(x.f_->num * y.f_->den + y.f_->num * x.f_->den, x.f_->den * y.f_->den);
    Polynomial dx = divide_exact(x.f_->den, g), dy = divide_exact(y.f_->den, g);
    Polynomial n = x.f_->num * dy + y.f_->num * dx;
    if (n.is_zero()) return Scalar();
    Polynomial h = gcd(n, g);
    if (!h.is_constant()) {
      n = divide_exact(n, h);
      g = divide_exact(g, h);
    }
    Polynomial d = dx * dy * g;
    Rational lc_inv = d.leading_coefficient().inverse();
    return from_parts(n * lc_inv, d * lc_inv);
  }

  friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    if (!x.f_ && !y.f_) return Scalar(x.c_ * y.c_);
    if (!x.f_) return y.scale(x.c_);
    if (!y.f_) return x.scale(y.c_);
    // Cross cancellation keeps the result reduced without a full gcd.
    Polynomial g1 = gcd(x.f_->num, y.f_->den), g2 = gcd(y.f_->num, x.f_->den);
    Polynomial n = divide_exact(x.f_->num, g1) * divide_exact(y.f_->num, g2);
    Polynomial d = divide_exact(x.f_->den, g2) * divide_exact(y.f_->den, g1);
    return from_parts(std::move(n), std::move(d));
  }

  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (!f_) return Scalar(c_.inverse());
    Rational lc_inv = f_->num.leading_coefficient().inverse();
    return from_parts(f_->den * lc_inv, f_->num * lc_inv);
  }

  friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    if (!x.f_ || !y.f_) return !x.f_ && !y.f_ && x.c_ == y.c_;
    return x.f_->num == y.f_->num && x.f_->den == y.f_->den;
  }

  // Quotient rule on the reduced representation.
  Scalar partial(TimeParameter t) const {
    if (!f_) return Scalar();
    const auto& n = f_->num;
    const auto& d = f_->den;
    return fraction(n.derivative(t.index) * d - n * d.derivative(t.index), d * d);
  }

  bool involves(TimeParameter t) const {
    return f_ && (f_->num.degree_in(t.index) > 0 || f_->den.degree_in(t.index) > 0);
  }

  // Highest parameter index present, or -1.
  long max_parameter() const {
    if (!f_) return -1;
    return std::max(f_->num.max_variable(), f_->den.max_variable());
  }

  std::string to_string(const ParameterSet* names = nullptr) const {
    if (!f_) return c_.to_string();
    if (f_->den.is_constant()) return quiverweyl::to_string(f_->num, names);
    return "(" + quiverweyl::to_string(f_->num, names) + ")/(" +
           quiverweyl::to_string(f_->den, names) + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.to_string();
  }

 private:
  struct Fraction {
    Polynomial num;
    Polynomial den;
  };

  // Inputs must already be reduced with monic denominator.
  static Scalar from_parts(Polynomial num, Polynomial den) {
    if (num.is_constant() && den.is_constant()) return Scalar(num.constant_term());
    Scalar s;
    s.f_ = std::make_shared<const Fraction>(Fraction{std::move(num), std::move(den)});
    return s;
  }

  // gcd(n + c·d, d) = gcd(n, d) = 1, so no reduction is needed.
  Scalar add_constant(const Rational& c) const {
    if (c.is_zero()) return *this;
    return from_parts(f_->num + f_->den * c, f_->den);
  }

  Scalar scale(const Rational& c) const {
    if (c.is_zero()) return Scalar();
    return from_parts(f_->num * c, f_->den);
  }

  Rational c_;
  std::shared_ptr<const Fraction> f_;
};

using Assignment = std::map<TimeParameter, Rational>;

inline Rational evaluate(const Scalar& x, const Assignment& at, const ParameterSet& names) {
  auto lookup = [&](std::size_t v) -> const Rational& {
    auto it = at.find(TimeParameter{v});
    if (it == at.end())
      throw UnknownParameter(v < names.size() ? names.name(TimeParameter{v})
                                              : default_parameter_name(v));
    return it->second;
  };
  if (x.is_constant()) return x.constant();
  Rational d = x.denominator().evaluate(lookup);
  if (d.is_zero()) throw EvaluationPole();
  return x.numerator().evaluate(lookup) / d;
}

inline Scalar partial(const Scalar& x, TimeParameter t, const ParameterSet& names) {
  if (!names.contains(t)) throw UnknownParameter(default_parameter_name(t.index));
  return x.partial(t);
}

inline Scalar partial(const Scalar& x, std::string_view name, const ParameterSet& names) {
  return x.partial(names.at(name));
}

namespace detail {

class ScalarParser {
 public:
  ScalarParser(std::string_view text, const ParameterSet& names) : s_(text), names_(names) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) throw SyntaxError("unexpected character", pos_);
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (eat('+')) v = v + term();
      else if (eat('-')) v = v - term();
      else return v;
    }
  }

  Scalar term() {
    Scalar v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        Scalar d = unary();
        if (d.is_zero()) throw DivisionByZero();
        v = v / d;
      } else {
        return v;
      }
    }
  }

  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Scalar power() {
    Scalar base = atom();
    if (!eat('^')) return base;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw SyntaxError("expected exponent", pos_);
    unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
    Scalar r(1);
    for (unsigned long i = 0; i < e; ++i) r = r * base;
    return r;
  }

  Scalar atom() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Scalar(Rational(mpz_class(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return Scalar::parameter(names_.at(s_.substr(start, pos_ - start)));
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view s_;
  const ParameterSet& names_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses sums, products, quotients, integer powers and parentheses over
// integer literals and declared parameter names.
inline Scalar parse_scalar(std::string_view text, const ParameterSet& names = {}) {
  return detail::ScalarParser(text, names).parse();
}

}  // namespace quiverweyl
