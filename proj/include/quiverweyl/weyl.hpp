#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quiverweyl/combination.hpp"
#include "quiverweyl/errors.hpp"
#include "quiverweyl/projective.hpp"
#include "quiverweyl/quiver.hpp"

namespace quiverweyl {

// Coordinate B_α^{kl}: row k indexes V_{t(α)}, column l indexes V_{s(α)}.
// Ordered lexicographically on (arrow, row, col).
class Generator {
 public:
  Generator() = default;
  Generator(ArrowId arrow, int row, int col)
      : key_(static_cast<std::uint32_t>(arrow) << 16 | static_cast<std::uint32_t>(row) << 8 |
             static_cast<std::uint32_t>(col)) {}

  ArrowId arrow() const { return key_ >> 16; }
  int row() const { return (key_ >> 8) & 0xff; }
  int col() const { return key_ & 0xff; }

  friend auto operator<=>(const Generator&, const Generator&) = default;

 private:
  std::uint32_t key_ = 0;
};

// A sorted word: a commutative monomial or a normal-ordered Weyl word.
using Word = std::vector<Generator>;

struct CommutativeTag {};
struct WeylTag {};

using PolyElement = Combination<Word, CommutativeTag>;
using WeylElement = Combination<Word, WeylTag>;

// Quiver, embedding and the cached weights ε_α. Read-only once built.
class WeylContext {
 public:
  WeylContext(QuiverData q, Embedding a) : q_(std::move(q)), a_(std::move(a)) {
    require_compatible(q_, a_);
    for (ArrowId x = 0; x < q_.arrow_count(); ++x) {
      eps_.push_back(quiverweyl::epsilon(q_, a_, x));
      eps_inv_.push_back(eps_.back().inverse());
    }
  }

  const QuiverData& quiver() const { return q_; }
  const Embedding& embedding() const { return a_; }
  const Rational& epsilon(ArrowId x) const { return eps_.at(x); }

  Generator generator(ArrowId arrow, int row, int col) const {
    if (arrow >= q_.arrow_count()) throw ValidationError("unknown arrow id");
    if (row < 0 || row >= q_.dim(q_.target(arrow)) || col < 0 ||
        col >= q_.dim(q_.source(arrow)))
      throw ValidationError("index out of range for " + q_.arrow_label(arrow));
    return Generator(arrow, row, col);
  }

  std::vector<Generator> generators() const {
    std::vector<Generator> out;
    for (ArrowId x = 0; x < q_.arrow_count(); ++x)
      for (int k = 0; k < q_.dim(q_.target(x)); ++k)
        for (int l = 0; l < q_.dim(q_.source(x)); ++l) out.emplace_back(x, k, l);
    return out;
  }

  // {x, y} = [x̂, ŷ] = ε_α^{-1} δ_{α*β} δ_{kl′} δ_{k′l}.
  std::optional<Rational> bracket(Generator x, Generator y) const {
    if (q_.opposite(x.arrow()) != y.arrow() || x.row() != y.col() || y.row() != x.col())
      return std::nullopt;
    return eps_inv_[x.arrow()];
  }

 private:
  QuiverData q_;
  Embedding a_;
  std::vector<Rational> eps_;
  std::vector<Rational> eps_inv_;
};

inline Word merge_words(const Word& u, const Word& v) {
  Word w;
  w.reserve(u.size() + v.size());
  std::merge(u.begin(), u.end(), v.begin(), v.end(), std::back_inserter(w));
  return w;
}

inline Word erase_at(const Word& w, std::size_t p) {
  Word r;
  r.reserve(w.size() - 1);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (i != p) r.push_back(w[i]);
  return r;
}

template <typename E>
E constant_element(const Scalar& c) {
  return E::single(Word{}, c);
}

template <typename E>
E generator_element(Generator g, const Scalar& c = Scalar(1)) {
  return E::single(Word{g}, c);
}

// ---------------------------------------------------------------------------
// Commutative Poisson algebra A₀.

inline PolyElement poly_product(const PolyElement& f, const PolyElement& g) {
  PolyElement r;
  for (const auto& [u, cu] : f.terms())
    for (const auto& [v, cv] : g.terms()) r.add(merge_words(u, v), cu * cv);
  return r;
}

// Leibniz extension of the generator bracket over every pair of letters.
inline PolyElement poisson_bracket(const PolyElement& f, const PolyElement& g,
                                   const WeylContext& ctx) {
  PolyElement r;
  for (const auto& [u, cu] : f.terms())
    for (const auto& [v, cv] : g.terms())
      for (std::size_t p = 0; p < u.size(); ++p)
        for (std::size_t s = 0; s < v.size(); ++s) {
          auto b = ctx.bracket(u[p], v[s]);
          if (!b) continue;
          r.add(merge_words(erase_at(u, p), erase_at(v, s)), cu * cv * Scalar(*b));
        }
  return r;
}

// ---------------------------------------------------------------------------
// Weyl algebra A with normal-ordered words.

namespace detail {

// (Σ c_w w) · y: y slides left past every larger letter x, and each passage
// leaves the central term [x, y] times the word without x.
inline void multiply_by_generator(const WeylElement& x, Generator y, const WeylContext& ctx,
                                  WeylElement& out) {
  for (const auto& [w, c] : x.terms()) {
    auto pos = std::upper_bound(w.begin(), w.end(), y) - w.begin();
    Word moved = w;
    moved.insert(moved.begin() + pos, y);
    out.add(moved, c);
    for (auto p = static_cast<std::size_t>(pos); p < w.size(); ++p)
      if (auto b = ctx.bracket(w[p], y)) out.add(erase_at(w, p), c * Scalar(*b));
  }
}

}  // namespace detail

inline WeylElement weyl_product(const WeylElement& x, const WeylElement& y,
                                const WeylContext& ctx) {
  WeylElement r;
  for (const auto& [v, cv] : y.terms()) {
    WeylElement acc = x;
    for (Generator g : v) {
      WeylElement next;
      detail::multiply_by_generator(acc, g, ctx, next);
      acc = std::move(next);
    }
    r += acc * cv;
  }
  return r;
}

inline WeylElement commutator(const WeylElement& x, const WeylElement& y,
                              const WeylContext& ctx) {
  return weyl_product(x, y, ctx) - weyl_product(y, x, ctx);
}

// Product of generators in the given (not necessarily sorted) order.
inline WeylElement ordered_product(const std::vector<Generator>& letters, const WeylContext& ctx) {
  WeylElement acc = constant_element<WeylElement>(Scalar(1));
  for (Generator g : letters) {
    WeylElement next;
    detail::multiply_by_generator(acc, g, ctx, next);
    acc = std::move(next);
  }
  return acc;
}

template <typename E>
std::size_t bernstein_order(const E& x) {
  std::size_t k = 0;
  for (const auto& [w, c] : x.terms()) k = std::max(k, w.size());
  return k;
}

// Degree-k part read as a commutative polynomial.
inline PolyElement symbol(const WeylElement& x, std::size_t k) {
  if (bernstein_order(x) > k)
    throw OrderViolation("order " + std::to_string(bernstein_order(x)) + " exceeds " +
                         std::to_string(k));
  PolyElement r;
  for (const auto& [w, c] : x.terms())
    if (w.size() == k) r.add(w, c);
  return r;
}

// Normal-ordered reading of a commutative polynomial.
inline WeylElement as_weyl(const PolyElement& p) {
  WeylElement r;
  for (const auto& [w, c] : p.terms()) r.add(w, c);
  return r;
}

inline PolyElement as_poly(const WeylElement& x) {
  PolyElement r;
  for (const auto& [w, c] : x.terms()) r.add(w, c);
  return r;
}

// ---------------------------------------------------------------------------
// Polynomial Rees algebra Σ f_k ℏ^k with order(f_k) ≤ k.

class ReesElement {
 public:
  ReesElement() = default;

  static ReesElement homogeneous(int grade, const WeylElement& f) {
    ReesElement r;
    r.add(grade, f);
    return r;
  }

  static ReesElement hbar(int power = 1) {
    return homogeneous(power, constant_element<WeylElement>(Scalar(1)));
  }

  void add(int grade, const WeylElement& f) {
    if (grade < 0) throw OrderViolation("negative grade");
    if (bernstein_order(f) > static_cast<std::size_t>(grade))
      throw OrderViolation("order " + std::to_string(bernstein_order(f)) + " exceeds grade " +
                           std::to_string(grade));
    if (f.is_zero()) return;
    auto& slot = grades_[grade];
    slot += f;
    if (slot.is_zero()) grades_.erase(grade);
  }

  const std::map<int, WeylElement>& grades() const { return grades_; }
  bool is_zero() const { return grades_.empty(); }

  WeylElement component(int grade) const {
    auto it = grades_.find(grade);
    return it == grades_.end() ? WeylElement() : it->second;
  }

  ReesElement& operator+=(const ReesElement& o) {
    for (const auto& [k, f] : o.grades_) add(k, f);
    return *this;
  }
  ReesElement& operator-=(const ReesElement& o) {
    for (const auto& [k, f] : o.grades_) add(k, -f);
    return *this;
  }
  friend ReesElement operator+(ReesElement a, const ReesElement& b) { return a += b; }
  friend ReesElement operator-(ReesElement a, const ReesElement& b) { return a -= b; }
  friend ReesElement operator*(ReesElement a, const Scalar& s) {
    ReesElement r;
    for (auto& [k, f] : a.grades_) r.add(k, f * s);
    return r;
  }
  friend bool operator==(const ReesElement&, const ReesElement&) = default;

  template <typename F>
  ReesElement map_grades(F&& f) const {
    ReesElement r;
    for (const auto& [k, x] : grades_) r.add(k, f(x));
    return r;
  }

 private:
  std::map<int, WeylElement> grades_;
};

inline ReesElement rees_product(const ReesElement& x, const ReesElement& y,
                                const WeylContext& ctx) {
  ReesElement r;
  for (const auto& [k, f] : x.grades())
    for (const auto& [l, g] : y.grades()) r.add(k + l, weyl_product(f, g, ctx));
  return r;
}

inline ReesElement rees_commutator(const ReesElement& x, const ReesElement& y,
                                   const WeylContext& ctx) {
  return rees_product(x, y, ctx) - rees_product(y, x, ctx);
}

// Divides by ℏ^k when every grade is ≥ k and stays order-compatible.
inline std::optional<ReesElement> divide_by_hbar(const ReesElement& x, int k) {
  ReesElement r;
  for (const auto& [g, f] : x.grades()) {
    if (g < k || bernstein_order(f) > static_cast<std::size_t>(g - k)) return std::nullopt;
    r.add(g - k, f);
  }
  return r;
}

inline PolyElement semiclassical_limit(const ReesElement& x) {
  PolyElement r;
  for (const auto& [k, f] : x.grades()) r += symbol(f, k);
  return r;
}

// ---------------------------------------------------------------------------
// Text form: factors "B[s->t;k,l]" with 1-based indices.

inline std::string to_string(Generator g, const QuiverData& q) {
  return "B[" + q.arrow_label(g.arrow()) + ";" + std::to_string(g.row() + 1) + "," +
         std::to_string(g.col() + 1) + "]";
}

template <typename Tag>
std::string to_string(const Combination<Word, Tag>& x, const QuiverData& q,
                      const ParameterSet* names = nullptr) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : x.terms()) {
    bool negative = c.is_constant() && c.constant().sign() < 0;
    Scalar mag = negative ? -c : c;
    std::string coeff = mag.is_constant() ? mag.to_string() : "(" + mag.to_string(names) + ")";
    std::string word;
    for (std::size_t p = 0; p < w.size(); ++p) word += (p ? "*" : "") + to_string(w[p], q);
    std::string term = w.empty() ? coeff : (mag.is_one() ? word : coeff + "*" + word);
    if (first) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

inline std::string to_string(const ReesElement& x, const QuiverData& q,
                             const ParameterSet* names = nullptr) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [k, f] : x.grades()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(f, q, names) + ")*hbar^" + std::to_string(k);
  }
  return out;
}

namespace detail {

// term := factor ('*' factor)*, factor := coefficient | B[...];
// element := term (('+'|'-') term)*. Coefficients may be parenthesised
// Scalar expressions.
template <typename E>
class WordParser {
 public:
  WordParser(std::string_view s, const WeylContext& ctx, const ParameterSet& names)
      : s_(s), ctx_(ctx), names_(names) {}

  E parse() {
    E r;
    bool negate = false;
    skip();
    if (eat('-')) negate = true;
    else eat('+');
    for (;;) {
      E t = term();
      r += negate ? -t : t;
      skip();
      if (pos_ >= s_.size()) return r;
      if (eat('+')) negate = false;
      else if (eat('-')) negate = true;
      else throw SyntaxError("expected '+' or '-'", pos_);
    }
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

  E term() {
    Scalar coeff(1);
    std::vector<Generator> letters;
    do {
      skip();
      if (s_.substr(pos_, 2) == "B[") letters.push_back(generator());
      else coeff *= coefficient();
    } while (eat('*'));
    if constexpr (std::is_same_v<E, WeylElement>) {
      return ordered_product(letters, ctx_) * coeff;
    } else {
      std::sort(letters.begin(), letters.end());
      return E::single(letters, coeff);
    }
  }

  Scalar coefficient() {
    skip();
    std::size_t start = pos_;
    if (eat('(')) {
      int depth = 1;
      while (pos_ < s_.size() && depth > 0) {
        if (s_[pos_] == '(') ++depth;
        if (s_[pos_] == ')') --depth;
        ++pos_;
      }
      if (depth != 0) throw SyntaxError("unbalanced parenthesis", start);
      return parse_scalar(s_.substr(start, pos_ - start), names_);
    }
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '/'))
      ++pos_;
    if (start == pos_) throw SyntaxError("expected coefficient or generator", pos_);
    return Scalar(Rational::parse(s_.substr(start, pos_ - start)));
  }

  Generator generator() {
    std::size_t start = pos_;
    pos_ += 2;
    auto close = s_.find(']', pos_);
    if (close == std::string_view::npos) throw SyntaxError("unterminated generator", start);
    std::string body(s_.substr(pos_, close - pos_));
    pos_ = close + 1;
    auto semi = body.find(';'), comma = body.find(',');
    if (semi == std::string::npos || comma == std::string::npos || comma < semi)
      throw SyntaxError("generator needs 'arrow;row,col'", start);
    ArrowId arrow = ctx_.quiver().arrow_by_label(body.substr(0, semi));
    int row = std::stoi(body.substr(semi + 1, comma - semi - 1)) - 1;
    int col = std::stoi(body.substr(comma + 1)) - 1;
    return ctx_.generator(arrow, row, col);
  }

  std::string_view s_;
  const WeylContext& ctx_;
  const ParameterSet& names_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline WeylElement parse_weyl(std::string_view s, const WeylContext& ctx,
                              const ParameterSet& names = {}) {
  return detail::WordParser<WeylElement>(s, ctx, names).parse();
}

inline PolyElement parse_poly(std::string_view s, const WeylContext& ctx,
                              const ParameterSet& names = {}) {
  return detail::WordParser<PolyElement>(s, ctx, names).parse();
}

}  // namespace quiverweyl
