#pragma once

#include <functional>
#include <map>
#include <utility>

#include "quiverweyl/scalar.hpp"

namespace quiverweyl {

// Finite formal linear combination of keys with nonzero Scalar coefficients.
// Tag separates combinations that share a key type but not a product.
template <typename Key, typename Tag = void>
class Combination {
 public:
  using Map = std::map<Key, Scalar>;

  Combination() = default;

  static Combination single(Key k, const Scalar& c = Scalar(1)) {
    Combination r;
    r.add(std::move(k), c);
    return r;
  }

  void add(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar() : it->second;
  }

  Combination& operator+=(const Combination& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  Combination& operator-=(const Combination& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  Combination& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  Combination operator-() const {
    Combination r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }

  friend Combination operator+(Combination a, const Combination& b) { return a += b; }
  friend Combination operator-(Combination a, const Combination& b) { return a -= b; }
  friend Combination operator*(Combination a, const Scalar& s) { return a *= s; }
  friend Combination operator*(const Scalar& s, Combination a) { return a *= s; }

  friend bool operator==(const Combination& a, const Combination& b) {
    return a.terms_ == b.terms_;
  }

  // Applies f to every coefficient, dropping results that vanish.
  template <typename F>
  Combination map_coefficients(F&& f) const {
    Combination r;
    for (const auto& [k, c] : terms_) r.add(k, f(c));
    return r;
  }

 private:
  Map terms_;
};

}  // namespace quiverweyl
