#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "quiverweyl/fault.hpp"
#include "quiverweyl/projective.hpp"

namespace quiverweyl {

// Seeded generator of small exact test inputs.
class RandomInputs {
 public:
  explicit RandomInputs(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational rational(long range = 5, long max_den = 4) {
    return Rational(integer(-range, range), integer(1, max_den));
  }

  Rational nonzero_rational(long range = 5, long max_den = 4) {
    for (;;) {
      Rational r = rational(range, max_den);
      if (!r.is_zero()) return r;
    }
  }

  // Distinct points; with_infinity puts one randomly chosen part at ∞.
  Embedding embedding(std::size_t parts, bool with_infinity) {
    std::vector<ProjPoint> pts;
    std::size_t inf_at = with_infinity ? static_cast<std::size_t>(integer(0, parts - 1)) : parts;
    while (pts.size() < parts) {
      if (pts.size() == inf_at) {
        pts.push_back(ProjPoint::infinity());
        continue;
      }
      ProjPoint x = ProjPoint::finite(rational(6, 3));
      bool fresh = true;
      for (const auto& y : pts) fresh = fresh && !(x == y);
      if (fresh) pts.push_back(x);
    }
    return Embedding(std::move(pts));
  }

  GroupElement group_element() {
    Rational a = rational(), b = rational(), c = rational();
    if (!a.is_zero()) return GroupElement(a, b, c, (Rational(1) + b * c) / a);
    c = nonzero_rational();
    return GroupElement(a, -c.inverse(), c, rational());
  }

  // A group element whose η case on `a` is `branch`. The caller supplies an
  // embedding with ∞ for the degenerate branches and without it otherwise.
  GroupElement group_element_for(EtaCase branch, const Embedding& a) {
    std::vector<Rational> finite;
    for (const auto& x : a.points())
      if (!x.is_infinite()) finite.push_back(x.value());
    auto avoids_all = [&](const Rational& aa, const Rational& c) {
      for (const auto& v : finite)
        if (aa == c * v) return false;
      return true;
    };
    auto completed = [&](const Rational& aa, const Rational& c) {
      Rational d = rational();
      return GroupElement(aa, (aa * d - Rational(1)) / c, c, d);
    };
    switch (branch) {
      case EtaCase::degenerate_c_zero: {
        Rational aa = nonzero_rational();
        return GroupElement(aa, rational(), Rational(0), aa.inverse());
      }
      case EtaCase::generic_to_degenerate:
      case EtaCase::degenerate_swap: {
        Rational c = nonzero_rational();
        Rational v = finite.at(static_cast<std::size_t>(integer(0, finite.size() - 1)));
        return completed(c * v, c);
      }
      case EtaCase::degenerate_to_generic:
      case EtaCase::generic:
        for (;;) {
          Rational c = nonzero_rational(), aa = rational();
          if (avoids_all(aa, c)) return completed(aa, c);
        }
    }
    return GroupElement();
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace quiverweyl
