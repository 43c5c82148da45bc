#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "quiverweyl/weyl.hpp"

namespace quiverweyl {

// Random normal-ordered elements with small rational coefficients.

inline Word random_word(std::mt19937_64& rng, const std::vector<Generator>& gens,
                        std::size_t max_len) {
  std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  Word w;
  for (std::size_t i = 0; i < len; ++i)
    w.push_back(gens[std::uniform_int_distribution<std::size_t>(0, gens.size() - 1)(rng)]);
  std::sort(w.begin(), w.end());
  return w;
}

inline Rational small_rational(std::mt19937_64& rng) {
  for (;;) {
    Rational r(std::uniform_int_distribution<long>(-4, 4)(rng),
               std::uniform_int_distribution<long>(1, 3)(rng));
    if (!r.is_zero()) return r;
  }
}

template <typename E>
E random_element(std::mt19937_64& rng, const WeylContext& ctx, std::size_t max_len,
                 int terms = 3) {
  auto gens = ctx.generators();
  E x;
  for (int t = 0; t < terms; ++t) x.add(random_word(rng, gens, max_len), small_rational(rng));
  return x;
}

// Random element of ℬ_{≤k}·ℏ^k for each grade k up to max_grade.
inline ReesElement random_rees(std::mt19937_64& rng, const WeylContext& ctx, int max_grade,
                               bool homogeneous = false) {
  ReesElement r;
  int lo = homogeneous ? max_grade : 0;
  for (int k = lo; k <= max_grade; ++k)
    r.add(k, random_element<WeylElement>(rng, ctx, static_cast<std::size_t>(k), 2));
  return r;
}

}  // namespace quiverweyl
