#pragma once

// Shared fixtures, random element generators and independent oracles for
// the unit and acceptance suites.

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "quiverweyl/random.hpp"
#include "quiverweyl/samples.hpp"
#include "quiverweyl/weyl.hpp"

namespace qwtest {

using namespace quiverweyl;

inline QuiverData star_quiver(int peripheral, int centre_dim = 1, int peripheral_dim = 1) {
  std::vector<std::vector<std::string>> parts{{"c"}, {}};
  std::map<std::string, int> dims{{"c", centre_dim}};
  for (int i = 1; i <= peripheral; ++i) {
    std::string p = "p" + std::to_string(i);
    parts[1].push_back(p);
    dims[p] = peripheral_dim;
  }
  return QuiverData::build(parts, dims, std::nullopt, {"centre", "rim"});
}

inline QuiverData complete_quiver(const std::vector<std::vector<std::string>>& parts, int dim = 1) {
  std::map<std::string, int> dims;
  for (const auto& p : parts)
    for (const auto& n : p) dims[n] = dim;
  return build_k_partite(parts, dims);
}

inline QuiverData one_pair(int d0 = 1, int d1 = 1) {
  return build_k_partite({{"x"}, {"y"}}, {{"x", d0}, {"y", d1}});
}

// Stars around i and j glued along the edge i–j, two rims each. Parts keep
// every edge between different parts: {i, b1, b2} and {j, a1, a2}.
inline QuiverData glued_stars(int dim_i, int dim_j, int rim_dim) {
  std::vector<std::vector<std::string>> parts{{"i", "b1", "b2"}, {"j", "a1", "a2"}};
  std::map<std::string, int> dims{{"i", dim_i}, {"j", dim_j}, {"a1", rim_dim},
                                  {"a2", rim_dim}, {"b1", rim_dim}, {"b2", rim_dim}};
  std::vector<std::pair<std::string, std::string>> edges{
      {"i", "j"}, {"i", "a1"}, {"i", "a2"}, {"j", "b1"}, {"j", "b2"}};
  return QuiverData::build(parts, dims, edges);
}

// Normal ordering by repeated adjacent swaps: the first descent x > y is
// replaced by y x plus the central term [x, y]. Independent of weyl_product.
inline WeylElement bubble_normal_order(const std::vector<Generator>& letters,
                                       const Scalar& coeff, const WeylContext& ctx) {
  for (std::size_t p = 0; p + 1 < letters.size(); ++p) {
    if (!(letters[p + 1] < letters[p])) continue;
    auto swapped = letters;
    std::swap(swapped[p], swapped[p + 1]);
    WeylElement r = bubble_normal_order(swapped, coeff, ctx);
    if (auto b = ctx.bracket(letters[p], letters[p + 1])) {
      std::vector<Generator> rest;
      for (std::size_t i = 0; i < letters.size(); ++i)
        if (i != p && i != p + 1) rest.push_back(letters[i]);
      r += bubble_normal_order(rest, coeff * Scalar(*b), ctx);
    }
    return r;
  }
  return WeylElement::single(letters, coeff);
}

inline WeylElement bubble_product(const WeylElement& x, const WeylElement& y,
                                  const WeylContext& ctx) {
  WeylElement r;
  for (const auto& [u, cu] : x.terms())
    for (const auto& [v, cv] : y.terms()) {
      std::vector<Generator> letters = u;
      letters.insert(letters.end(), v.begin(), v.end());
      r += bubble_normal_order(letters, cu * cv, ctx);
    }
  return r;
}

}  // namespace qwtest
