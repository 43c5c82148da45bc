#pragma once

#include <map>
#include <vector>

#include "quiverweyl/quiver.hpp"
#include "quiverweyl/weyl.hpp"

namespace quiverweyl {

namespace detail {

// Calls f(letters) for every index loop of Tr(B_{α_n} ⋯ B_{α_1}); letters
// come in matrix-product order, α_n first. B_{α_p} carries row i_p and
// column i_{p−1}, with i_0 = i_n.
template <typename F>
void for_each_index_loop(const QuiverData& q, const std::vector<ArrowId>& arrows, F&& f) {
  const std::size_t n = arrows.size();
  std::vector<int> idx(n, 0);  // idx[p] = i_{p+1}
  std::vector<Generator> letters(n);
  for (;;) {
    for (std::size_t p = 0; p < n; ++p) {
      int col = p == 0 ? idx[n - 1] : idx[p - 1];
      letters[n - 1 - p] = Generator(arrows[p], idx[p], col);
    }
    f(letters);
    std::size_t p = 0;
    while (p < n && ++idx[p] == q.dim(q.target(arrows[p]))) idx[p++] = 0;
    if (p == n) return;
  }
}

}  // namespace detail

inline PolyElement classical_trace(const QuiverData& q, const std::vector<ArrowId>& arrows) {
  require_cycle(q, arrows);
  PolyElement r;
  detail::for_each_index_loop(q, arrows, [&](std::vector<Generator> letters) {
    std::sort(letters.begin(), letters.end());
    r.add(letters, Scalar(1));
  });
  return r;
}

inline PolyElement classical_trace(const QuiverData& q, const Cycle& c) {
  return classical_trace(q, c.arrows());
}

// Trace of the matrix product over A for the cycle read from its first
// arrow; the caller's arrow sequence is used as given.
inline WeylElement quantum_trace(const WeylContext& ctx, const std::vector<ArrowId>& arrows) {
  require_cycle(ctx.quiver(), arrows);
  WeylElement r;
  detail::for_each_index_loop(ctx.quiver(), arrows, [&](const std::vector<Generator>& letters) {
    r += ordered_product(letters, ctx);
  });
  return r;
}

inline WeylElement quantum_trace(const WeylContext& ctx, const AnchoredCycle& c) {
  return quantum_trace(ctx, c.arrows());
}

inline ReesElement quantum_trace_hbar(const WeylContext& ctx, const AnchoredCycle& c) {
  return ReesElement::homogeneous(static_cast<int>(c.length()), quantum_trace(ctx, c));
}

// Arrow-incidence degree of each node within the cycle, with multiplicity.
inline std::map<NodeId, int> cycle_degrees(const QuiverData& q, const Cycle& c) {
  std::map<NodeId, int> deg;
  for (ArrowId x : c.arrows()) {
    ++deg[q.source(x)];
    ++deg[q.target(x)];
  }
  return deg;
}

// w_C = 2 / (deg(C) · m(C)) where deg(C) is the maximal node degree and
// m(C) the number of nodes attaining it.
inline Rational cycle_weight(const QuiverData& q, const Cycle& c) {
  int top = 0, count = 0;
  for (const auto& [node, d] : cycle_degrees(q, c)) {
    if (d > top) top = d, count = 0;
    if (d == top) ++count;
  }
  return Rational(2, static_cast<long>(top) * count);
}

// w_C times the sum of C anchored at every arrow leaving a maximal-degree node.
inline QuantumPotential quantize_cycle(const QuiverData& q, const Cycle& c) {
  auto deg = cycle_degrees(q, c);
  int top = 0;
  for (const auto& [node, d] : deg) top = std::max(top, d);
  Scalar w(cycle_weight(q, c));
  QuantumPotential r;
  const auto& arrows = c.arrows();
  for (std::size_t p = 0; p < arrows.size(); ++p)
    if (deg[q.source(arrows[p])] == top) r.add(AnchoredCycle(q, rotate_left(arrows, p)), w);
  return r;
}

inline QuantumPotential quantize_potential(const QuiverData& q, const Potential& p) {
  QuantumPotential r;
  for (const auto& [c, coeff] : p.terms()) r += quantize_cycle(q, c) * coeff;
  return r;
}

inline Potential forget_anchors(const QuiverData& q, const QuantumPotential& p) {
  Potential r;
  for (const auto& [c, coeff] : p.terms()) r.add(c.forget_anchor(q), coeff);
  return r;
}

inline PolyElement classical_trace(const QuiverData& q, const Potential& p) {
  PolyElement r;
  for (const auto& [c, coeff] : p.terms()) r += classical_trace(q, c) * coeff;
  return r;
}

inline WeylElement quantum_trace(const WeylContext& ctx, const QuantumPotential& p) {
  WeylElement r;
  for (const auto& [c, coeff] : p.terms()) r += quantum_trace(ctx, c) * coeff;
  return r;
}

inline ReesElement quantum_trace_hbar(const WeylContext& ctx, const QuantumPotential& p) {
  ReesElement r;
  for (const auto& [c, coeff] : p.terms()) r += quantum_trace_hbar(ctx, c) * coeff;
  return r;
}

}  // namespace quiverweyl
