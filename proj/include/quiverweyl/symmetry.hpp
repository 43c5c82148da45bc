#pragma once

#include <vector>

#include "quiverweyl/potentials.hpp"
#include "quiverweyl/projective.hpp"
#include "quiverweyl/weyl.hpp"

namespace quiverweyl {

// Per-arrow factor η_{t(α)}(g, a) by which the pullback scales B_α.
inline std::vector<Scalar> arrow_scales(const QuiverData& q, const GroupElement& g,
                                        const Embedding& a) {
  require_compatible(q, a);
  std::vector<Scalar> s;
  for (ArrowId x = 0; x < q.arrow_count(); ++x) s.emplace_back(eta_node(g, a, q, q.target(x)));
  return s;
}

template <typename Tag>
Combination<Word, Tag> scale_words(const Combination<Word, Tag>& x,
                                   const std::vector<Scalar>& scales) {
  Combination<Word, Tag> r;
  for (const auto& [w, c] : x.terms()) {
    Scalar f = c;
    for (Generator gen : w) f *= scales[gen.arrow()];
    r.add(w, f);
  }
  return r;
}

// φ*_g(a): A₀ over a.g → A₀ over a.
inline PolyElement classical_pullback(const QuiverData& q, const GroupElement& g,
                                      const Embedding& a, const PolyElement& f) {
  return scale_words(f, arrow_scales(q, g, a));
}

// φ̂*_g(a) on normal-ordered words: (A, ∗_{a.g}) → (A, ∗_a).
inline WeylElement quantum_pullback(const QuiverData& q, const GroupElement& g,
                                    const Embedding& a, const WeylElement& x) {
  return scale_words(x, arrow_scales(q, g, a));
}

inline ReesElement quantum_pullback(const QuiverData& q, const GroupElement& g,
                                    const Embedding& a, const ReesElement& x) {
  auto scales = arrow_scales(q, g, a);
  return x.map_grades([&](const WeylElement& f) { return scale_words(f, scales); });
}

// Product of η_{t(α)} over the arrows of a cycle: φ*_g(a) Tr(C) = η_C Tr(C).
inline Scalar cycle_scale(const QuiverData& q, const GroupElement& g, const Embedding& a,
                          const std::vector<ArrowId>& arrows) {
  Scalar s(1);
  for (ArrowId x : arrows) s *= Scalar(eta_node(g, a, q, q.target(x)));
  return s;
}

inline Potential classical_pullback(const QuiverData& q, const GroupElement& g,
                                    const Embedding& a, const Potential& p) {
  Potential r;
  for (const auto& [c, coeff] : p.terms()) r.add(c, coeff * cycle_scale(q, g, a, c.arrows()));
  return r;
}

}  // namespace quiverweyl
