#pragma once

#include <string>
#include <vector>

#include "quiverweyl/weyl.hpp"

namespace quiverweyl {

// Basis element Λ^i_{kl} of 𝔥* (equivalently e^i_{lk} of 𝔥 under the trace pairing).
struct LieBasisElement {
  NodeId node = 0;
  int row = 0;
  int col = 0;
  friend auto operator<=>(const LieBasisElement&, const LieBasisElement&) = default;
};

inline LieBasisElement lie_basis_element(const QuiverData& q, NodeId node, int row, int col) {
  if (node >= q.node_count()) throw ValidationError("unknown node id");
  if (row < 0 || col < 0 || row >= q.dim(node) || col >= q.dim(node))
    throw ValidationError("index out of range at node " + q.node_label(node));
  return {node, row, col};
}

inline std::vector<LieBasisElement> lie_basis(const QuiverData& q) {
  std::vector<LieBasisElement> out;
  for (NodeId i = 0; i < q.node_count(); ++i)
    for (int k = 0; k < q.dim(i); ++k)
      for (int l = 0; l < q.dim(i); ++l) out.push_back({i, k, l});
  return out;
}

// The basis element paired with e^i_{kl} by the trace form.
inline LieBasisElement dual_of_matrix_unit(NodeId node, int k, int l) { return {node, l, k}; }

inline std::string to_string(const LieBasisElement& x, const QuiverData& q) {
  return "L[" + q.node_label(x.node) + ";" + std::to_string(x.row + 1) + "," +
         std::to_string(x.col + 1) + "]";
}

// μ*(Λ^i_{kl}) = Σ_{α ∈ t⁻¹(i)} ε_α Σ_m B_α^{km} B_{α*}^{ml}.
inline PolyElement classical_comoment(const WeylContext& ctx, const LieBasisElement& x) {
  const QuiverData& q = ctx.quiver();
  PolyElement r;
  for (ArrowId a : q.incoming(x.node)) {
    Scalar e(ctx.epsilon(a));
    for (int m = 0; m < q.dim(q.source(a)); ++m) {
      Word w{Generator(a, x.row, m), Generator(q.opposite(a), m, x.col)};
      std::sort(w.begin(), w.end());
      r.add(w, e);
    }
  }
  return r;
}

// Symmetrised lift: ½ Σ ε_α Σ_m (B̂_α^{km} ∗ B̂_{α*}^{ml} + B̂_{α*}^{ml} ∗ B̂_α^{km}).
inline WeylElement quantum_comoment_local(const WeylContext& ctx, const LieBasisElement& x) {
  const QuiverData& q = ctx.quiver();
  WeylElement r;
  for (ArrowId a : q.incoming(x.node)) {
    Scalar half_e(ctx.epsilon(a) * Rational(1, 2));
    for (int m = 0; m < q.dim(q.source(a)); ++m) {
      Generator b(a, x.row, m), bs(q.opposite(a), m, x.col);
      r += (ordered_product({b, bs}, ctx) + ordered_product({bs, b}, ctx)) * half_e;
    }
  }
  return r;
}

// Product of local images in the given order.
inline WeylElement quantum_comoment_global(const WeylContext& ctx,
                                           const std::vector<LieBasisElement>& word) {
  WeylElement r = constant_element<WeylElement>(Scalar(1));
  for (const auto& x : word) r = weyl_product(r, quantum_comoment_local(ctx, x), ctx);
  return r;
}

// μ̂*_ℏ(Λ) = μ̂*(Λ)·ℏ².
inline ReesElement deformed_comoment(const WeylContext& ctx, const LieBasisElement& x) {
  return ReesElement::homogeneous(2, quantum_comoment_local(ctx, x));
}

}  // namespace quiverweyl
