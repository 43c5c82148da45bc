#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "quiverweyl/scalar.hpp"

namespace quiverweyl {

// Incremental sparse row echelon form over Scalar. Columns are added one at
// a time; each independent column becomes a basis vector whose leading
// (largest) key is unique among the basis. The reduction history is kept so
// that a solution can be expanded back onto the original columns.
template <typename Key>
class SparseEliminator {
 public:
  using Vector = std::map<Key, Scalar>;

  // Returns true when the column was independent of those before it.
  bool add_column(std::size_t id, Vector v) {
    std::vector<std::pair<std::size_t, Scalar>> steps;
    reduce(v, steps);
    if (v.empty()) return false;
    auto lead = std::prev(v.end());
    Scalar inv = lead->second.inverse();
    for (auto& [k, c] : v) c *= inv;
    std::size_t index = basis_.size();
    pivots_.emplace(lead->first, index);
    basis_.push_back({std::move(v), id, inv, std::move(steps)});
    return true;
  }

  std::size_t rank() const { return basis_.size(); }

  // Coefficients c_id with Σ c_id · column_id = target, or nullopt.
  std::optional<std::map<std::size_t, Scalar>> solve(Vector target) const {
    std::vector<std::pair<std::size_t, Scalar>> steps;
    reduce(target, steps);
    if (!target.empty()) return std::nullopt;
    // target = Σ d_k b_k; b_k = inv_k (col_k − Σ_j c_kj b_j).
    std::vector<Scalar> d(basis_.size());
    for (const auto& [k, c] : steps) d[k] += c;
    std::map<std::size_t, Scalar> out;
    for (std::size_t k = basis_.size(); k-- > 0;) {
      if (d[k].is_zero()) continue;
      const Basis& b = basis_[k];
      Scalar w = d[k] * b.inv;
      out[b.id] += w;
      for (const auto& [j, c] : b.steps) d[j] -= w * c;
    }
    for (auto it = out.begin(); it != out.end();)
      it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }

 private:
  struct Basis {
    Vector v;
    std::size_t id;
    Scalar inv;
    std::vector<std::pair<std::size_t, Scalar>> steps;
  };

  // Subtracts basis vectors while the leading key is a pivot; records each
  // multiple so that v_original = v_reduced + Σ c_k b_k.
  void reduce(Vector& v, std::vector<std::pair<std::size_t, Scalar>>& steps) const {
    while (!v.empty()) {
      auto lead = std::prev(v.end());
      auto p = pivots_.find(lead->first);
      if (p == pivots_.end()) return;
      Scalar c = lead->second;
      steps.emplace_back(p->second, c);
      for (const auto& [k, x] : basis_[p->second].v) {
        auto [it, inserted] = v.try_emplace(k, -(c * x));
        if (inserted) continue;
        it->second -= c * x;
        if (it->second.is_zero()) v.erase(it);
      }
    }
  }

  std::vector<Basis> basis_;
  std::map<Key, std::size_t> pivots_;
};

}  // namespace quiverweyl
