#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "quiverweyl/linalg.hpp"
#include "quiverweyl/moment.hpp"
#include "quiverweyl/potentials.hpp"
#include "quiverweyl/symmetry.hpp"

namespace quiverweyl {

enum class ReductionKind { classical, quantum, rees };

inline const char* to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::classical: return "classical";
    case ReductionKind::quantum: return "quantum";
    case ReductionKind::rees: return "rees";
  }
  return "?";
}

// Point orbit ⊕ λ_i Id_{V_i}; nodes without an entry have λ_i = 0.
struct OrbitSpec {
  std::map<NodeId, Scalar> scalars;

  Scalar lambda(NodeId i) const {
    auto it = scalars.find(i);
    return it == scalars.end() ? Scalar() : it->second;
  }
};

// Product, bracket and comoment per coefficient algebra.
template <typename E>
struct AlgebraOps;

template <>
struct AlgebraOps<PolyElement> {
  static PolyElement mul(const PolyElement& x, const PolyElement& y, const WeylContext&) {
    return poly_product(x, y);
  }
  static PolyElement bracket(const PolyElement& x, const PolyElement& y, const WeylContext& ctx) {
    return poisson_bracket(x, y, ctx);
  }
  static PolyElement comoment(const WeylContext& ctx, const LieBasisElement& l) {
    return classical_comoment(ctx, l);
  }
};

template <>
struct AlgebraOps<WeylElement> {
  static WeylElement mul(const WeylElement& x, const WeylElement& y, const WeylContext& ctx) {
    return weyl_product(x, y, ctx);
  }
  static WeylElement bracket(const WeylElement& x, const WeylElement& y, const WeylContext& ctx) {
    return commutator(x, y, ctx);
  }
  static WeylElement comoment(const WeylContext& ctx, const LieBasisElement& l) {
    return quantum_comoment_local(ctx, l);
  }
};

// μ*(Λ^i_{kl}) − λ_i δ_{kl} for every basis element, classical or quantum.
template <typename E>
struct IdealGenerators {
  std::vector<LieBasisElement> labels;
  std::vector<E> elements;
};

template <typename E>
IdealGenerators<E> ideal_generators(const WeylContext& ctx, const OrbitSpec& o) {
  IdealGenerators<E> r;
  for (const auto& l : lie_basis(ctx.quiver())) {
    E g = AlgebraOps<E>::comoment(ctx, l);
    if (l.row == l.col) g -= constant_element<E>(o.lambda(l.node));
    if (g.is_zero()) continue;
    r.labels.push_back(l);
    r.elements.push_back(std::move(g));
  }
  return r;
}

// The ℏ-graded generators (μ̂*(Λ) − λδ)·ℏ².
inline std::vector<ReesElement> rees_ideal_generators(const WeylContext& ctx, const OrbitSpec& o) {
  std::vector<ReesElement> r;
  for (const auto& g : ideal_generators<WeylElement>(ctx, o).elements)
    r.push_back(ReesElement::homogeneous(2, g));
  return r;
}

// Left ideal B·g (the reduction ideal) or two-sided ideal B·g·B.
enum class IdealSide { left, two_sided };

template <typename E>
struct CertificateTerm {
  E left;
  std::size_t generator;
  E right;
};

// Σ left ∗ g_s ∗ right = query when found; otherwise a statement about the
// degree bound only.
template <typename E>
struct MembershipCertificate {
  bool found = false;
  int degree_bound = 0;
  std::vector<CertificateTerm<E>> terms;

  E recombine(const IdealGenerators<E>& gens, const WeylContext& ctx) const {
    E r;
    for (const auto& t : terms)
      r += AlgebraOps<E>::mul(AlgebraOps<E>::mul(t.left, gens.elements.at(t.generator), ctx),
                              t.right, ctx);
    return r;
  }

  bool verify(const E& query, const IdealGenerators<E>& gens, const WeylContext& ctx) const {
    return found && recombine(gens, ctx) == query;
  }
};

struct MembershipOptions {
  IdealSide side = IdealSide::left;
  unsigned threads = 1;
};

namespace detail {

// Torus weight of a word: +1 at (t(α), row), −1 at (s(α), col) per letter.
using Weight = std::vector<int>;

inline std::vector<int> node_offsets(const QuiverData& q) {
  std::vector<int> off(q.node_count() + 1, 0);
  for (NodeId i = 0; i < q.node_count(); ++i) off[i + 1] = off[i] + q.dim(i);
  return off;
}

inline Weight word_weight(const Word& w, const QuiverData& q, const std::vector<int>& off) {
  Weight r(off.back(), 0);
  for (Generator g : w) {
    ++r[off[q.target(g.arrow())] + g.row()];
    --r[off[q.source(g.arrow())] + g.col()];
  }
  return r;
}

inline Weight add_weights(Weight a, const Weight& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

// Sorted words of length ≤ max_len over the generators.
inline std::vector<Word> all_words(const std::vector<Generator>& gens, int max_len) {
  std::vector<Word> out{Word{}};
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (Generator g : gens)
        if (w.empty() || !(g < w.back())) {
          Word e = w;
          e.push_back(g);
          next.push_back(std::move(e));
        }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

struct Column {
  Word left;
  std::size_t generator;
  Word right;
};

template <typename E>
std::vector<E> build_columns(const std::vector<Column>& cols, const IdealGenerators<E>& gens,
                             const WeylContext& ctx, unsigned threads) {
  std::vector<E> out(cols.size());
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Column& c = cols[i];
      E x = AlgebraOps<E>::mul(E::single(c.left), gens.elements[c.generator], ctx);
      if (!c.right.empty()) x = AlgebraOps<E>::mul(x, E::single(c.right), ctx);
      out[i] = std::move(x);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cols.size() / 64 + 1)));
  std::vector<std::future<void>> tasks;
  std::size_t chunk = (cols.size() + threads - 1) / threads;
  for (unsigned t = 1; t < threads; ++t)
    tasks.push_back(std::async(std::launch::async, work, std::min(cols.size(), t * chunk),
                               std::min(cols.size(), (t + 1) * chunk)));
  work(0, std::min(cols.size(), chunk));
  for (auto& t : tasks) t.get();
  return out;
}

}  // namespace detail

// Linear system over the span {u ∗ g_s (∗ v)} truncated at total degree D,
// restricted to the torus weights and degree parities present in the
// queries (both are gradings preserved by every product involved).
template <typename E>
class TruncatedIdeal {
 public:
  TruncatedIdeal(const WeylContext& ctx, IdealGenerators<E> gens, int degree_bound,
                 const std::vector<E>& queries, MembershipOptions opts = {})
      : ctx_(ctx), gens_(std::move(gens)), bound_(degree_bound), opts_(opts) {
    const QuiverData& q = ctx.quiver();
    auto off = detail::node_offsets(q);
    std::set<std::pair<detail::Weight, int>> wanted;
    for (const auto& x : queries)
      for (const auto& [w, c] : x.terms())
        wanted.insert({detail::word_weight(w, q, off), static_cast<int>(w.size() % 2)});
    std::vector<detail::Weight> gen_weight;
    for (const auto& l : gens_.labels) {
      detail::Weight w(off.back(), 0);
      ++w[off[l.node] + l.row];
      --w[off[l.node] + l.col];
      gen_weight.push_back(std::move(w));
    }
    int cofactor = degree_bound - 2;
    auto words = cofactor >= 0 ? detail::all_words(ctx.generators(), cofactor) : std::vector<Word>{};
    std::vector<detail::Weight> word_w;
    for (const auto& w : words) word_w.push_back(detail::word_weight(w, q, off));
    for (std::size_t u = 0; u < words.size(); ++u)
      for (std::size_t s = 0; s < gens_.elements.size(); ++s) {
        if (opts.side == IdealSide::left) {
          auto w = detail::add_weights(word_w[u], gen_weight[s]);
          if (wanted.count({w, static_cast<int>(words[u].size() % 2)}))
            cols_.push_back({words[u], s, Word{}});
          continue;
        }
        for (std::size_t v = 0; v < words.size(); ++v) {
          if (static_cast<int>(words[u].size() + words[v].size()) > cofactor) continue;
          auto w = detail::add_weights(detail::add_weights(word_w[u], gen_weight[s]), word_w[v]);
          if (wanted.count({w, static_cast<int>((words[u].size() + words[v].size()) % 2)}))
            cols_.push_back({words[u], s, words[v]});
        }
      }
    auto built = detail::build_columns(cols_, gens_, ctx, opts.threads);
    for (std::size_t i = 0; i < built.size(); ++i) elim_.add_column(i, built[i].terms());
  }

  const IdealGenerators<E>& generators() const { return gens_; }
  std::size_t column_count() const { return cols_.size(); }
  std::size_t rank() const { return elim_.rank(); }
  int degree_bound() const { return bound_; }

  MembershipCertificate<E> certify(const E& x) const {
    MembershipCertificate<E> cert;
    cert.degree_bound = bound_;
    auto sol = elim_.solve(x.terms());
    if (!sol) return cert;
    cert.found = true;
    for (const auto& [id, c] : *sol) {
      const auto& col = cols_[id];
      cert.terms.push_back({E::single(col.left, c), col.generator, E::single(col.right)});
    }
    return cert;
  }

  // Adjoins the unit as an extra unknown: finds c with x − c ∈ ideal.
  std::optional<std::pair<Scalar, MembershipCertificate<E>>> certify_up_to_constant(
      const E& x) const {
    if (auto cert = certify(x); cert.found) return std::make_pair(Scalar(), cert);
    SparseEliminator<Word> with_unit = elim_;
    const std::size_t unit_id = cols_.size();
    if (!with_unit.add_column(unit_id, constant_element<E>(Scalar(1)).terms())) return std::nullopt;
    auto sol = with_unit.solve(x.terms());
    if (!sol) return std::nullopt;
    Scalar c;
    MembershipCertificate<E> cert;
    cert.found = true;
    cert.degree_bound = bound_;
    for (const auto& [id, coeff] : *sol) {
      if (id == unit_id) {
        c = coeff;
        continue;
      }
      const auto& col = cols_[id];
      cert.terms.push_back({E::single(col.left, coeff), col.generator, E::single(col.right)});
    }
    return std::make_pair(c, cert);
  }

 private:
  const WeylContext& ctx_;
  IdealGenerators<E> gens_;
  int bound_;
  MembershipOptions opts_;
  std::vector<detail::Column> cols_;
  SparseEliminator<Word> elim_;
};

template <typename E>
int element_degree(const E& x) {
  return static_cast<int>(bernstein_order(x));
}

template <typename E>
MembershipCertificate<E> ideal_membership(const E& x, const WeylContext& ctx, const OrbitSpec& o,
                                          int degree_bound, MembershipOptions opts = {}) {
  if (degree_bound < element_degree(x))
    throw DegreeBoundTooSmall("degree bound " + std::to_string(degree_bound) +
                              " below element degree " + std::to_string(element_degree(x)));
  TruncatedIdeal<E> ideal(ctx, ideal_generators<E>(ctx, o), degree_bound, {x}, opts);
  return ideal.certify(x);
}

// Grade-k components of a Rees element lie in ℏ^{k−2}ℬ_{≤k−2}·g·ℏ²; the
// certificate lists the Weyl cofactors per grade.
struct ReesMembership {
  bool found = false;
  int degree_bound = 0;
  std::map<int, MembershipCertificate<WeylElement>> by_grade;
};

inline ReesMembership rees_membership(const ReesElement& x, const WeylContext& ctx,
                                      const OrbitSpec& o, int degree_bound,
                                      MembershipOptions opts = {}) {
  ReesMembership r;
  r.degree_bound = degree_bound;
  for (const auto& [k, f] : x.grades())
    if (k > degree_bound)
      throw DegreeBoundTooSmall("grade " + std::to_string(k) + " exceeds degree bound " +
                                std::to_string(degree_bound));
  r.found = true;
  auto gens = ideal_generators<WeylElement>(ctx, o);
  for (const auto& [k, f] : x.grades()) {
    TruncatedIdeal<WeylElement> ideal(ctx, gens, k, {f}, opts);
    auto cert = ideal.certify(f);
    r.found = r.found && cert.found;
    r.by_grade.emplace(k, std::move(cert));
  }
  return r;
}

inline bool verify(const ReesMembership& m, const ReesElement& x, const WeylContext& ctx,
                   const OrbitSpec& o) {
  if (!m.found) return false;
  auto gens = ideal_generators<WeylElement>(ctx, o);
  ReesElement r;
  for (const auto& [k, cert] : m.by_grade) r.add(k, cert.recombine(gens, ctx));
  return r == x;
}

template <typename E>
bool is_invariant(const E& x, const WeylContext& ctx) {
  for (const auto& l : lie_basis(ctx.quiver()))
    if (!AlgebraOps<E>::bracket(AlgebraOps<E>::comoment(ctx, l), x, ctx).is_zero()) return false;
  return true;
}

inline bool is_invariant(const ReesElement& x, const WeylContext& ctx) {
  for (const auto& l : lie_basis(ctx.quiver()))
    if (!rees_commutator(deformed_comoment(ctx, l), x, ctx).is_zero()) return false;
  return true;
}

// The Hamiltonian H = Tr(W) in each algebra, built at embedding a.
inline PolyElement hamiltonian_classical(const QuiverData& q, const Potential& w) {
  return classical_trace(q, w);
}
inline WeylElement hamiltonian_quantum(const WeylContext& ctx, const Potential& w) {
  return quantum_trace(ctx, quantize_potential(ctx.quiver(), w));
}
inline ReesElement hamiltonian_rees(const WeylContext& ctx, const Potential& w) {
  return quantum_trace_hbar(ctx, quantize_potential(ctx.quiver(), w));
}

struct ShiftResult {
  bool found = false;
  // Solver skipped because the pullback left H unchanged.
  bool trivial = false;
  int degree_bound = 0;
  Scalar c;
  // Rees kind: constant per grade; c is their sum at ℏ = 1.
  std::map<int, Scalar> by_grade;
  std::size_t certificate_terms = 0;
  bool certificate_verified = false;
  std::string witness;
};

struct ShiftOptions {
  // −1 selects degree(δ) + 2.
  int degree_bound = -1;
  // Run the solver even when δ = 0.
  bool force_solve = false;
  MembershipOptions membership;
};

namespace detail {

template <typename E>
ShiftResult solve_shift(const E& delta, const WeylContext& ctx, const OrbitSpec& o,
                        const ShiftOptions& opts) {
  ShiftResult r;
  r.degree_bound = opts.degree_bound >= 0 ? opts.degree_bound : element_degree(delta) + 2;
  if (delta.is_zero() && !opts.force_solve) {
    r.found = r.trivial = r.certificate_verified = true;
    return r;
  }
  if (r.degree_bound < element_degree(delta))
    throw DegreeBoundTooSmall("degree bound below degree of the shift");
  std::vector<E> queries{delta, constant_element<E>(Scalar(1))};
  TruncatedIdeal<E> ideal(ctx, ideal_generators<E>(ctx, o), r.degree_bound, queries,
                          opts.membership);
  auto sol = ideal.certify_up_to_constant(delta);
  if (!sol) {
    r.witness = "no constant within degree bound " + std::to_string(r.degree_bound);
    return r;
  }
  r.found = true;
  r.c = sol->first;
  r.certificate_terms = sol->second.terms.size();
  r.certificate_verified =
      sol->second.verify(delta - constant_element<E>(r.c), ideal.generators(), ctx);
  if (!r.certificate_verified) r.witness = "certificate does not recombine to δ − c";
  return r;
}

}  // namespace detail

// δ = φ*_g(a) H(a.g) − H(a); finds c with δ − c in the reduction ideal at a.
inline ShiftResult reduced_shift(const QuiverData& q, const GroupElement& g, const Embedding& a,
                                 const Potential& w, const OrbitSpec& o, ReductionKind kind,
                                 const ShiftOptions& opts = {}) {
  Embedding ag = act_on_embedding(g, a);
  WeylContext ca(q, a), cag(q, ag);
  switch (kind) {
    case ReductionKind::classical: {
      PolyElement h = hamiltonian_classical(q, w);
      return detail::solve_shift(classical_pullback(q, g, a, h) - h, ca, o, opts);
    }
    case ReductionKind::quantum: {
      WeylElement delta =
          quantum_pullback(q, g, a, hamiltonian_quantum(cag, w)) - hamiltonian_quantum(ca, w);
      return detail::solve_shift(delta, ca, o, opts);
    }
    case ReductionKind::rees: {
      ReesElement delta =
          quantum_pullback(q, g, a, hamiltonian_rees(cag, w)) - hamiltonian_rees(ca, w);
      ShiftResult r;
      r.found = r.certificate_verified = true;
      r.trivial = delta.is_zero() && !opts.force_solve;
      for (const auto& [k, f] : delta.grades()) {
        ShiftOptions per = opts;
        per.degree_bound = opts.degree_bound >= 0 ? std::min(opts.degree_bound, k) : k;
        ShiftResult s = detail::solve_shift(f, ca, o, per);
        r.degree_bound = std::max(r.degree_bound, s.degree_bound);
        r.found = r.found && s.found;
        r.certificate_verified = r.certificate_verified && s.certificate_verified;
        r.certificate_terms += s.certificate_terms;
        if (!s.found) r.witness = "grade " + std::to_string(k) + ": " + s.witness;
        if (!s.c.is_zero()) r.by_grade[k] = s.c;
        r.c += s.c;
      }
      return r;
    }
  }
  return {};
}

}  // namespace quiverweyl
