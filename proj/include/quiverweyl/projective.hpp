#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quiverweyl/errors.hpp"
#include "quiverweyl/fault.hpp"
#include "quiverweyl/quiver.hpp"
#include "quiverweyl/rational.hpp"

namespace quiverweyl {

// [p : q] normalised to q = 1, or [1 : 0] for ∞. A finite point a is [a : 1].
class ProjPoint {
 public:
  ProjPoint() : p_(0), q_(1) {}
  ProjPoint(const Rational& p, const Rational& q) {
    if (p.is_zero() && q.is_zero()) throw ValidationError("[0 : 0] is not a point");
    if (q.is_zero()) {
      p_ = 1;
      q_ = 0;
    } else {
      p_ = p / q;
      q_ = 1;
    }
  }

  static ProjPoint finite(const Rational& a) { return ProjPoint(a, Rational(1)); }
  static ProjPoint infinity() { return ProjPoint(Rational(1), Rational(0)); }

  static ProjPoint parse(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "∞") return infinity();
    return finite(Rational::parse(s));
  }

  bool is_infinite() const { return q_.is_zero(); }
  // Affine coordinate; valid for finite points.
  const Rational& value() const { return p_; }
  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }

  std::string to_string() const { return is_infinite() ? "inf" : p_.to_string(); }
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  Rational p_, q_;
};

// (a b; c d) with ad − bc = 1.
class GroupElement {
 public:
  GroupElement() : a_(1), b_(0), c_(0), d_(1) {}
  GroupElement(Rational a, Rational b, Rational c, Rational d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_ * d_ - b_ * c_ != Rational(1))
      throw ValidationError("group element has determinant " + (a_ * d_ - b_ * c_).to_string());
  }

  static GroupElement identity() { return {}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }

  GroupElement inverse() const { return GroupElement(d_, -b_, -c_, a_); }

  friend GroupElement operator*(const GroupElement& x, const GroupElement& y) {
    return GroupElement(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
                        x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_);
  }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

  std::string to_string() const {
    return "(" + a_.to_string() + " " + b_.to_string() + "; " + c_.to_string() + " " +
           d_.to_string() + ")";
  }

 private:
  Rational a_, b_, c_, d_;
};

// Right action: a point [−β : α] goes to [−(bα + dβ) : aα + cβ].
inline ProjPoint act_on_point(const GroupElement& g, const ProjPoint& x) {
  const Rational& p = x.p();  // −β
  const Rational& q = x.q();  // α
  return ProjPoint(g.d() * p - g.b() * q, g.a() * q - g.c() * p);
}

// Injective map from parts to the projective line.
class Embedding {
 public:
  Embedding() = default;
  explicit Embedding(std::vector<ProjPoint> points) : points_(std::move(points)) {
    for (std::size_t j = 0; j < points_.size(); ++j)
      for (std::size_t k = 0; k < j; ++k)
        if (points_[j] == points_[k])
          throw ValidationError("embedding is not injective: parts " + std::to_string(k) +
                                " and " + std::to_string(j) + " both map to " +
                                points_[j].to_string());
  }

  std::size_t size() const { return points_.size(); }
  const ProjPoint& operator[](PartId j) const { return points_.at(j); }
  const std::vector<ProjPoint>& points() const { return points_; }

  std::optional<PartId> infinite_part() const {
    for (PartId j = 0; j < points_.size(); ++j)
      if (points_[j].is_infinite()) return j;
    return std::nullopt;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t j = 0; j < points_.size(); ++j) {
      if (j) s += ", ";
      s += points_[j].to_string();
    }
    return s + "}";
  }

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::vector<ProjPoint> points_;
};

inline Embedding act_on_embedding(const GroupElement& g, const Embedding& a) {
  std::vector<ProjPoint> out;
  for (const auto& x : a.points()) out.push_back(act_on_point(g, x));
  return Embedding(std::move(out));
}

inline void require_compatible(const QuiverData& q, const Embedding& a) {
  if (a.size() != q.part_count())
    throw ValidationError("embedding has " + std::to_string(a.size()) + " points for " +
                          std::to_string(q.part_count()) + " parts");
}

// Symplectic weight of an arrow: 1/(a_{t(α)} − a_{s(α)}) for finite ends,
// 1 if the source part sits at ∞ and −1 if the target part does.
inline Rational epsilon(const QuiverData& q, const Embedding& a, ArrowId arrow) {
  const ProjPoint& s = a[q.part_of(q.source(arrow))];
  const ProjPoint& t = a[q.part_of(q.target(arrow))];
  Rational e;
  if (s.is_infinite()) e = 1;
  else if (t.is_infinite()) e = -1;
  else e = (t.value() - s.value()).inverse();
  if (active_faults().flip_epsilon_arrow == arrow) e = -e;
  return e;
}

struct EtaValue {
  Rational value;
  EtaCase branch;
};

inline EtaCase classify_eta(const GroupElement& g, const Embedding& a) {
  bool inf_present = a.infinite_part().has_value();
  bool some_to_inf = false;
  for (const auto& x : a.points())
    if (!x.is_infinite() && g.a() == g.c() * x.value()) some_to_inf = true;
  if (!inf_present) return some_to_inf ? EtaCase::generic_to_degenerate : EtaCase::generic;
  if (g.c().is_zero()) return EtaCase::degenerate_c_zero;
  return some_to_inf ? EtaCase::degenerate_swap : EtaCase::degenerate_to_generic;
}

// Cocycle η_j(g, a) by the case analysis on where ∞ sits before and after.
inline EtaValue eta_with_case(const GroupElement& g, const Embedding& a, PartId j) {
  EtaCase branch = classify_eta(g, a);
  const ProjPoint& x = a[j];
  Rational v;
  switch (branch) {
    case EtaCase::generic:
      v = (g.a() - g.c() * x.value()).inverse();
      break;
    case EtaCase::generic_to_degenerate:
    case EtaCase::degenerate_swap:
      if (x.is_infinite()) v = g.c().inverse();
      else if (g.a() == g.c() * x.value()) v = (g.b() - g.d() * x.value()).inverse();
      else v = (g.a() - g.c() * x.value()).inverse();
      break;
    case EtaCase::degenerate_to_generic:
      v = x.is_infinite() ? g.c().inverse() : (g.a() - g.c() * x.value()).inverse();
      break;
    case EtaCase::degenerate_c_zero:
      v = x.is_infinite() ? g.a() : g.d();
      break;
  }
  if (active_faults().negate_eta_case == branch) v = -v;
  return {v, branch};
}

inline Rational eta(const GroupElement& g, const Embedding& a, PartId j) {
  return eta_with_case(g, a, j).value;
}

inline Rational eta_node(const GroupElement& g, const Embedding& a, const QuiverData& q,
                         NodeId i) {
  return eta(g, a, q.part_of(i));
}

// Per-node diagonal data (α_i, β_i) with [−β_i : α_i] = a_{part(i)}.
struct DiagonalPresentation {
  std::vector<std::pair<Rational, Rational>> alpha_beta;

  // Scales the canonical representative of each node's point by scale[i].
  static DiagonalPresentation from_embedding(const QuiverData& q, const Embedding& a,
                                             const std::vector<Rational>& scale = {}) {
    DiagonalPresentation p;
    for (NodeId i = 0; i < q.node_count(); ++i) {
      Rational s = scale.empty() ? Rational(1) : scale.at(i);
      const ProjPoint& x = a[q.part_of(i)];
      if (x.is_infinite()) p.alpha_beta.emplace_back(Rational(0), s);
      else p.alpha_beta.emplace_back(s, -x.value() * s);
    }
    return p;
  }
};

// η from the normalisation matrices N (for a) and N′ (for a.g):
// N_i = α_i^{-1}, or β_i^{-1} on the block where α_i = 0, and E = N′N^{-1}.
inline std::map<PartId, Rational> eta_via_normalisation(const GroupElement& g,
                                                        const Embedding& a,
                                                        const QuiverData& q,
                                                        const DiagonalPresentation& pres) {
  require_compatible(q, a);
  if (pres.alpha_beta.size() != q.node_count())
    throw PresentationMismatch("presentation covers " + std::to_string(pres.alpha_beta.size()) +
                               " of " + std::to_string(q.node_count()) + " nodes");
  auto normaliser = [](const Rational& alpha, const Rational& beta) {
    return alpha.is_zero() ? beta.inverse() : alpha.inverse();
  };
  std::map<PartId, Rational> out;
  for (NodeId i = 0; i < q.node_count(); ++i) {
    const auto& [alpha, beta] = pres.alpha_beta[i];
    if (alpha.is_zero() && beta.is_zero())
      throw PresentationMismatch("node " + q.node_label(i) + " has alpha = beta = 0");
    if (!(ProjPoint(-beta, alpha) == a[q.part_of(i)]))
      throw PresentationMismatch("node " + q.node_label(i) + " presents " +
                                 ProjPoint(-beta, alpha).to_string() + " but embeds at " +
                                 a[q.part_of(i)].to_string());
    Rational alpha2 = g.a() * alpha + g.c() * beta;
    Rational beta2 = g.b() * alpha + g.d() * beta;
    Rational e = normaliser(alpha2, beta2) / normaliser(alpha, beta);
    auto [it, inserted] = out.emplace(q.part_of(i), e);
    if (!inserted && it->second != e)
      throw PresentationMismatch("normalisation differs within part " +
                                 q.part_label(q.part_of(i)));
  }
  return out;
}

}  // namespace quiverweyl
