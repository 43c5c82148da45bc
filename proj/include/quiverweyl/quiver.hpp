#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quiverweyl/combination.hpp"
#include "quiverweyl/errors.hpp"

namespace quiverweyl {

using NodeId = std::size_t;
using PartId = std::size_t;
using ArrowId = std::size_t;

struct Arrow {
  NodeId source;
  NodeId target;
  ArrowId opposite;
};

// Simply-laced quiver with a node partition; every edge is an opposite
// arrow pair joining nodes of different parts. Arrow ids follow the
// lexicographic order on (source, target).
class QuiverData {
 public:
  // edges == nullopt selects every cross-part pair (complete k-partite).
  static QuiverData build(const std::vector<std::vector<std::string>>& parts,
                          const std::map<std::string, int>& dims,
                          const std::optional<std::vector<std::pair<std::string, std::string>>>&
                              edges = std::nullopt,
                          std::vector<std::string> part_labels = {}) {
    QuiverData q;
    if (parts.empty()) throw InvalidPartition("no parts");
    if (part_labels.empty())
      for (std::size_t j = 0; j < parts.size(); ++j) part_labels.push_back(std::to_string(j));
    if (part_labels.size() != parts.size())
      throw InvalidPartition("part label count differs from part count");
    q.part_labels_ = std::move(part_labels);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (parts[j].empty()) throw InvalidPartition("part " + q.part_labels_[j] + " is empty");
      for (std::size_t k = 0; k < j; ++k)
        if (q.part_labels_[k] == q.part_labels_[j])
          throw InvalidPartition("duplicate part label '" + q.part_labels_[j] + "'");
      q.parts_.emplace_back();
      for (const auto& label : parts[j]) {
        if (q.index_.count(label)) throw InvalidPartition("duplicate node label '" + label + "'");
        auto it = dims.find(label);
        if (it == dims.end()) throw InvalidPartition("no dimension for node '" + label + "'");
        if (it->second < 1) throw InvalidPartition("node '" + label + "' has dimension < 1");
        if (it->second > 255) throw InvalidPartition("node '" + label + "' dimension too large");
        NodeId n = q.labels_.size();
        q.index_[label] = n;
        q.labels_.push_back(label);
        q.part_of_.push_back(j);
        q.dims_.push_back(it->second);
        q.parts_.back().push_back(n);
      }
    }
    for (const auto& [label, d] : dims)
      if (!q.index_.count(label)) throw InvalidPartition("dimension given for unknown node '" + label + "'");

    std::set<std::pair<NodeId, NodeId>> directed;
    if (edges) {
      for (const auto& [a, b] : *edges) {
        NodeId s = q.node(a), t = q.node(b);
        if (q.part_of_[s] == q.part_of_[t])
          throw InvalidPartition("edge " + a + "-" + b + " joins nodes of one part");
        if (directed.count({s, t})) throw InvalidPartition("duplicate edge " + a + "-" + b);
        directed.insert({s, t});
        directed.insert({t, s});
      }
    } else {
      for (NodeId s = 0; s < q.labels_.size(); ++s)
        for (NodeId t = 0; t < q.labels_.size(); ++t)
          if (q.part_of_[s] != q.part_of_[t]) directed.insert({s, t});
    }
    for (const auto& [s, t] : directed) {
      q.arrow_index_[{s, t}] = q.arrows_.size();
      q.arrows_.push_back(Arrow{s, t, 0});
    }
    for (auto& a : q.arrows_) a.opposite = q.arrow_index_.at({a.target, a.source});
    return q;
  }

  std::size_t node_count() const { return labels_.size(); }
  std::size_t part_count() const { return parts_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }

  NodeId node(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw InvalidPartition("unknown node '" + label + "'");
    return it->second;
  }
  std::optional<NodeId> find_node(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const std::string& node_label(NodeId n) const { return labels_.at(n); }
  PartId part_of(NodeId n) const { return part_of_.at(n); }
  const std::vector<NodeId>& part(PartId j) const { return parts_.at(j); }
  const std::string& part_label(PartId j) const { return part_labels_.at(j); }
  const std::vector<std::string>& part_labels() const { return part_labels_; }
  std::optional<PartId> find_part(const std::string& label) const {
    for (PartId j = 0; j < part_labels_.size(); ++j)
      if (part_labels_[j] == label) return j;
    return std::nullopt;
  }
  int dim(NodeId n) const { return dims_.at(n); }

  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  NodeId source(ArrowId a) const { return arrows_.at(a).source; }
  NodeId target(ArrowId a) const { return arrows_.at(a).target; }
  ArrowId opposite(ArrowId a) const { return arrows_.at(a).opposite; }

  std::optional<ArrowId> arrow_between(NodeId s, NodeId t) const {
    auto it = arrow_index_.find({s, t});
    if (it == arrow_index_.end()) return std::nullopt;
    return it->second;
  }

  std::string arrow_label(ArrowId a) const {
    return labels_.at(source(a)) + "->" + labels_.at(target(a));
  }

  ArrowId arrow_by_label(const std::string& label) const {
    auto p = label.find("->");
    if (p == std::string::npos) throw NotACycle("arrow label '" + label + "' lacks '->'");
    auto s = find_node(label.substr(0, p)), t = find_node(label.substr(p + 2));
    if (!s || !t) throw NotACycle("arrow '" + label + "' names an unknown node");
    auto a = arrow_between(*s, *t);
    if (!a) throw NotACycle("no arrow " + label);
    return *a;
  }

  std::vector<ArrowId> incoming(NodeId n) const {
    std::vector<ArrowId> r;
    for (ArrowId a = 0; a < arrows_.size(); ++a)
      if (arrows_[a].target == n) r.push_back(a);
    return r;
  }

  std::vector<NodeId> neighbours(NodeId n) const {
    std::vector<NodeId> r;
    for (const auto& a : arrows_)
      if (a.source == n) r.push_back(a.target);
    return r;
  }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, NodeId> index_;
  std::vector<PartId> part_of_;
  std::vector<std::vector<NodeId>> parts_;
  std::vector<std::string> part_labels_;
  std::vector<int> dims_;
  std::vector<Arrow> arrows_;
  std::map<std::pair<NodeId, NodeId>, ArrowId> arrow_index_;
};

inline QuiverData build_k_partite(const std::vector<std::vector<std::string>>& parts,
                                  const std::map<std::string, int>& dims) {
  return QuiverData::build(parts, dims);
}

// ---------------------------------------------------------------------------
// Cycles. Arrows are listed in application order: s(α_{p+1}) = t(α_p).

inline void require_cycle(const QuiverData& q, const std::vector<ArrowId>& arrows) {
  if (arrows.empty()) throw NotACycle("empty cycle");
  for (std::size_t p = 0; p < arrows.size(); ++p) {
    if (arrows[p] >= q.arrow_count()) throw NotACycle("unknown arrow id");
    ArrowId next = arrows[(p + 1) % arrows.size()];
    if (next >= q.arrow_count()) throw NotACycle("unknown arrow id");
    if (q.source(next) != q.target(arrows[p]))
      throw NotACycle("arrows " + q.arrow_label(arrows[p]) + " and " + q.arrow_label(next) +
                      " are not composable");
  }
}

inline std::vector<ArrowId> rotate_left(const std::vector<ArrowId>& arrows, std::size_t k) {
  std::vector<ArrowId> r(arrows.size());
  for (std::size_t p = 0; p < arrows.size(); ++p) r[p] = arrows[(p + k) % arrows.size()];
  return r;
}

inline std::vector<ArrowId> least_rotation(const std::vector<ArrowId>& arrows) {
  std::vector<ArrowId> best = arrows;
  for (std::size_t k = 1; k < arrows.size(); ++k) best = std::min(best, rotate_left(arrows, k));
  return best;
}

// Splitting before position k (1 ≤ k < n) is admissible when no arrow of
// the tail has its opposite in the head; k = 0 is the trivial split.
inline bool admissible_split(const QuiverData& q, const std::vector<ArrowId>& arrows,
                             std::size_t k) {
  for (std::size_t p = k; p < arrows.size(); ++p)
    for (std::size_t r = 0; r < k; ++r)
      if (q.opposite(arrows[p]) == arrows[r]) return false;
  return true;
}

// Cycle without a distinguished starting arrow, stored as its least rotation.
class Cycle {
 public:
  Cycle() = default;
  Cycle(const QuiverData& q, const std::vector<ArrowId>& arrows) {
    require_cycle(q, arrows);
    arrows_ = least_rotation(arrows);
  }
  const std::vector<ArrowId>& arrows() const { return arrows_; }
  std::size_t length() const { return arrows_.size(); }
  friend auto operator<=>(const Cycle&, const Cycle&) = default;

 private:
  std::vector<ArrowId> arrows_;
};

// Cycle with anchor α₁, stored as the least representative of its class
// under admissible permutations. Admissibility of a split is "no opposite
// pair straddles the two cut points", which is an equivalence relation on
// cut points, so the one-step splits already exhaust the class.
class AnchoredCycle {
 public:
  AnchoredCycle() = default;
  AnchoredCycle(const QuiverData& q, const std::vector<ArrowId>& arrows) {
    require_cycle(q, arrows);
    arrows_ = arrows;
    for (std::size_t k = 1; k < arrows.size(); ++k)
      if (admissible_split(q, arrows, k)) arrows_ = std::min(arrows_, rotate_left(arrows, k));
  }
  const std::vector<ArrowId>& arrows() const { return arrows_; }
  std::size_t length() const { return arrows_.size(); }
  ArrowId anchor() const { return arrows_.front(); }
  Cycle forget_anchor(const QuiverData& q) const { return Cycle(q, arrows_); }
  friend auto operator<=>(const AnchoredCycle&, const AnchoredCycle&) = default;

 private:
  std::vector<ArrowId> arrows_;
};

inline AnchoredCycle canonical_anchored_form(const QuiverData& q, const AnchoredCycle& c) {
  return AnchoredCycle(q, c.arrows());
}

using Potential = Combination<Cycle>;
using QuantumPotential = Combination<AnchoredCycle>;

inline std::string to_string(const QuiverData& q, const std::vector<ArrowId>& arrows) {
  std::string s = "[";
  for (std::size_t p = 0; p < arrows.size(); ++p) {
    if (p) s += ", ";
    s += q.arrow_label(arrows[p]);
  }
  return s + "]";
}

enum class CycleKind { two_cycle, triangle, four_cycle, degenerate_four_cycle };

inline const char* to_string(CycleKind k) {
  switch (k) {
    case CycleKind::two_cycle: return "2-cycle";
    case CycleKind::triangle: return "triangle";
    case CycleKind::four_cycle: return "4-cycle";
    case CycleKind::degenerate_four_cycle: return "degenerate 4-cycle";
  }
  return "?";
}

struct IsomonodromyCycle {
  CycleKind kind;
  Cycle cycle;
  friend auto operator<=>(const IsomonodromyCycle&, const IsomonodromyCycle&) = default;
};

inline std::vector<IsomonodromyCycle> enumerate_isomonodromy_cycles(const QuiverData& q) {
  std::set<IsomonodromyCycle> found;
  auto arrow = [&](NodeId s, NodeId t) { return q.arrow_between(s, t); };
  for (ArrowId a = 0; a < q.arrow_count(); ++a)
    if (a < q.opposite(a))
      found.insert({CycleKind::two_cycle, Cycle(q, {a, q.opposite(a)})});
  const std::size_t n = q.node_count();
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j)
      for (NodeId k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        auto a = arrow(i, j), b = arrow(j, k), c = arrow(k, i);
        if (a && b && c) found.insert({CycleKind::triangle, Cycle(q, {*a, *b, *c})});
        for (NodeId l = 0; l < n; ++l) {
          if (l == i || l == j || l == k) continue;
          auto d = arrow(k, l), e = arrow(l, i);
          if (a && b && d && e) found.insert({CycleKind::four_cycle, Cycle(q, {*a, *b, *d, *e})});
        }
      }
  for (NodeId c = 0; c < n; ++c) {
    auto nb = q.neighbours(c);
    for (std::size_t x = 0; x < nb.size(); ++x)
      for (std::size_t y = x + 1; y < nb.size(); ++y) {
        ArrowId out_x = *arrow(c, nb[x]), in_x = *arrow(nb[x], c);
        ArrowId out_y = *arrow(c, nb[y]), in_y = *arrow(nb[y], c);
        found.insert({CycleKind::degenerate_four_cycle, Cycle(q, {out_x, in_x, out_y, in_y})});
      }
  }
  return {found.begin(), found.end()};
}

}  // namespace quiverweyl
