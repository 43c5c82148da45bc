#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "quiverweyl/potentials.hpp"
#include "quiverweyl/weyl.hpp"

namespace quiverweyl {

// H = Σ_i H_i dt_i with H_i = Tr(W_i); W_i is a potential over isomonodromy
// cycles whose coefficients are Scalars in the declared times.
struct HamiltonianSystem {
  QuiverData quiver;
  ParameterSet times;
  // Node carrying each time, by time index.
  std::vector<NodeId> time_nodes;
  std::map<std::size_t, Potential> hamiltonians;

  Potential potential(std::size_t i) const {
    auto it = hamiltonians.find(i);
    return it == hamiltonians.end() ? Potential() : it->second;
  }
  QuantumPotential quantised(std::size_t i) const { return quantize_potential(quiver, potential(i)); }
};

inline void validate_system(const HamiltonianSystem& sys) {
  std::set<Cycle> allowed;
  for (const auto& ic : enumerate_isomonodromy_cycles(sys.quiver)) allowed.insert(ic.cycle);
  for (const auto& [i, w] : sys.hamiltonians) {
    if (i >= sys.times.size()) throw ValidationError("Hamiltonian for undeclared time");
    for (const auto& [c, coeff] : w.terms()) {
      if (!allowed.count(c))
        throw ValidationError("cycle " + to_string(sys.quiver, c.arrows()) +
                              " is not an isomonodromy cycle");
      if (coeff.max_parameter() >= static_cast<long>(sys.times.size()))
        throw ValidationError("coefficient uses an undeclared time");
    }
  }
}

// Centre node of a star quiver: every arrow has it as an endpoint.
inline NodeId star_centre(const QuiverData& q) {
  if (q.node_count() < 2 || q.arrow_count() == 0) throw UnsupportedShape("not a star quiver");
  for (NodeId c = 0; c < q.node_count(); ++c) {
    bool centre = true;
    for (const auto& a : q.arrows())
      if (a.source != c && a.target != c) centre = false;
    if (centre && q.neighbours(c).size() + 1 == q.node_count()) return c;
  }
  throw UnsupportedShape("not a star quiver");
}

// Degenerate 4-cycle at the centre through peripheries i and j:
// c → i → c → j → c in application order.
inline Cycle star_cycle(const QuiverData& q, NodeId c, NodeId i, NodeId j) {
  return Cycle(q, {*q.arrow_between(c, i), *q.arrow_between(i, c), *q.arrow_between(c, j),
                   *q.arrow_between(j, c)});
}

// Schlesinger: H_i = Σ_{j≠i} Tr(R_i R_j) / (t_i − t_j) with R_i the
// composite V_c → V_i → V_c, one time per peripheral node.
inline HamiltonianSystem build_schlesinger(const QuiverData& q, const Embedding& a) {
  require_compatible(q, a);
  NodeId c = star_centre(q);
  if (!a[q.part_of(c)].is_infinite())
    throw UnsupportedShape("the centre of the star must sit at infinity");
  HamiltonianSystem sys{q, {}, {}, {}};
  for (NodeId i = 0; i < q.node_count(); ++i) {
    if (i == c) continue;
    sys.times.declare(default_parameter_name(sys.time_nodes.size()));
    sys.time_nodes.push_back(i);
  }
  const std::size_t n = sys.time_nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    Potential h;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Scalar dt = Scalar::parameter(TimeParameter{i}) - Scalar::parameter(TimeParameter{j});
      h.add(star_cycle(q, c, sys.time_nodes[i], sys.time_nodes[j]), dt.inverse());
    }
    sys.hamiltonians[i] = h;
  }
  return sys;
}

enum class FlatnessKind { classical, quantum };

inline const char* to_string(FlatnessKind k) {
  return k == FlatnessKind::classical ? "classical" : "quantum";
}

struct FlatnessPair {
  std::size_t i = 0, j = 0;
  bool derivative_ok = false;
  bool bracket_ok = false;
  std::string witness;
  bool ok() const { return derivative_ok && bracket_ok; }
};

struct FlatnessReport {
  FlatnessKind kind = FlatnessKind::classical;
  std::vector<FlatnessPair> pairs;
  bool ok() const {
    for (const auto& p : pairs)
      if (!p.ok()) return false;
    return true;
  }
};

template <typename Tag>
Combination<Word, Tag> partial(const Combination<Word, Tag>& x, TimeParameter t) {
  return x.map_coefficients([&](const Scalar& c) { return c.partial(t); });
}

inline FlatnessPair check_flatness_pair(const HamiltonianSystem& sys, const WeylContext& ctx,
                                        FlatnessKind kind, std::size_t i, std::size_t j) {
  FlatnessPair r;
  r.i = i;
  r.j = j;
  TimeParameter ti{i}, tj{j};
  const ParameterSet* names = &sys.times;
  if (kind == FlatnessKind::classical) {
    PolyElement hi = classical_trace(sys.quiver, sys.potential(i));
    PolyElement hj = classical_trace(sys.quiver, sys.potential(j));
    PolyElement d = partial(hi, tj) - partial(hj, ti);
    PolyElement b = poisson_bracket(hi, hj, ctx);
    r.derivative_ok = d.is_zero();
    r.bracket_ok = b.is_zero();
    if (!r.derivative_ok) r.witness = "dH_i/dt_j - dH_j/dt_i = " + to_string(d, sys.quiver, names);
    else if (!r.bracket_ok) r.witness = "{H_i, H_j} = " + to_string(b, sys.quiver, names);
  } else {
    WeylElement hi = quantum_trace(ctx, sys.quantised(i));
    WeylElement hj = quantum_trace(ctx, sys.quantised(j));
    WeylElement d = partial(hi, tj) - partial(hj, ti);
    WeylElement b = commutator(hi, hj, ctx);
    r.derivative_ok = d.is_zero();
    r.bracket_ok = b.is_zero();
    if (!r.derivative_ok) r.witness = "dH_i/dt_j - dH_j/dt_i = " + to_string(d, sys.quiver, names);
    else if (!r.bracket_ok) r.witness = "[H_i, H_j] = " + to_string(b, sys.quiver, names);
  }
  return r;
}

// Every unordered pair i < j; a single-time system passes vacuously.
inline FlatnessReport check_flatness(const HamiltonianSystem& sys, const Embedding& a,
                                     FlatnessKind kind) {
  WeylContext ctx(sys.quiver, a);
  FlatnessReport rep;
  rep.kind = kind;
  for (std::size_t i = 0; i < sys.times.size(); ++i)
    for (std::size_t j = i + 1; j < sys.times.size(); ++j)
      rep.pairs.push_back(check_flatness_pair(sys, ctx, kind, i, j));
  return rep;
}

}  // namespace quiverweyl
