#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "quiverweyl/config.hpp"
#include "quiverweyl/moment.hpp"
#include "quiverweyl/random.hpp"
#include "quiverweyl/reduction.hpp"
#include "quiverweyl/samples.hpp"
#include "quiverweyl/symmetry.hpp"
#include "quiverweyl/systems.hpp"

namespace quiverweyl {

// info and skip never affect the exit status.
enum class CheckStatus { pass, fail, skip, info };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skip: return "SKIP";
    case CheckStatus::info: return "INFO";
  }
  return "?";
}

struct CheckOutcome {
  CheckStatus status = CheckStatus::pass;
  std::string witness;
};

struct Check {
  std::string id;
  std::string anchor;
  std::function<CheckOutcome()> run;
};

struct CheckResult {
  std::string id;
  std::string anchor;
  CheckStatus status = CheckStatus::pass;
  std::string witness;
  double millis = 0;
};

struct Report {
  std::vector<CheckResult> results;

  bool ok() const {
    for (const auto& r : results)
      if (r.status == CheckStatus::fail) return false;
    return true;
  }
  std::size_t count(CheckStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [&](const auto& r) { return r.status == s; }));
  }
};

namespace detail {

inline CheckOutcome pass() { return {}; }
inline CheckOutcome fail(std::string witness) { return {CheckStatus::fail, std::move(witness)}; }

// Per-check stream: the job seed mixed with the check id, so results do not
// depend on which checks run or in which order.
inline RandomInputs check_rng(std::uint64_t seed, const std::string& id) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : id) h = (h ^ c) * 1099511628211ull;
  return RandomInputs(seed * 0x9e3779b97f4a7c15ull ^ h);
}

struct Instance {
  GroupElement g;
  Embedding a, ag;

  std::string describe() const { return "g = " + g.to_string() + ", a = " + a.to_string(); }
};

// The job's own (g, a) pairs first, then random pairs cycling through every
// η branch.
class InstanceStream {
 public:
  InstanceStream(const VerificationJob& job, RandomInputs& in) : job_(job), in_(in) {}

  Instance next() {
    std::size_t n = n_++;
    if (n < job_.group.size()) return make(job_.group[n], job_.embedding);
    static constexpr EtaCase branches[] = {EtaCase::generic, EtaCase::degenerate_c_zero,
                                           EtaCase::generic_to_degenerate,
                                           EtaCase::degenerate_to_generic, EtaCase::degenerate_swap};
    EtaCase b = branches[n % 5];
    bool degenerate = b != EtaCase::generic && b != EtaCase::generic_to_degenerate;
    Embedding a = in_.embedding(job_.quiver.part_count(), degenerate);
    return make(in_.group_element_for(b, a), a);
  }

 private:
  static Instance make(const GroupElement& g, const Embedding& a) {
    return {g, a, act_on_embedding(g, a)};
  }
  const VerificationJob& job_;
  RandomInputs& in_;
  std::size_t n_ = 0;
};

using JobPtr = std::shared_ptr<const VerificationJob>;

inline int samples(const VerificationJob& job, int fallback) {
  return job.samples > 0 ? job.samples : fallback;
}

template <typename E>
std::string show(const E& x, const QuiverData& q) {
  std::string s = to_string(x, q);
  return s.size() > 400 ? s.substr(0, 400) + " ..." : s;
}

// Hamiltonians the reduction checks run on: the system's, or one trace per
// isomonodromy cycle.
inline std::vector<std::pair<std::string, Potential>> reduction_hamiltonians(const VerificationJob& job) {
  std::vector<std::pair<std::string, Potential>> out;
  const QuiverData& q = job.quiver;
  if (job.system) {
    for (std::size_t i = 0; i < job.system->times.size(); ++i)
      if (!job.system->potential(i).is_zero())
        out.emplace_back("H[" + job.system->times.name(TimeParameter{i}) + "]",
                         job.system->potential(i));
    return out;
  }
  for (const auto& ic : enumerate_isomonodromy_cycles(q))
    out.emplace_back("Tr(" + to_string(q, ic.cycle.arrows()) + ")", Potential::single(ic.cycle));
  return out;
}

// ---- cocycle ----

inline std::vector<Check> cocycle_checks(const JobPtr& job) {
  std::vector<Check> out;
  out.push_back({"cocycle.action-law", "right action of SL2 on the projective line", [job] {
                   RandomInputs in = check_rng(job->seed, "cocycle.action-law");
                   for (int n = 0; n < samples(*job, 200); ++n) {
                     GroupElement g = in.group_element(), h = in.group_element();
                     ProjPoint p = n % 4 == 0 ? ProjPoint::infinity() : ProjPoint::finite(in.rational());
                     if (!(act_on_point(h, act_on_point(g, p)) == act_on_point(g * h, p)))
                       return fail("p = " + p.to_string() + ", g = " + g.to_string() +
                                   ", h = " + h.to_string());
                   }
                   return pass();
                 }});
  out.push_back({"cocycle.eta-law", "eta(gh, a) = eta(h, a.g) eta(g, a)", [job] {
                   RandomInputs in = check_rng(job->seed, "cocycle.eta-law");
                   InstanceStream s(*job, in);
                   for (int n = 0; n < samples(*job, 200); ++n) {
                     Instance x = s.next();
                     GroupElement h = in.group_element();
                     for (PartId j = 0; j < x.a.size(); ++j) {
                       Rational lhs = eta(x.g * h, x.a, j), rhs = eta(h, x.ag, j) * eta(x.g, x.a, j);
                       if (lhs != rhs)
                         return fail(x.describe() + ", h = " + h.to_string() + ", part " +
                                     std::to_string(j) + ": " + lhs.to_string() +
                                     " != " + rhs.to_string());
                     }
                   }
                   return pass();
                 }});
  out.push_back({"cocycle.weight-law", "eps(a) = eps(a.g) eta_s eta_t on every arrow", [job] {
                   RandomInputs in = check_rng(job->seed, "cocycle.weight-law");
                   InstanceStream s(*job, in);
                   const QuiverData& q = job->quiver;
                   for (int n = 0; n < samples(*job, 200); ++n) {
                     Instance x = s.next();
                     for (ArrowId a = 0; a < q.arrow_count(); ++a) {
                       Rational lhs = epsilon(q, x.a, a);
                       Rational rhs = epsilon(q, x.ag, a) * eta_node(x.g, x.a, q, q.source(a)) *
                                      eta_node(x.g, x.a, q, q.target(a));
                       if (lhs != rhs)
                         return fail(x.describe() + ", arrow " + q.arrow_label(a) + ": " +
                                     lhs.to_string() + " != " + rhs.to_string());
                     }
                   }
                   return pass();
                 }});
  out.push_back({"cocycle.eta-oracle", "eta agrees with diagonal normalisation in every branch", [job] {
                   RandomInputs in = check_rng(job->seed, "cocycle.eta-oracle");
                   InstanceStream s(*job, in);
                   const QuiverData& q = job->quiver;
                   for (int n = 0; n < samples(*job, 200); ++n) {
                     Instance x = s.next();
                     std::vector<Rational> scale;
                     for (NodeId i = 0; i < q.node_count(); ++i) scale.push_back(in.nonzero_rational());
                     auto e = eta_via_normalisation(
                         x.g, x.a, q, DiagonalPresentation::from_embedding(q, x.a, scale));
                     for (PartId j = 0; j < x.a.size(); ++j)
                       if (eta(x.g, x.a, j) != e.at(j))
                         return fail(x.describe() + " (" + to_string(classify_eta(x.g, x.a)) +
                                     "), part " + std::to_string(j) + ": eta = " +
                                     eta(x.g, x.a, j).to_string() + ", normalisation gives " +
                                     e.at(j).to_string());
                   }
                   return pass();
                 }});
  return out;
}

// ---- symplectic ----

inline std::vector<Check> symplectic_checks(const JobPtr& job) {
  std::vector<Check> out;
  out.push_back({"symplectic.antisymmetry", "eps(a*) = -eps(a) and the bracket is antisymmetric", [job] {
                   const QuiverData& q = job->quiver;
                   RandomInputs in = check_rng(job->seed, "symplectic.antisymmetry");
                   std::vector<Embedding> embeddings{job->embedding};
                   for (int n = 0; n < samples(*job, 20); ++n)
                     embeddings.push_back(in.embedding(q.part_count(), n % 2 == 0));
                   for (const auto& a : embeddings)
                     for (ArrowId x = 0; x < q.arrow_count(); ++x)
                       if (epsilon(q, a, x) != -epsilon(q, a, q.opposite(x)))
                         return fail("a = " + a.to_string() + ", arrow " + q.arrow_label(x) +
                                     ": eps = " + epsilon(q, a, x).to_string() +
                                     ", opposite eps = " + epsilon(q, a, q.opposite(x)).to_string());
                   WeylContext ctx(q, job->embedding);
                   for (Generator x : ctx.generators())
                     for (Generator y : ctx.generators()) {
                       auto X = generator_element<PolyElement>(x), Y = generator_element<PolyElement>(y);
                       PolyElement xy = poisson_bracket(X, Y, ctx), yx = poisson_bracket(Y, X, ctx);
                       if (xy != -yx)
                         return fail("{" + to_string(x, q) + ", " + to_string(y, q) + "} = " +
                                     show(xy, q) + " but the reverse bracket is " + show(yx, q));
                     }
                   return pass();
                 }});
  out.push_back({"symplectic.jacobi", "Jacobi identity for the Poisson bracket", [job] {
                   RandomInputs in = check_rng(job->seed, "symplectic.jacobi");
                   WeylContext ctx(job->quiver, job->embedding);
                   for (int n = 0; n < samples(*job, 20); ++n) {
                     auto f = random_element<PolyElement>(in.engine(), ctx, 2);
                     auto g = random_element<PolyElement>(in.engine(), ctx, 2);
                     auto h = random_element<PolyElement>(in.engine(), ctx, 2);
                     PolyElement j = poisson_bracket(f, poisson_bracket(g, h, ctx), ctx) +
                                     poisson_bracket(g, poisson_bracket(h, f, ctx), ctx) +
                                     poisson_bracket(h, poisson_bracket(f, g, ctx), ctx);
                     if (!j.is_zero()) return fail("f = " + show(f, job->quiver) + ": cyclic sum " + show(j, job->quiver));
                   }
                   return pass();
                 }});
  out.push_back({"symplectic.pullback-bracket", "{phi*f, phi*h}_a = phi*{f, h}_(a.g)", [job] {
                   RandomInputs in = check_rng(job->seed, "symplectic.pullback-bracket");
                   InstanceStream s(*job, in);
                   const QuiverData& q = job->quiver;
                   for (int n = 0; n < samples(*job, 100); ++n) {
                     Instance x = s.next();
                     WeylContext ca(q, x.a), cag(q, x.ag);
                     auto f = random_element<PolyElement>(in.engine(), ca, 2);
                     auto h = random_element<PolyElement>(in.engine(), ca, 2);
                     PolyElement lhs = poisson_bracket(classical_pullback(q, x.g, x.a, f),
                                                       classical_pullback(q, x.g, x.a, h), ca);
                     PolyElement rhs = classical_pullback(q, x.g, x.a, poisson_bracket(f, h, cag));
                     if (lhs != rhs) return fail(x.describe() + ": " + show(lhs, q) + " != " + show(rhs, q));
                   }
                   return pass();
                 }});
  out.push_back({"symplectic.pullback-composition", "phi*_(gh) = phi*_g phi*_h", [job] {
                   RandomInputs in = check_rng(job->seed, "symplectic.pullback-composition");
                   InstanceStream s(*job, in);
                   const QuiverData& q = job->quiver;
                   for (int n = 0; n < samples(*job, 100); ++n) {
                     Instance x = s.next();
                     GroupElement h = in.group_element();
                     WeylContext ca(q, x.a);
                     auto f = random_element<PolyElement>(in.engine(), ca, 3);
                     PolyElement lhs = classical_pullback(q, x.g * h, x.a, f);
                     PolyElement rhs = classical_pullback(q, x.g, x.a, classical_pullback(q, h, x.ag, f));
                     if (lhs != rhs)
                       return fail(x.describe() + ", h = " + h.to_string() + ": " + show(lhs, q) +
                                   " != " + show(rhs, q));
                   }
                   return pass();
                 }});
  return out;
}

// ---- quantum-action ----

inline std::vector<Check> quantum_action_checks(const JobPtr& job) {
  std::vector<Check> out;
  out.push_back({"quantum-action.associativity", "the normal-ordered product is associative", [job] {
                   RandomInputs in = check_rng(job->seed, "quantum-action.associativity");
                   const QuiverData& q = job->quiver;
                   for (int n = 0; n < samples(*job, 100); ++n) {
                     Embedding a = n == 0 ? job->embedding : in.embedding(q.part_count(), n % 2 == 0);
                     WeylContext ctx(q, a);
                     auto x = random_element<WeylElement>(in.engine(), ctx, 3);
                     auto y = random_element<WeylElement>(in.engine(), ctx, 3);
                     auto z = random_element<WeylElement>(in.engine(), ctx, 3);
                     WeylElement l = weyl_product(weyl_product(x, y, ctx), z, ctx);
                     WeylElement r = weyl_product(x, weyl_product(y, z, ctx), ctx);
                     if (l != r) return fail("a = " + a.to_string() + ", x = " + show(x, q) + ": " +
                                             show(l - r, q));
                   }
                   return pass();
                 }});
  out.push_back({"quantum-action.semiclassical-bracket", "sigma([f, g] / hbar^2) = {sigma f, sigma g}", [job] {
                   RandomInputs in = check_rng(job->seed, "quantum-action.semiclassical-bracket");
                   const QuiverData& q = job->quiver;
                   for (int n = 0; n < samples(*job, 100); ++n) {
                     Embedding a = n == 0 ? job->embedding : in.embedding(q.part_count(), n % 2 == 0);
                     WeylContext ctx(q, a);
                     ReesElement f = random_rees(in.engine(), ctx, 3), g = random_rees(in.engine(), ctx, 3);
                     auto reduced = divide_by_hbar(rees_commutator(f, g, ctx), 2);
                     if (!reduced) return fail("a = " + a.to_string() + ": commutator not divisible by hbar^2");
                     PolyElement l = semiclassical_limit(*reduced);
                     PolyElement r = poisson_bracket(semiclassical_limit(f), semiclassical_limit(g), ctx);
                     if (l != r) return fail("a = " + a.to_string() + ": " + show(l, q) + " != " + show(r, q));
                   }
                   return pass();
                 }});
  out.push_back({"quantum-action.morphism-generators", "phi-hat*(x y) = phi-hat*(x) phi-hat*(y) on generators", [job] {
                   RandomInputs in = check_rng(job->seed, "quantum-action.morphism-generators");
                   InstanceStream s(*job, in);
                   const QuiverData& q = job->quiver;
                   for (int n = 0; n < samples(*job, 50); ++n) {
                     Instance x = s.next();
                     WeylContext ca(q, x.a), cag(q, x.ag);
                     for (Generator u : ca.generators())
                       for (Generator v : ca.generators()) {
                         auto U = generator_element<WeylElement>(u), V = generator_element<WeylElement>(v);
                         WeylElement l = quantum_pullback(q, x.g, x.a, weyl_product(U, V, cag));
                         WeylElement r = weyl_product(quantum_pullback(q, x.g, x.a, U),
                                                      quantum_pullback(q, x.g, x.a, V), ca);
                         if (l != r)
                           return fail(x.describe() + ", x = " + to_string(u, q) + ", y = " +
                                       to_string(v, q) + ": " + show(l, q) + " != " + show(r, q));
                       }
                   }
                   return pass();
                 }});
  out.push_back({"quantum-action.morphism-rees", "phi-hat* is multiplicative on the Rees algebra", [job] {
                   RandomInputs in = check_rng(job->seed, "quantum-action.morphism-rees");
                   InstanceStream s(*job, in);
                   const QuiverData& q = job->quiver;
                   for (int n = 0; n < samples(*job, 50); ++n) {
                     Instance x = s.next();
                     WeylContext ca(q, x.a), cag(q, x.ag);
                     ReesElement u = random_rees(in.engine(), ca, 3), v = random_rees(in.engine(), ca, 3);
                     ReesElement l = quantum_pullback(q, x.g, x.a, rees_product(u, v, cag));
                     ReesElement r = rees_product(quantum_pullback(q, x.g, x.a, u),
                                                  quantum_pullback(q, x.g, x.a, v), ca);
                     if (l != r) return fail(x.describe() + ": " + to_string(l - r, q));
                   }
                   return pass();
                 }});
  out.push_back({"quantum-action.intertwining", "sigma(phi-hat* x) = phi*(sigma x)", [job] {
                   RandomInputs in = check_rng(job->seed, "quantum-action.intertwining");
                   InstanceStream s(*job, in);
                   const QuiverData& q = job->quiver;
                   for (int n = 0; n < samples(*job, 50); ++n) {
                     Instance x = s.next();
                     WeylContext cag(q, x.ag);
                     ReesElement u = random_rees(in.engine(), cag, 3);
                     PolyElement l = semiclassical_limit(quantum_pullback(q, x.g, x.a, u));
                     PolyElement r = classical_pullback(q, x.g, x.a, semiclassical_limit(u));
                     if (l != r) return fail(x.describe() + ": " + show(l, q) + " != " + show(r, q));
                   }
                   return pass();
                 }});
  out.push_back({"quantum-action.quantisation-commutes", "quantising traces commutes with the action", [job] {
                   RandomInputs in = check_rng(job->seed, "quantum-action.quantisation-commutes");
                   InstanceStream s(*job, in);
                   const QuiverData& q = job->quiver;
                   auto cycles = enumerate_isomonodromy_cycles(q);
                   for (int n = 0; n < samples(*job, 30); ++n) {
                     Instance x = s.next();
                     WeylContext ca(q, x.a), cag(q, x.ag);
                     for (const auto& ic : cycles) {
                       Potential p = Potential::single(ic.cycle);
                       ReesElement l = quantum_pullback(q, x.g, x.a, quantum_trace_hbar(cag, quantize_potential(q, p)));
                       ReesElement r = quantum_trace_hbar(ca, quantize_potential(q, classical_pullback(q, x.g, x.a, p)));
                       if (l != r)
                         return fail(x.describe() + ", " + to_string(ic.kind) + " " +
                                     to_string(q, ic.cycle.arrows()) + ": " + to_string(l - r, q));
                     }
                   }
                   return pass();
                 }});
  return out;
}

// ---- comoment ----

inline std::vector<Check> comoment_checks(const JobPtr& job) {
  std::vector<Check> out;
  out.push_back({"comoment.generator-brackets", "[mu(L), B] and [mu(L), B*] act by matrix units", [job] {
                   const QuiverData& q = job->quiver;
                   WeylContext ctx(q, job->embedding);
                   for (const auto& L : lie_basis(q)) {
                     WeylElement mu = quantum_comoment_local(ctx, L);
                     for (ArrowId a : q.incoming(L.node)) {
                       ArrowId as = q.opposite(a);
                       for (int s = 0; s < q.dim(q.target(a)); ++s)
                         for (int r = 0; r < q.dim(q.source(a)); ++r) {
                           auto B = generator_element<WeylElement>(Generator(a, s, r));
                           WeylElement want = s == L.col ? generator_element<WeylElement>(
                                                               Generator(a, L.row, r), Scalar(-1))
                                                         : WeylElement();
                           WeylElement got = commutator(mu, B, ctx);
                           if (got != want)
                             return fail("[" + to_string(L, q) + ", " + show(B, q) + "] = " +
                                         show(got, q) + ", expected " + show(want, q));
                           auto Bs = generator_element<WeylElement>(Generator(as, r, s));
                           WeylElement dual = s == L.row ? generator_element<WeylElement>(
                                                               Generator(as, r, L.col))
                                                         : WeylElement();
                           got = commutator(mu, Bs, ctx);
                           if (got != dual)
                             return fail("[" + to_string(L, q) + ", " + show(Bs, q) + "] = " +
                                         show(got, q) + ", expected " + show(dual, q));
                         }
                     }
                   }
                   return pass();
                 }});
  out.push_back({"comoment.cross-node", "comoments at different nodes commute", [job] {
                   const QuiverData& q = job->quiver;
                   WeylContext ctx(q, job->embedding);
                   auto basis = lie_basis(q);
                   for (const auto& L : basis) {
                     WeylElement mu = quantum_comoment_local(ctx, L);
                     for (const auto& M : basis) {
                       if (M.node <= L.node) continue;
                       WeylElement c = commutator(mu, quantum_comoment_local(ctx, M), ctx);
                       if (!c.is_zero())
                         return fail("[" + to_string(L, q) + ", " + to_string(M, q) + "] = " + show(c, q));
                     }
                   }
                   return pass();
                 }});
  out.push_back({"comoment.lie-morphism", "e_kl -> mu(L_lk) is a Lie algebra morphism at every node", [job] {
                   const QuiverData& q = job->quiver;
                   WeylContext ctx(q, job->embedding);
                   for (NodeId i = 0; i < q.node_count(); ++i) {
                     int d = q.dim(i);
                     auto rho = [&](int k, int l) {
                       return quantum_comoment_local(ctx, dual_of_matrix_unit(i, k, l));
                     };
                     for (int k = 0; k < d; ++k)
                       for (int l = 0; l < d; ++l)
                         for (int k2 = 0; k2 < d; ++k2)
                           for (int l2 = 0; l2 < d; ++l2) {
                             WeylElement want;
                             if (k2 == l) want += rho(k, l2);
                             if (k == l2) want -= rho(k2, l);
                             WeylElement got = commutator(rho(k, l), rho(k2, l2), ctx);
                             if (got != want)
                               return fail("node " + q.node_label(i) + ", [e" + std::to_string(k + 1) +
                                           std::to_string(l + 1) + ", e" + std::to_string(k2 + 1) +
                                           std::to_string(l2 + 1) + "]: " + show(got - want, q));
                           }
                   }
                   return pass();
                 }});
  out.push_back({"comoment.action-compatibility", "phi* mu_(a.g) = mu_a, classical and quantum", [job] {
                   RandomInputs in = check_rng(job->seed, "comoment.action-compatibility");
                   InstanceStream s(*job, in);
                   const QuiverData& q = job->quiver;
                   auto basis = lie_basis(q);
                   for (int n = 0; n < samples(*job, 50); ++n) {
                     Instance x = s.next();
                     WeylContext ca(q, x.a), cag(q, x.ag);
                     for (const auto& L : basis) {
                       PolyElement cl = classical_pullback(q, x.g, x.a, classical_comoment(cag, L));
                       if (cl != classical_comoment(ca, L))
                         return fail(x.describe() + ", classical " + to_string(L, q) + ": " +
                                     show(cl - classical_comoment(ca, L), q));
                       ReesElement qu = quantum_pullback(q, x.g, x.a, deformed_comoment(cag, L));
                       if (qu != deformed_comoment(ca, L))
                         return fail(x.describe() + ", quantum " + to_string(L, q) + ": " +
                                     to_string(qu - deformed_comoment(ca, L), q));
                     }
                   }
                   return pass();
                 }});
  out.push_back({"comoment.trace-invariance", "quantum traces of anchored cycles are invariant", [job] {
                   const QuiverData& q = job->quiver;
                   WeylContext ctx(q, job->embedding);
                   for (const auto& ic : enumerate_isomonodromy_cycles(q)) {
                     WeylElement tr = quantum_trace(ctx, AnchoredCycle(q, ic.cycle.arrows()));
                     if (!is_invariant(tr, ctx))
                       return fail("Tr(" + to_string(q, ic.cycle.arrows()) + ") is not invariant");
                   }
                   return pass();
                 }});
  return out;
}

// ---- reduction ----

inline std::string describe_shift(const ShiftResult& r, ReductionKind k) {
  std::string s = std::string(to_string(k)) + ": ";
  if (!r.found) return s + r.witness;
  if (r.trivial) return s + "c = 0 (pullback leaves H unchanged)";
  return s + "c = " + r.c.to_string() + " with " + std::to_string(r.certificate_terms) +
         " certificate terms at D = " + std::to_string(r.degree_bound);
}

// A certificate that does not recombine, or two kinds disagreeing on c, is a
// failure. Not finding c within the degree bound proves nothing and is
// reported as a note.
inline CheckOutcome shift_check(const VerificationJob& job, const GroupElement& g) {
  std::string notes;
  bool complete = true;
  for (const auto& [name, w] : reduction_hamiltonians(job)) {
    ShiftOptions opts;
    opts.degree_bound = job.degree_bound;
    std::optional<Scalar> agreed;
    for (ReductionKind k : {ReductionKind::classical, ReductionKind::quantum, ReductionKind::rees}) {
      ShiftResult r = reduced_shift(job.quiver, g, job.embedding, w, job.orbit, k, opts);
      if (r.found && !r.certificate_verified) return fail(name + ", " + describe_shift(r, k));
      if (r.found && agreed && *agreed != r.c)
        return fail(name + ": " + to_string(k) + " gives c = " + r.c.to_string() +
                    ", another kind gave " + agreed->to_string());
      if (r.found && !agreed) agreed = r.c;
      complete = complete && r.found;
      if (k == ReductionKind::quantum || !r.found)
        notes += (notes.empty() ? "" : "; ") + name + " " + describe_shift(r, k);
    }
  }
  return {complete ? CheckStatus::pass : CheckStatus::info, notes};
}

inline std::vector<Check> reduction_checks(const JobPtr& job) {
  std::vector<Check> out;
  out.push_back({"reduction.generator-membership", "each reduction ideal generator has a certificate", [job] {
                   const QuiverData& q = job->quiver;
                   WeylContext ctx(q, job->embedding);
                   auto qg = ideal_generators<WeylElement>(ctx, job->orbit);
                   TruncatedIdeal<WeylElement> qi(ctx, qg, 2, qg.elements);
                   for (std::size_t s = 0; s < qg.elements.size(); ++s)
                     if (!qi.certify(qg.elements[s]).verify(qg.elements[s], qg, ctx))
                       return fail("quantum generator " + to_string(qg.labels[s], q) + " not certified at D = 2");
                   auto cg = ideal_generators<PolyElement>(ctx, job->orbit);
                   TruncatedIdeal<PolyElement> ci(ctx, cg, 2, cg.elements);
                   for (std::size_t s = 0; s < cg.elements.size(); ++s)
                     if (!ci.certify(cg.elements[s]).verify(cg.elements[s], cg, ctx))
                       return fail("classical generator " + to_string(cg.labels[s], q) + " not certified at D = 2");
                   return pass();
                 }});
  out.push_back({"reduction.identity-shift", "the identity shifts every Hamiltonian by c = 0", [job] {
                   for (const auto& [name, w] : reduction_hamiltonians(*job))
                     for (ReductionKind k : {ReductionKind::classical, ReductionKind::quantum}) {
                       ShiftResult r = reduced_shift(job->quiver, GroupElement::identity(), job->embedding,
                                                     w, job->orbit, k);
                       if (!r.found || !r.c.is_zero()) return fail(name + ", " + describe_shift(r, k));
                     }
                   return pass();
                 }});
  for (std::size_t n = 0; n < job->group.size(); ++n) {
    std::string id = "reduction.shift-g" + std::to_string(n + 1);
    out.push_back({id, "reduced Hamiltonians shift by a constant, equal classically and quantum",
                   [job, n] { return shift_check(*job, job->group[n]); }});
  }
  out.push_back({"reduction.trace-probes", "trace membership probes at the degree bound (no admissibility claim)", [job] {
                   const QuiverData& q = job->quiver;
                   WeylContext ctx(q, job->embedding);
                   std::string notes;
                   for (const auto& ic : enumerate_isomonodromy_cycles(q)) {
                     WeylElement tr = quantum_trace(ctx, AnchoredCycle(q, ic.cycle.arrows()));
                     int d = element_degree(tr);
                     int bound = job->degree_bound >= d ? job->degree_bound : d + 2;
                     auto cert = ideal_membership(tr, ctx, job->orbit, bound);
                     notes += (notes.empty() ? "" : "; ") + std::string("Tr(") +
                              to_string(q, ic.cycle.arrows()) + ") " +
                              (cert.found ? "in the ideal" : "not found up to D = " + std::to_string(bound));
                   }
                   return CheckOutcome{CheckStatus::info, notes};
                 }});
  return out;
}

// ---- flatness ----

inline std::vector<Check> flatness_checks(const JobPtr& job) {
  std::vector<Check> out;
  if (!job->system) {
    out.push_back({"flatness.system", "strong flatness of the configured system",
                   [] { return CheckOutcome{CheckStatus::skip, "no system configured"}; }});
    return out;
  }
  const HamiltonianSystem& sys = *job->system;
  for (FlatnessKind k : {FlatnessKind::classical, FlatnessKind::quantum})
    for (std::size_t i = 0; i < sys.times.size(); ++i)
      for (std::size_t j = i + 1; j < sys.times.size(); ++j) {
        std::string id = std::string("flatness.") + to_string(k) + "." +
                         sys.times.name(TimeParameter{i}) + "-" + sys.times.name(TimeParameter{j});
        std::string anchor = k == FlatnessKind::classical
                                 ? "dH_i/dt_j = dH_j/dt_i and {H_i, H_j} = 0"
                                 : "dH_i/dt_j = dH_j/dt_i and [H_i, H_j] = 0";
        out.push_back({id, anchor, [job, k, i, j] {
                         WeylContext ctx(job->quiver, job->embedding);
                         FlatnessPair p = check_flatness_pair(*job->system, ctx, k, i, j);
                         return p.ok() ? pass() : fail(p.witness);
                       }});
      }
  out.push_back({"flatness.quantisation-symbol", "sigma(H-hat_i) = H_i", [job] {
                   const HamiltonianSystem& s = *job->system;
                   WeylContext ctx(s.quiver, job->embedding);
                   for (std::size_t i = 0; i < s.times.size(); ++i) {
                     PolyElement l = semiclassical_limit(quantum_trace_hbar(ctx, s.quantised(i)));
                     PolyElement r = classical_trace(s.quiver, s.potential(i));
                     if (l != r)
                       return fail(s.times.name(TimeParameter{i}) + ": " + show(l - r, s.quiver));
                   }
                   return pass();
                 }});
  out.push_back({"flatness.covariance", "phi-hat* scales each cycle of H-hat_i by its eta product", [job] {
                   const HamiltonianSystem& s = *job->system;
                   const QuiverData& q = s.quiver;
                   RandomInputs in = check_rng(job->seed, "flatness.covariance");
                   InstanceStream st(*job, in);
                   for (int n = 0; n < samples(*job, 10); ++n) {
                     Instance x = st.next();
                     WeylContext ca(q, x.a), cag(q, x.ag);
                     for (std::size_t i = 0; i < s.times.size(); ++i) {
                       ReesElement l = quantum_pullback(q, x.g, x.a, quantum_trace_hbar(cag, s.quantised(i)));
                       ReesElement r = quantum_trace_hbar(
                           ca, quantize_potential(q, classical_pullback(q, x.g, x.a, s.potential(i))));
                       if (l != r)
                         return fail(x.describe() + ", " + s.times.name(TimeParameter{i}) + ": " +
                                     to_string(l - r, q, &s.times));
                     }
                   }
                   return pass();
                 }});
  return out;
}

}  // namespace detail

inline std::vector<Check> build_checks(const VerificationJob& job) {
  auto shared = std::make_shared<const VerificationJob>(job);
  std::vector<Check> out;
  for (const auto& suite : job.suites) {
    std::vector<Check> part;
    if (suite == "cocycle") part = detail::cocycle_checks(shared);
    else if (suite == "symplectic") part = detail::symplectic_checks(shared);
    else if (suite == "quantum-action") part = detail::quantum_action_checks(shared);
    else if (suite == "comoment") part = detail::comoment_checks(shared);
    else if (suite == "reduction") part = detail::reduction_checks(shared);
    else if (suite == "flatness") part = detail::flatness_checks(shared);
    else throw ValidationError("unknown suite '" + suite + "'");
    for (auto& c : part) out.push_back(std::move(c));
  }
  return out;
}

// Runs checks on up to `jobs` threads; results are ordered by check id.
// Exceptions inside a check become FAIL entries.
inline Report run_checks(const std::vector<Check>& checks, unsigned jobs = 1) {
  Report rep;
  rep.results.resize(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < checks.size();) {
      const Check& c = checks[k];
      CheckResult& r = rep.results[k];
      r.id = c.id;
      r.anchor = c.anchor;
      auto t0 = std::chrono::steady_clock::now();
      try {
        CheckOutcome o = c.run();
        r.status = o.status;
        r.witness = std::move(o.witness);
      } catch (const std::exception& e) {
        r.status = CheckStatus::fail;
        r.witness = std::string("exception: ") + e.what();
      }
      r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(checks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::sort(rep.results.begin(), rep.results.end(),
            [](const CheckResult& x, const CheckResult& y) { return x.id < y.id; });
  return rep;
}

inline Report run_suite(const VerificationJob& job, unsigned jobs = 1) {
  return run_checks(build_checks(job), jobs);
}

}  // namespace quiverweyl
