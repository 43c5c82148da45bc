#include <gtest/gtest.h>

#include "quiverweyl/reduction.hpp"
#include "support.hpp"

using namespace quiverweyl;

namespace {

Embedding points(std::initializer_list<const char*> xs) {
  std::vector<ProjPoint> p;
  for (auto x : xs) p.push_back(ProjPoint::parse(x));
  return Embedding(p);
}

OrbitSpec orbit(const QuiverData& q, std::map<std::string, Rational> lambda) {
  OrbitSpec o;
  for (const auto& [label, v] : lambda) o.scalars[q.node(label)] = Scalar(v);
  return o;
}

Potential two_cycle(const QuiverData& q) {
  ArrowId a = q.arrow_by_label("x->y");
  return Potential::single(Cycle(q, {a, q.opposite(a)}));
}

// Shift on the one-pair quiver, by hand: modulo ε_α B_αB_α* = λ_y the
// pullback multiplies B_αB_α* by η_xη_y = ε(a)/ε(a.g).
Rational one_pair_shift(const Rational& lambda_y, const Embedding& a, const Embedding& ag) {
  QuiverData q = qwtest::one_pair();
  ArrowId x = q.arrow_by_label("x->y");
  return lambda_y * (epsilon(q, ag, x).inverse() - epsilon(q, a, x).inverse());
}

}  // namespace

TEST(SparseEliminator, SolvesAndExpandsOntoColumns) {
  SparseEliminator<int> e;
  EXPECT_TRUE(e.add_column(10, {{0, Scalar(1)}, {1, Scalar(2)}}));
  EXPECT_TRUE(e.add_column(11, {{1, Scalar(1)}, {2, Scalar(1)}}));
  EXPECT_FALSE(e.add_column(12, {{0, Scalar(1)}, {1, Scalar(3)}, {2, Scalar(1)}}));
  EXPECT_EQ(e.rank(), 2u);
  auto sol = e.solve({{0, Scalar(2)}, {1, Scalar(7)}, {2, Scalar(3)}});
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(sol->at(10), Scalar(2));
  EXPECT_EQ(sol->at(11), Scalar(3));
  EXPECT_FALSE(e.solve({{2, Scalar(1)}, {0, Scalar(1)}}).has_value());
}

TEST(SparseEliminatorProperty, SolutionsRecombine) {
  RandomInputs in(83);
  for (int n = 0; n < 40; ++n) {
    SparseEliminator<int> e;
    std::vector<std::map<int, Scalar>> cols;
    for (int c = 0; c < 8; ++c) {
      std::map<int, Scalar> v;
      for (int k = 0; k < 3; ++k) v[static_cast<int>(in.integer(0, 9))] += Scalar(in.nonzero_rational());
      std::erase_if(v, [](const auto& kv) { return kv.second.is_zero(); });
      cols.push_back(v);
      e.add_column(c, v);
    }
    std::map<int, Scalar> target;
    for (int c = 0; c < 8; ++c) {
      Scalar w(in.rational());
      for (const auto& [k, x] : cols[c]) target[k] += w * x;
    }
    std::erase_if(target, [](const auto& kv) { return kv.second.is_zero(); });
    auto sol = e.solve(target);
    ASSERT_TRUE(sol.has_value());
    std::map<int, Scalar> back;
    for (const auto& [c, w] : *sol)
      for (const auto& [k, x] : cols[c]) back[k] += w * x;
    std::erase_if(back, [](const auto& kv) { return kv.second.is_zero(); });
    EXPECT_EQ(back, target);
  }
}

TEST(IdealGenerators, Examples) {
  WeylContext ctx(qwtest::one_pair(), points({"2", "5"}));
  const QuiverData& q = ctx.quiver();
  ArrowId a = q.arrow_by_label("x->y");
  Word w{Generator(a, 0, 0), Generator(q.opposite(a), 0, 0)};
  auto raw = ideal_generators<PolyElement>(ctx, OrbitSpec{});
  ASSERT_EQ(raw.elements.size(), 2u);
  for (std::size_t s = 0; s < 2; ++s)
    EXPECT_EQ(raw.elements[s], classical_comoment(ctx, raw.labels[s]));

  OrbitSpec o = orbit(q, {{"y", Rational(1)}});
  auto cl = ideal_generators<PolyElement>(ctx, o);
  ASSERT_EQ(cl.labels[1].node, q.node("y"));
  EXPECT_EQ(cl.elements[1], PolyElement::single(w, Scalar(ctx.epsilon(a))) -
                                constant_element<PolyElement>(Scalar(1)));
  auto qu = ideal_generators<WeylElement>(ctx, o);
  EXPECT_EQ(qu.elements[1] - as_weyl(cl.elements[1]),
            constant_element<WeylElement>(Scalar(Rational(-1, 2))));
  auto rees = rees_ideal_generators(ctx, o);
  EXPECT_EQ(rees[1], ReesElement::homogeneous(2, qu.elements[1]));
}

TEST(IdealMembership, GeneratorsAndMultiples) {
  WeylContext ctx(qwtest::star_quiver(2, 2, 1), points({"inf", "1"}));
  const QuiverData& q = ctx.quiver();
  OrbitSpec o = orbit(q, {{"p1", Rational(1)}, {"p2", Rational(1)}, {"c", Rational(-1)}});
  auto gens = ideal_generators<WeylElement>(ctx, o);
  for (std::size_t s = 0; s < gens.elements.size(); ++s) {
    auto cert = ideal_membership(gens.elements[s], ctx, o, 2);
    ASSERT_TRUE(cert.found);
    EXPECT_TRUE(cert.verify(gens.elements[s], gens, ctx));
  }
  std::mt19937_64 rng(89);
  for (int n = 0; n < 10; ++n) {
    WeylElement u = qwtest::random_element<WeylElement>(rng, ctx, 2);
    WeylElement x = weyl_product(u, gens.elements[n % gens.elements.size()], ctx);
    auto cert = ideal_membership(x, ctx, o, 4);
    ASSERT_TRUE(cert.found);
    EXPECT_TRUE(cert.verify(x, gens, ctx));
  }
  auto pg = ideal_generators<PolyElement>(ctx, o);
  PolyElement px = poly_product(qwtest::random_element<PolyElement>(rng, ctx, 2), pg.elements[0]);
  auto pc = ideal_membership(px, ctx, o, 4);
  ASSERT_TRUE(pc.found);
  EXPECT_TRUE(pc.verify(px, pg, ctx));
  EXPECT_THROW(ideal_membership(px, ctx, o, 3), DegreeBoundTooSmall);
}

TEST(IdealMembership, UnitOnOnePair) {
  // μ*_x + μ*_y = 0, so g_x + g_y = −λ_x − λ_y: with λ = (1, 1) the unit
  // lies in the ideal, and only λ_x + λ_y = 0 leaves it out.
  WeylContext ctx(qwtest::one_pair(), points({"2", "5"}));
  const QuiverData& q = ctx.quiver();
  OrbitSpec both = orbit(q, {{"x", Rational(1)}, {"y", Rational(1)}});
  OrbitSpec balanced = orbit(q, {{"x", Rational(-1)}, {"y", Rational(1)}});
  for (auto kind : {0, 1}) {
    if (kind == 0) {
      auto one = constant_element<PolyElement>(Scalar(1));
      auto cert = ideal_membership(one, ctx, both, 4);
      ASSERT_TRUE(cert.found);
      EXPECT_TRUE(cert.verify(one, ideal_generators<PolyElement>(ctx, both), ctx));
      EXPECT_FALSE(ideal_membership(one, ctx, balanced, 4).found);
    } else {
      auto one = constant_element<WeylElement>(Scalar(1));
      auto cert = ideal_membership(one, ctx, both, 4);
      ASSERT_TRUE(cert.found);
      EXPECT_TRUE(cert.verify(one, ideal_generators<WeylElement>(ctx, both), ctx));
      auto none = ideal_membership(one, ctx, balanced, 4);
      EXPECT_FALSE(none.found);
      EXPECT_EQ(none.degree_bound, 4);
    }
  }
}

TEST(IdealMembership, TwoSidedQuantumIdealIsTrivial) {
  // [g_y, B̂_α] = −B̂_α, so the two-sided ideal contains every coordinate
  // and hence 1; the reduction therefore uses the left ideal.
  WeylContext ctx(qwtest::one_pair(), points({"2", "5"}));
  const QuiverData& q = ctx.quiver();
  OrbitSpec balanced = orbit(q, {{"x", Rational(-1)}, {"y", Rational(1)}});
  auto one = constant_element<WeylElement>(Scalar(1));
  MembershipOptions two_sided{IdealSide::two_sided, 1};
  auto cert = ideal_membership(one, ctx, balanced, 4, two_sided);
  ASSERT_TRUE(cert.found);
  EXPECT_TRUE(cert.verify(one, ideal_generators<WeylElement>(ctx, balanced), ctx));
  EXPECT_FALSE(ideal_membership(one, ctx, balanced, 4).found);
}

TEST(IsInvariant, Examples) {
  WeylContext ctx(qwtest::star_quiver(2, 2, 1), points({"inf", "1"}));
  const QuiverData& q = ctx.quiver();
  for (const auto& ic : enumerate_isomonodromy_cycles(q)) {
    AnchoredCycle c(q, ic.cycle.arrows());
    EXPECT_TRUE(is_invariant(quantum_trace(ctx, c), ctx));
    EXPECT_TRUE(is_invariant(classical_trace(q, ic.cycle), ctx));
    EXPECT_TRUE(is_invariant(quantum_trace_hbar(ctx, c), ctx));
  }
  auto B = generator_element<WeylElement>(ctx.generators().front());
  EXPECT_FALSE(is_invariant(B, ctx));
  EXPECT_FALSE(is_invariant(as_poly(B), ctx));
  EXPECT_TRUE(is_invariant(constant_element<WeylElement>(Scalar(1)), ctx));
}

TEST(IsInvariantProperty, CentraliserIsSpannedByTraceProducts) {
  // Kernel of x ↦ ([μ̂*(Λ), x])_Λ on words of order ≤ 4 against the span of
  // 1, traces of closed walks of length ≤ 4 and products of two 2-walk traces.
  std::vector<WeylContext> ctxs;
  ctxs.emplace_back(qwtest::one_pair(1, 2), points({"0", "1"}));
  ctxs.emplace_back(qwtest::star_quiver(2, 2, 1), points({"inf", "1"}));
  for (const auto& ctx : ctxs) {
    const QuiverData& q = ctx.quiver();
    auto words = detail::all_words(ctx.generators(), 4);
    auto basis = lie_basis(q);
    SparseEliminator<std::pair<std::size_t, Word>> image;
    for (std::size_t n = 0; n < words.size(); ++n) {
      std::map<std::pair<std::size_t, Word>, Scalar> v;
      auto w = WeylElement::single(words[n]);
      for (std::size_t l = 0; l < basis.size(); ++l) {
        WeylElement br = commutator(quantum_comoment_local(ctx, basis[l]), w, ctx);
        for (const auto& [word, c] : br.terms()) v[{l, word}] = c;
      }
      image.add_column(n, v);
    }
    std::size_t kernel_dim = words.size() - image.rank();

    std::vector<std::vector<ArrowId>> walks;
    std::vector<WeylElement> two_traces;
    for (ArrowId a = 0; a < q.arrow_count(); ++a) {
      walks.push_back({a, q.opposite(a)});
      for (ArrowId b = 0; b < q.arrow_count(); ++b)
        if (q.source(b) == q.source(a)) walks.push_back({a, q.opposite(a), b, q.opposite(b)});
    }
    SparseEliminator<Word> span;
    std::size_t id = 0;
    span.add_column(id++, constant_element<WeylElement>(Scalar(1)).terms());
    for (const auto& w : walks) {
      WeylElement t = quantum_trace(ctx, w);
      EXPECT_TRUE(is_invariant(t, ctx));
      span.add_column(id++, t.terms());
      if (w.size() == 2) two_traces.push_back(t);
    }
    for (const auto& s : two_traces)
      for (const auto& t : two_traces) span.add_column(id++, weyl_product(s, t, ctx).terms());
    EXPECT_EQ(span.rank(), kernel_dim);
  }
}

TEST(ReducedShift, IdentityAndTrivialDelta) {
  QuiverData q = qwtest::one_pair();
  Embedding a = points({"2", "5"});
  OrbitSpec o = orbit(q, {{"x", Rational(-1)}, {"y", Rational(1)}});
  for (auto kind : {ReductionKind::classical, ReductionKind::quantum, ReductionKind::rees}) {
    ShiftResult r = reduced_shift(q, GroupElement::identity(), a, two_cycle(q), o, kind);
    EXPECT_TRUE(r.found);
    EXPECT_TRUE(r.trivial);
    EXPECT_EQ(r.c, Scalar());
  }
}

TEST(ReducedShift, OnePairMatchesHandComputation) {
  QuiverData q = qwtest::one_pair();
  RandomInputs in(97);
  for (int n = 0; n < 10; ++n) {
    Embedding a = in.embedding(2, n % 2 == 0);
    GroupElement g = in.group_element();
    Rational lambda = in.nonzero_rational();
    OrbitSpec o = orbit(q, {{"x", -lambda}, {"y", lambda}});
    Rational want = one_pair_shift(lambda, a, act_on_embedding(g, a));
    for (auto kind : {ReductionKind::classical, ReductionKind::quantum, ReductionKind::rees}) {
      ShiftResult r = reduced_shift(q, g, a, two_cycle(q), o, kind);
      ASSERT_TRUE(r.found) << to_string(kind) << " " << r.witness;
      EXPECT_TRUE(r.certificate_verified);
      EXPECT_EQ(r.c, Scalar(want)) << to_string(kind);
    }
  }
}

TEST(ReducedShiftProperty, Composition) {
  QuiverData q = qwtest::one_pair();
  RandomInputs in(101);
  Potential w = two_cycle(q);
  for (int n = 0; n < 10; ++n) {
    Embedding a = in.embedding(2, n % 2 == 1);
    GroupElement g = in.group_element(), h = in.group_element();
    OrbitSpec o = orbit(q, {{"x", Rational(-3)}, {"y", Rational(3)}});
    for (auto kind : {ReductionKind::classical, ReductionKind::quantum}) {
      ShiftResult gh = reduced_shift(q, g * h, a, w, o, kind);
      ShiftResult cg = reduced_shift(q, g, a, w, o, kind);
      ShiftResult ch = reduced_shift(q, h, act_on_embedding(g, a), w, o, kind);
      ASSERT_TRUE(gh.found && cg.found && ch.found);
      EXPECT_EQ(gh.c, cg.c + ch.c);
    }
  }
}

TEST(ReducedShift, ForcedSolveOnZeroShift) {
  QuiverData q = qwtest::one_pair();
  OrbitSpec o = orbit(q, {{"x", Rational(-1)}, {"y", Rational(1)}});
  ShiftOptions opts;
  opts.force_solve = true;
  ShiftResult r = reduced_shift(q, GroupElement::identity(), points({"0", "1"}), two_cycle(q), o,
                                ReductionKind::quantum, opts);
  EXPECT_TRUE(r.found);
  EXPECT_FALSE(r.trivial);
  EXPECT_TRUE(r.certificate_verified);
  EXPECT_EQ(r.degree_bound, 2);
}
