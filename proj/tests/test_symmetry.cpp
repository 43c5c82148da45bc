#include <gtest/gtest.h>

#include "quiverweyl/symmetry.hpp"
#include "support.hpp"

using namespace quiverweyl;
using qwtest::random_element;
using qwtest::random_rees;

namespace {

QuiverData triangle() {
  return build_k_partite({{"a"}, {"b"}, {"c"}}, {{"a", 2}, {"b", 1}, {"c", 2}});
}

struct Instance {
  GroupElement g;
  Embedding a, ag;
};

Instance random_instance(RandomInputs& in, std::size_t parts, int n) {
  Embedding a = in.embedding(parts, n % 2 == 0);
  GroupElement g = n % 5 == 0 ? in.group_element_for(EtaCase::generic_to_degenerate, a)
                              : in.group_element();
  if (n % 5 == 0 && a.infinite_part()) g = in.group_element_for(EtaCase::degenerate_swap, a);
  return {g, a, act_on_embedding(g, a)};
}

}  // namespace

TEST(ClassicalPullback, Examples) {
  QuiverData q = triangle();
  Embedding a(std::vector<ProjPoint>{ProjPoint::infinity(), ProjPoint::finite(1),
                                     ProjPoint::finite(-2)});
  WeylContext ctx(q, a);
  std::mt19937_64 rng(3);
  PolyElement f = random_element<PolyElement>(rng, ctx, 3);
  EXPECT_EQ(classical_pullback(q, GroupElement::identity(), a, f), f);

  GroupElement diag(2, 0, 0, Rational(1, 2));
  // η_∞ = 2 and η = 1/2 elsewhere; B_{b→a} lands in the ∞ node.
  Generator x(q.arrow_by_label("b->a"), 1, 0), y(q.arrow_by_label("a->c"), 0, 1);
  Generator z(q.arrow_by_label("c->b"), 0, 1);
  PolyElement m = PolyElement::single(Word{x, y, z}, Scalar(5));
  EXPECT_EQ(classical_pullback(q, diag, a, m),
            PolyElement::single(Word{x, y, z}, Scalar(Rational(5, 2))));
  ReesElement r = random_rees(rng, ctx, 3);
  EXPECT_EQ(quantum_pullback(q, GroupElement::identity(), a, r), r);
}

TEST(ClassicalPullbackProperty, Composition) {
  QuiverData q = triangle();
  RandomInputs in(53);
  for (int n = 0; n < 100; ++n) {
    auto [g, a, ag] = random_instance(in, 3, n);
    GroupElement h = in.group_element();
    WeylContext ctx(q, a);
    PolyElement f = random_element<PolyElement>(in.engine(), ctx, 3);
    EXPECT_EQ(classical_pullback(q, g * h, a, f),
              classical_pullback(q, g, a, classical_pullback(q, h, ag, f)));
    ReesElement x = random_rees(in.engine(), ctx, 3);
    EXPECT_EQ(quantum_pullback(q, g * h, a, x),
              quantum_pullback(q, g, a, quantum_pullback(q, h, ag, x)));
  }
}

TEST(ClassicalPullbackProperty, Symplectic) {
  QuiverData q = triangle();
  RandomInputs in(59);
  for (int n = 0; n < 100; ++n) {
    auto [g, a, ag] = random_instance(in, 3, n);
    WeylContext ca(q, a), cag(q, ag);
    PolyElement f = random_element<PolyElement>(in.engine(), ca, 2);
    PolyElement h = random_element<PolyElement>(in.engine(), ca, 2);
    EXPECT_EQ(poisson_bracket(classical_pullback(q, g, a, f), classical_pullback(q, g, a, h), ca),
              classical_pullback(q, g, a, poisson_bracket(f, h, cag)));
  }
}

TEST(QuantumPullbackProperty, MorphismOnGenerators) {
  QuiverData q = triangle();
  RandomInputs in(61);
  for (int n = 0; n < 50; ++n) {
    auto [g, a, ag] = random_instance(in, 3, n);
    WeylContext ca(q, a), cag(q, ag);
    for (Generator x : ca.generators())
      for (Generator y : ca.generators()) {
        auto X = generator_element<WeylElement>(x), Y = generator_element<WeylElement>(y);
        EXPECT_EQ(quantum_pullback(q, g, a, weyl_product(X, Y, cag)),
                  weyl_product(quantum_pullback(q, g, a, X), quantum_pullback(q, g, a, Y), ca));
      }
  }
}

TEST(QuantumPullbackProperty, MorphismAndIntertwiningOnRees) {
  QuiverData q = triangle();
  RandomInputs in(67);
  for (int n = 0; n < 50; ++n) {
    auto [g, a, ag] = random_instance(in, 3, n);
    WeylContext ca(q, a), cag(q, ag);
    ReesElement x = random_rees(in.engine(), ca, 3), y = random_rees(in.engine(), ca, 3);
    EXPECT_EQ(quantum_pullback(q, g, a, rees_product(x, y, cag)),
              rees_product(quantum_pullback(q, g, a, x), quantum_pullback(q, g, a, y), ca));
    EXPECT_EQ(semiclassical_limit(quantum_pullback(q, g, a, x)),
              classical_pullback(q, g, a, semiclassical_limit(x)));
  }
}

TEST(QuantumPullbackProperty, QuantisationCommutesWithAction) {
  std::vector<QuiverData> quivers{triangle(), qwtest::star_quiver(3, 2, 1),
                                  build_k_partite({{"a", "c"}, {"b", "d"}},
                                                  {{"a", 1}, {"b", 2}, {"c", 1}, {"d", 1}})};
  RandomInputs in(71);
  for (int n = 0; n < 30; ++n)
    for (const auto& q : quivers) {
      auto [g, a, ag] = random_instance(in, q.part_count(), n);
      WeylContext ca(q, a), cag(q, ag);
      for (const auto& ic : enumerate_isomonodromy_cycles(q)) {
        Potential p = Potential::single(ic.cycle);
        ReesElement lhs = quantum_pullback(q, g, a, quantum_trace_hbar(cag, quantize_potential(q, p)));
        ReesElement rhs = quantum_trace_hbar(ca, quantize_potential(q, classical_pullback(q, g, a, p)));
        EXPECT_EQ(lhs, rhs) << to_string(ic.kind);
      }
    }
}

TEST(QuantumPullback, FlippedEpsilonBreaksAntisymmetry) {
  // A flipped weight enters both a and a.g alike, so the morphism identity
  // survives; the bracket loses antisymmetry instead.
  QuiverData q = qwtest::one_pair();
  Embedding a(std::vector<ProjPoint>{ProjPoint::finite(0), ProjPoint::finite(1)});
  ScopedFault fault(FaultPlan{ArrowId{0}, std::nullopt});
  WeylContext ctx(q, a);
  auto X = generator_element<PolyElement>(Generator(0, 0, 0));
  auto Y = generator_element<PolyElement>(Generator(q.opposite(0), 0, 0));
  EXPECT_NE(poisson_bracket(X, Y, ctx), -poisson_bracket(Y, X, ctx));
  EXPECT_NE(ctx.epsilon(0) + ctx.epsilon(q.opposite(0)), Rational(0));
}
