#include <gtest/gtest.h>

#include "ftinv/fixtures.hpp"

using namespace ftinv;
namespace fx = ftinv::fixtures;

TEST(Manifold, FirstHomology) {
  for (long q : {2L, 3L, 5L}) {
    auto h = h1_invariants(fx::lens(q));
    EXPECT_EQ(h.b1, 0);
    ASSERT_EQ(h.torsion.size(), 1u);
    EXPECT_EQ(h.torsion[0], q);
  }
  EXPECT_EQ(h1_invariants({fx::borromean()}).b1, 3);
  EXPECT_EQ(h1_invariants(s3()).b1, 0);
  auto hopf = h1_invariants({fx::hopf(2, 2)});
  EXPECT_EQ(hopf.order, 3);
}

TEST(Manifold, BracketExpansion) {
  SurgeryPresentation M{fx::borromean_pair()};
  auto x = bracket(M, M.link.role_selector(Role::surgery));
  EXPECT_EQ(x.size(), 4u);
  BigInt total = 0;
  for (auto& [k, t] : x.terms) total += t.coeff;
  EXPECT_EQ(total, 0);
  EXPECT_THROW(bracket(M, SublinkSelector(3, true)), ValidationError);
  // unselected surgery-role components are dropped
  FormalSum<SurgeryPresentation> base;
  base.add(restrict_promote(M, M.base(), SublinkSelector(3)), 1);
  EXPECT_EQ(bracket(M, SublinkSelector(3)), base);
}

TEST(Manifold, LemmaOnePointFour) {
  SurgeryPresentation M{special_link(1, 3, {{1, 2, 4, 1}, {2, 3, 4, -1}})};
  auto K = SublinkSelector::of(4, {2}), L = SublinkSelector::of(4, {0, 1});
  EXPECT_EQ(bracket(M, L | K), bracket(M, L) - bracket(promote(M, K), L));
  EXPECT_EQ(bracket(promote(M, K), L), bracket_delta(M, L, K));
}

TEST(Manifold, BracketTermsShareHomology) {
  SurgeryPresentation M{special_link(2, 2, {{1, 2, 3, 1}, {1, 2, 4, 1}})};
  M.link.components[2].framing = 4;
  auto h = h1_invariants(M);
  for (auto& [k, t] : bracket(M, M.link.role_selector(Role::surgery)).terms) {
    auto g = h1_invariants(t.value);
    EXPECT_EQ(g.b1, h.b1);
    EXPECT_EQ(g.torsion, h.torsion);
  }
}

TEST(Manifold, ConnectedSumAddsBetti) {
  auto A = SurgeryPresentation{fx::borromean()}, B = fx::lens(3);
  EXPECT_EQ(h1_invariants(connected_sum(A, B)).b1, 3);
  EXPECT_EQ(h1_invariants(connected_sum(A, A)).b1, 6);
}

TEST(Manifold, LemmaTenPointThree) {
  auto L = special_link(1, 2, {{1, 2, 3, 1}});
  L.components[2].framing = 1;
  auto [lhs, rhs] = split_surgery_expand(L, SublinkSelector::of(3, {2}), SublinkSelector::of(3, {0, 1}));
  EXPECT_EQ(lhs, rhs);
  auto [l0, r0] = split_surgery_expand(L, SublinkSelector(3), SublinkSelector::of(3, {0, 1}));
  EXPECT_EQ(l0, r0);
  BigInt mass = 0;
  for (auto& [k, t] : l0.terms) mass += abs(t.coeff);
  EXPECT_EQ(mass, 4);
  EXPECT_THROW(split_surgery_expand(fx::hopf(1, 1), SublinkSelector::of(2, {0}), SublinkSelector::of(2, {1})),
               ValidationError);
}

TEST(Manifold, ProductFormula) {
  auto M = seifert_manifold(lambda_2n_seifert(2));
  SublinkSelector all(4, true);
  Invariant<SeifertManifold, Rational> C2{"C2", [](const SeifertManifold& m) { return c2n(m, 1); }, 2};
  auto C22 = product_invariant(C2, C2);
  EXPECT_EQ(C22.claimed_degree, 4);
  EXPECT_EQ(evaluate(C22, bracket(M, all)), product_formula_rhs(C2, C2, M, all));
  EXPECT_EQ(evaluate(C22, bracket(M, all)), 2);
}

TEST(Manifold, EvaluateReportsFailingTerm) {
  Invariant<SeifertManifold, Rational> bad{"bad", [](const SeifertManifold&) -> Rational {
                                             throw ValidationError("boom");
                                           },
                                           std::nullopt};
  auto M = seifert_manifold(lambda_2n_seifert(1));
  EXPECT_THROW(evaluate(bad, bracket(M, SublinkSelector(2, true))), std::runtime_error);
  EXPECT_EQ(evaluate(bad, FormalSum<SeifertManifold>{}), 0);
}

TEST(Manifold, Lescop) {
  EXPECT_EQ(lescop_b1_1(SurgeryPresentation{fx::unknot(0)}), Rational(-1, 12));
  EXPECT_EQ(lescop_b1_1(SurgeryPresentation{fx::trefoil(1, 0)}), Rational(11, 12));
  EXPECT_THROW(lescop_b1_1(fx::lens(2)), ValidationError);
}
