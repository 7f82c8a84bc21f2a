#include <gtest/gtest.h>

#include <random>

#include "ftinv/fixtures.hpp"

using namespace ftinv;
namespace fx = ftinv::fixtures;

namespace {
ZPoly poly(std::initializer_list<std::pair<int, long>> t) {
  ZPoly p;
  for (auto [e, c] : t) p += ZPoly::monomial(e, c);
  return p;
}
}  // namespace

TEST(Conway, KnotAnchors) {
  EXPECT_EQ(conway_link(fx::unknot()), ZPoly(1));
  EXPECT_EQ(conway_link(fx::trefoil(1)).str(), "1+z^2");
  EXPECT_EQ(conway_link(fx::trefoil(-1)).str(), "1+z^2");
  EXPECT_EQ(conway_link(fx::figure_eight()), poly({{0, 1}, {2, -1}}));
  EXPECT_EQ(conway_link(fx::hopf()), ZPoly::monomial(1));
  EXPECT_EQ(conway_link(braid_closure({2, {-1, -1}})), ZPoly::monomial(1, -1));
  EXPECT_TRUE(conway_link(braid_closure({2, {}})).is_zero());
}

TEST(Conway, ConnectedSumsOfTrefoils) {
  for (int j = 1; j <= 4; ++j) {
    Braid b{j + 1, {}};
    for (int k = 1; k <= j; ++k)
      for (int r = 0; r < 3; ++r) b.word.push_back(k);
    ZPoly w = ZPoly(1) + ZPoly::monomial(2);
    EXPECT_EQ(conway_link(braid_closure(b)), w.pow(j)) << j;
    EXPECT_EQ(seifert_conway(trefoil_power_seifert(j), {}), w.pow(j));
  }
}

TEST(Conway, LinkDivisibility) {
  for (auto& L : {fx::borromean(), fx::borromean_pair(), fx::lambda_2n_link(2)}) {
    auto c = conway_link(L);
    EXPECT_TRUE(c.divisible_by_power(static_cast<int>(L.size()) - 1));
  }
  EXPECT_EQ(conway_link(fx::borromean()), ZPoly::monomial(4));
}

TEST(Conway, SeifertAgreesWithDiagram) {
  SeifertPresentation T{IntMatrix{{-1, 1}, {0, -1}}, {}};
  SeifertPresentation E{IntMatrix{{1, 1}, {0, -1}}, {}};
  EXPECT_EQ(seifert_conway(T, {}), conway_link(fx::trefoil(1)));
  EXPECT_EQ(seifert_conway(E, {}), conway_link(fx::figure_eight()));
}

TEST(Conway, ExampleSurgeries) {
  auto P = fx::one_pair();
  EXPECT_EQ(seifert_conway(P, SublinkSelector(2)), ZPoly(1));
  EXPECT_EQ(seifert_conway(P, SublinkSelector(2, true)).str(), "1+z^2");
  EXPECT_EQ(conway_alternating(P), ZPoly::monomial(2));
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(conway_alternating(lambda_2n_seifert(n)), ZPoly::monomial(2 * n));
}

TEST(Conway, CoefficientExtraction) {
  auto M = seifert_manifold(lambda_2n_seifert(2));
  auto x = bracket(M, SublinkSelector(4, true));
  for (int k = 0; k <= 3; ++k) {
    Invariant<SeifertManifold, Rational> C{"C", [k](const SeifertManifold& m) { return c2n(m, k); }, 2 * k};
    EXPECT_EQ(evaluate(C, x), k == 2 ? 1 : 0);
  }
  EXPECT_EQ(c2n_diagram(fx::trefoil(1, 0), 1), 1);
  EXPECT_THROW(c2n_diagram(fx::trefoil(1, 1), 1), ValidationError);
  EXPECT_THROW(c2n_diagram(fx::trefoil(1, 0), -1), ValidationError);
}

TEST(Conway, TruncatedSeifertInput) {
  nlohmann::json j{{"V", {{0, 1}, {1, 0}}}};
  EXPECT_THROW(seifert_from_json(j), ValidationError);
  nlohmann::json k{{"V", {{0, 1}, {0, 0}}}, {"surgeries", {{{"eps", 2}, {"lambda", {1, 0}}}}}};
  EXPECT_THROW(seifert_from_json(k), ValidationError);
}

TEST(Conway, BasisChangeInvariance) {
  std::mt19937 rng(9);
  SeifertPresentation P = trefoil_power_seifert(2);
  for (int t = 0; t < 10; ++t) {
    IntMatrix U = IntMatrix::identity(4);
    U(rng() % 4, rng() % 4) += 1;
    if (abs(determinant(U)) != 1) continue;
    SeifertPresentation Q{U * P.V * U.transpose(), {}};
    EXPECT_EQ(seifert_conway(Q, {}), seifert_conway(P, {}));
  }
}
