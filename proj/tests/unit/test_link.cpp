#include <gtest/gtest.h>

#include <random>

#include "ftinv/fixtures.hpp"

using namespace ftinv;
namespace fx = ftinv::fixtures;

namespace {

// relabel arcs, rotate base points and shuffle component order
FramedLink scramble(const FramedLink& L, std::mt19937& rng) {
  std::vector<int> arcs;
  for (auto& c : L.components) arcs.insert(arcs.end(), c.arcs.begin(), c.arcs.end());
  std::vector<int> img(arcs.size());
  std::iota(img.begin(), img.end(), 100);
  std::shuffle(img.begin(), img.end(), rng);
  std::map<int, int> f;
  for (std::size_t i = 0; i < arcs.size(); ++i) f[arcs[i]] = img[i];
  FramedLink out;
  for (auto x : L.crossings) {
    for (auto& a : x.arcs) a = f.at(a);
    out.crossings.push_back(x);
  }
  std::shuffle(out.crossings.begin(), out.crossings.end(), rng);
  for (auto c : L.components) {
    for (auto& a : c.arcs) a = f.at(a);
    if (!c.arcs.empty()) std::rotate(c.arcs.begin(), c.arcs.begin() + rng() % c.arcs.size(), c.arcs.end());
    out.components.push_back(c);
  }
  std::shuffle(out.components.begin(), out.components.end(), rng);
  return out;
}

}  // namespace

TEST(Link, LinkingMatrices) {
  auto H = fx::hopf(3, -1);
  auto m = linking_matrix(H);
  EXPECT_EQ(m[0][1], 1);
  EXPECT_EQ(m[0][0], 3);
  EXPECT_EQ(m[1][1], -1);
  auto B = fx::borromean({1, 2, 3});
  auto b = linking_matrix(B);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(b[i][j], i == j ? i + 1 : 0);
  auto neg = braid_closure({2, {-1, -1, -1, -1}});
  EXPECT_EQ(linking_matrix(neg)[0][1], -2);
}

TEST(Link, EncodingIsCanonical) {
  std::mt19937 rng(4);
  for (auto& L : {fx::trefoil(1), fx::borromean({1, 0, -1}), fx::borromean_pair(), fx::hopf(1, 2), fx::e8_chain()}) {
    for (int t = 0; t < 20; ++t) EXPECT_EQ(scramble(L, rng).encode(), L.encode());
  }
  EXPECT_NE(fx::trefoil(1).encode(), fx::trefoil(-1).encode());
  EXPECT_NE(fx::trefoil(1, 0).encode(), fx::trefoil(1, 1).encode());
}

TEST(Link, JsonRoundTrip) {
  for (auto& L : {fx::borromean_pair(), fx::figure_eight(1), fx::slide_pair_L2(), FramedLink{}}) {
    auto j = link_to_json(L);
    auto L2 = link_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(L2.encode(), L.encode());
  }
  auto j = link_to_json(fx::trefoil(1, Rational(1, 2)));
  EXPECT_EQ(j["components"][0]["framing"], "1/2");
}

TEST(Link, MalformedInputRejected) {
  auto j = link_to_json(fx::trefoil(1));
  j["crossings"][0][0] = 999;
  EXPECT_THROW(link_from_json(j), ValidationError);
  auto k = link_to_json(fx::trefoil(1));
  k["components"][0]["role"] = "weird";
  EXPECT_ANY_THROW(link_from_json(k));
}

TEST(Link, SublinksAndAdmissibility) {
  auto L = fx::borromean_pair();
  ASSERT_EQ(L.size(), 3u);
  EXPECT_EQ(L.components[0].framing, 1);
  EXPECT_EQ(L.components[1].framing, 1);
  EXPECT_EQ(L.components[2].framing, 0);
  auto S = L.role_selector(Role::surgery);
  EXPECT_TRUE(is_admissible(S, L));
  EXPECT_FALSE(is_admissible(SublinkSelector(3, true), L));
  EXPECT_FALSE(is_admissible(SublinkSelector::of(2, {0}), fx::hopf(1, 1)));
  auto two = sublink(fx::borromean(), SublinkSelector::of(3, {0, 1}));
  EXPECT_EQ(two.size(), 2u);
  EXPECT_EQ(linking_matrix(two)[0][1], 0);
}

TEST(Link, SpecialLinkValidation) {
  EXPECT_THROW(special_link(0, 3, {{2, 1, 3, 1}}), ValidationError);
  EXPECT_THROW(special_link(0, 3, {{1, 2, 3, 2}}), ValidationError);
  EXPECT_THROW(special_link(0, 4, {{1, 2, 3, 1}, {1, 2, 4, 1}, {1, 3, 4, 1}}), ValidationError);
  auto L = special_link(1, 4, {{1, 2, 5, 1}, {3, 4, 5, -1}});
  auto m = linking_matrix(L);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) EXPECT_EQ(m[i][j], 0);
}

TEST(Link, DeltaIsAnInvolution) {
  for (auto& L : {fx::trefoil(1), fx::borromean(), fx::borromean_pair()}) {
    FormalSum<FramedLink> one;
    one.add(L, 1);
    EXPECT_EQ(delta(delta(L)), one);
    BigInt mass = 0;
    for (auto& [k, t] : delta(L).terms) mass += abs(t.coeff);
    EXPECT_EQ(mass, BigInt(1) << L.size());
  }
}

TEST(Link, CableCopiesArePushoffs) {
  auto C = cable(fx::hopf(2, -1), {2, 1});
  ASSERT_EQ(C.size(), 3u);
  auto m = linking_matrix(C);
  // copies of a framed component link each other by its framing
  std::vector<std::size_t> first, second;
  for (std::size_t i = 0; i < 3; ++i) (m[i][i] == 2 ? first : second).push_back(i);
  ASSERT_EQ(first.size(), 2u);
  EXPECT_EQ(m[first[0]][first[1]], 2);
  EXPECT_EQ(m[first[0]][second[0]], 1);
  EXPECT_EQ(m[first[1]][second[0]], 1);
}

TEST(Link, BraidCyclesAndDeletion) {
  Braid b{3, {1, 2}};
  auto c = braid_cycles(b);
  EXPECT_EQ(std::set<int>(c.begin(), c.end()).size(), 1u);
  Braid p{3, {1, 1, -2, -2}};
  auto cp = braid_cycles(p);
  EXPECT_EQ(std::set<int>(cp.begin(), cp.end()).size(), 3u);
  auto d = braid_delete(p, {true, false, true});
  EXPECT_EQ(d.strands, 2);
  EXPECT_TRUE(d.word.empty());
}
