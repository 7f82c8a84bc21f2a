#include <gtest/gtest.h>

#include <set>

#include "ftinv/fixtures.hpp"
#include "ftinv/spin.hpp"

using namespace ftinv;
namespace fx = ftinv::fixtures;

namespace {

// every subset of the base tested directly
std::set<std::vector<bool>> brute_characteristic(const SurgeryPresentation& M) {
  std::set<std::vector<bool>> out;
  const auto n = M.link.size();
  for (unsigned long m = 0; m < (1ul << n); ++m) {
    auto C = SublinkSelector::from_mask(n, m);
    if (is_characteristic(M, C)) out.insert(C.bits);
  }
  return out;
}

int knot_arf(const FramedLink& K) {
  auto a2 = conway_link(K).coeff(2);
  return static_cast<int>(numerator(a2) % 2 != 0);
}

}  // namespace

TEST(Spin, CharacteristicSublinksMatchBruteForce) {
  std::vector<SurgeryPresentation> cases{
      {fx::unknot(0)},         {fx::unknot(1)},       {fx::unknot(2)},        {fx::hopf(0, 0)},
      {fx::hopf(1, 1)},        {fx::hopf(2, 0)},      {fx::borromean()},      {fx::borromean({1, 1, 1})},
      {fx::e8_chain()},        {fx::slide_pair_L1()},   {fx::borromean_pair()},        {fx::trefoil(1, 3)}};
  for (auto& M : cases) {
    std::set<std::vector<bool>> got;
    for (auto& c : characteristic_sublinks(M)) got.insert(c.bits);
    EXPECT_EQ(got, brute_characteristic(M)) << M.encode();
  }
}

TEST(Spin, CharacteristicCounts) {
  EXPECT_EQ(characteristic_sublinks({fx::unknot(0)}).size(), 2u);  // S1xS2
  EXPECT_EQ(characteristic_sublinks({fx::unknot(2)}).size(), 2u);  // RP3
  EXPECT_EQ(characteristic_sublinks({fx::unknot(3)}).size(), 1u);
  EXPECT_EQ(characteristic_sublinks({fx::borromean()}).size(), 8u);  // T3
  EXPECT_EQ(characteristic_sublinks({fx::e8_chain()}).size(), 1u);
}

TEST(Spin, SurgeryComponentsNeverCharacteristic) {
  SurgeryPresentation M{fx::trefoil(1, 1, Role::surgery)};
  auto C = SublinkSelector::of(1, {0});
  EXPECT_FALSE(is_characteristic(M, C));
  EXPECT_EQ(characteristic_sublinks(M).size(), 1u);
}

TEST(Spin, ArfOfKnotsIsA2) {
  for (auto& K : {fx::unknot(), fx::trefoil(1), fx::trefoil(-1), fx::figure_eight()})
    EXPECT_EQ(arf_proper(K), knot_arf(K));
  EXPECT_EQ(arf_proper(fx::trefoil(1)), 1);
  EXPECT_EQ(arf_proper(fx::figure_eight()), 1);
}

TEST(Spin, ArfAdditiveOnSplitLinks) {
  EXPECT_EQ(arf_proper(disjoint_union(fx::trefoil(1), fx::figure_eight())), 0);
  EXPECT_EQ(arf_proper(disjoint_union(fx::trefoil(1), fx::unknot())), 1);
  EXPECT_EQ(arf_proper(disjoint_union(fx::unknot(), fx::unknot())), 0);
}

TEST(Spin, ArfRejectsOddLinking) { EXPECT_THROW(arf_proper(fx::hopf()), ValidationError); }

TEST(Spin, RochlinAnchors) {
  EXPECT_EQ(rochlin(SpinPresentation{}), 0);
  EXPECT_EQ(rochlin(fx::spin(fx::unknot(1), {0})), 0);
  EXPECT_EQ(rochlin(fx::spin(fx::e8_chain(), {})), 8);
  EXPECT_EQ(rochlin(fx::spin(fx::trefoil(1, 1), {0})), 8);
  EXPECT_EQ(rochlin(fx::spin(fx::unknot(0), {})), 0);
  EXPECT_EQ(rochlin(fx::spin(fx::unknot(0), {0})), 0);
  // RP3 carries the values +1 and -1
  std::set<long> rp3;
  for (auto& c : characteristic_sublinks({fx::unknot(2)})) rp3.insert(rochlin(SpinPresentation{{fx::unknot(2)}, c}));
  EXPECT_EQ(rp3, (std::set<long>{1, 15}));
}

TEST(Spin, EmptyCharacteristicGivesSignature) {
  auto E = fx::e8_chain();
  for (auto& c : E.components) c.framing = -c.framing;
  auto A = integer_linking_matrix(E);
  EXPECT_EQ(rochlin_quadratic_part(fx::spin(E, {})), mod16(BigInt(signature_nullity(A).signature())));
}

TEST(Spin, RochlinAdditive) {
  auto E = fx::spin(fx::e8_chain(), {});
  auto T = fx::spin(fx::trefoil(1, 1), {0});
  auto R = fx::spin(fx::unknot(2), {});
  EXPECT_EQ(rochlin(disjoint_union(E, T)), 0);
  EXPECT_EQ(rochlin(disjoint_union(T, R)), 9);
}

TEST(Spin, SpinBracketTermsAreCharacteristic) {
  auto B = fx::spin(fx::borromean({1, 1, 1}, Role::surgery), {});
  auto L = B.presentation.link.role_selector(Role::surgery);
  auto x = spin_bracket(B, L);
  BigInt mass = 0;
  for (auto& [k, t] : x.terms) {
    EXPECT_NO_THROW(validate_spin(t.value));
    mass += t.coeff < 0 ? BigInt(-t.coeff) : BigInt(t.coeff);
  }
  EXPECT_LE(mass, 8);
  EXPECT_EQ(rochlin(x), 8);
}

TEST(Spin, SpinBracketRejectsInadmissible) {
  auto H = fx::spin(fx::hopf(0, 0), {});
  EXPECT_THROW(spin_bracket(H, SublinkSelector::of(2, {0, 1})), ValidationError);
}

TEST(Spin, JsonRoundTrip) {
  auto S = fx::spin(fx::trefoil(1, 1), {0});
  auto T = spin_from_json(spin_to_json(S));
  EXPECT_EQ(T.encode(), S.encode());
  EXPECT_EQ(rochlin(T), 8);
}

TEST(Spin, JsonValidation) {
  auto j = link_to_json(fx::trefoil(1, 1));
  EXPECT_THROW(spin_from_json(j), ValidationError);  // odd framing needs the knot in C
  j["char"] = {3};
  EXPECT_THROW(spin_from_json(j), ValidationError);
  auto h = link_to_json(fx::unknot(Rational(1, 2)));
  EXPECT_THROW(spin_from_json(h), ValidationError);
}
