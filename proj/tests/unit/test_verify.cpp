#include <gtest/gtest.h>

#include "ftinv/verify.hpp"

using namespace ftinv;
namespace fx = ftinv::fixtures;

namespace {

FixtureSet corpus() { return FixtureSet(fixture_root(FTINV_FIXTURES)); }

}  // namespace

TEST(Fixtures, DiskMatchesBuilders) {
  auto F = corpus();
  EXPECT_EQ(F.link("trefoil_R").encode(), fx::trefoil(1, 0).encode());
  EXPECT_EQ(F.link("poincare").encode(), fx::trefoil(1, 1).encode());
  EXPECT_EQ(F.link("slide_pair_L2").encode(), fx::slide_pair_L2().encode());
  EXPECT_EQ(F.link("e8_chain").encode(), fx::e8_chain().encode());
  EXPECT_EQ(F.spin("trefoil_spin").encode(), fx::spin(fx::trefoil(1, 1), {0}).encode());
  EXPECT_EQ(seifert_to_json(F.seifert("seifert_circular_4")), seifert_to_json(fx::circular_seifert()));
  for (auto& c : fx::bracket_cases()) EXPECT_EQ(F.link("bracket_" + c.name).encode(), c.M.link.encode()) << c.name;
}

TEST(Fixtures, MissingFixtureIsReported) {
  EXPECT_THROW(corpus().link("no_such_fixture"), FixtureError);
  EXPECT_THROW(FixtureSet("/nonexistent").link("s3"), FixtureError);
}

TEST(Fixtures, ExplicitRootWins) {
  EXPECT_EQ(fixture_root("/x").string(), "/x");
}

TEST(Verify, SuitesAreDeterministic) {
  auto F = corpus();
  auto a = run_suite("lemma10-3", 11, F).to_json(), b = run_suite("lemma10-3", 11, F).to_json();
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["seed"], 11);
}

TEST(Verify, FixtureSuitesPass) {
  auto F = corpus();
  for (auto s : {"spin", "quantum-anchors", "lemma10-3"}) {
    auto r = run_suite(s, kDefaultSeed, F);
    for (auto& a : r.items) EXPECT_TRUE(a.pass) << s << ": " << a.name << " " << a.detail;
  }
}

TEST(Verify, UnknownSuite) { EXPECT_THROW(run_suite("nope", 1, corpus()), ValidationError); }

TEST(Verify, ReportJsonShape) {
  SuiteReport r{"x", 3, {}};
  r.check("a", true);
  r.check("b", false, "why");
  auto j = r.to_json();
  EXPECT_FALSE(j["pass"]);
  EXPECT_EQ(j["assertions"].size(), 2u);
  EXPECT_EQ(j["assertions"][1]["detail"], "why");
  EXPECT_FALSE(j.contains("seconds"));
}
