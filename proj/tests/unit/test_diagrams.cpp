#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ftinv/diagrams.hpp"

using namespace ftinv;

namespace {

// same abstract graph under fresh edge, vertex and end labels, cyclic orders rotated
AdmissibleGraph scramble(const AdmissibleGraph& g, std::mt19937& rng) {
  const int ne = static_cast<int>(g.edges.size()), nv = g.trivalent();
  std::vector<int> ep(ne), vp(nv);
  std::iota(ep.begin(), ep.end(), 0);
  std::iota(vp.begin(), vp.end(), 0);
  std::shuffle(ep.begin(), ep.end(), rng);
  std::shuffle(vp.begin(), vp.end(), rng);
  std::vector<int> swap_end(ne);
  for (auto& s : swap_end) s = static_cast<int>(rng() % 2);
  auto half = [&](int h) { return 2 * ep[h / 2] + (h % 2 ^ swap_end[h / 2]); };
  AdmissibleGraph r;
  r.colors = g.colors;
  r.edges.resize(ne);
  r.rot.resize(nv);
  for (int e = 0; e < ne; ++e) {
    GraphEdge E = g.edges[e];
    if (swap_end[e]) std::swap(E.end[0], E.end[1]);
    for (int& x : E.end) x = x >= 0 ? vp[x] : -1;
    r.edges[ep[e]] = E;
  }
  for (int v = 0; v < nv; ++v) {
    auto a = g.rot[v];
    std::rotate(a.begin(), a.begin() + rng() % 3, a.end());
    for (int& h : a) h = half(h);
    r.rot[vp[v]] = a;
  }
  return r;
}

}  // namespace

TEST(Diagrams, CanonicalFormSurvivesRelabeling) {
  std::mt19937 rng(7);
  std::vector<AdmissibleGraph> pool;
  for (int l = 0; l <= 4; ++l)
    for (auto& g : enumerate_graphs(2, l)) pool.push_back(g);
  pool.push_back(graph_C());
  for (int trial = 0; trial < 500; ++trial) {
    const auto& g = pool[rng() % pool.size()];
    auto h = scramble(g, rng);
    h.validate();
    ASSERT_EQ(h.encode(), g.encode()) << "trial " << trial;
  }
}

TEST(Diagrams, FlippingTwiceRestoresOrientation) {
  for (auto& g : enumerate_graphs(1, 4))
    for (int v = 0; v < g.trivalent(); ++v) EXPECT_EQ(flip_vertex(flip_vertex(g, v), v).encode(), g.encode());
}

TEST(Diagrams, EnumerationHasNoDuplicates) {
  for (int l = 0; l <= 4; ++l) {
    auto G = enumerate_graphs(2, l);
    std::set<std::string> keys;
    for (auto& g : G) {
      g.validate();
      EXPECT_EQ(g.degree(), l);
      keys.insert(g.encode());
    }
    EXPECT_EQ(keys.size(), G.size());
  }
}

TEST(Diagrams, ClosedVertexCount) {
  for (int m = 1; m <= 2; ++m)
    for (int l = 0; l <= (m == 1 ? 5 : 4); ++l)
      for (auto& g : enumerate_graphs(m, l, true)) {
        int c = 0;
        for (int j = 1; j <= m; ++j) c += g.colored_count(j);
        EXPECT_EQ(3 * g.trivalent() - c, 2 * l) << g.encode();
        // one colour per vertex at most when m = 1
        if (m == 1) EXPECT_LE(g.trivalent(), l);
        EXPECT_GE(3 * g.trivalent(), 2 * l);
      }
}

TEST(Diagrams, NamedGenerators) {
  auto G0 = enumerate_graphs(1, 0, true);
  ASSERT_EQ(G0.size(), 1u);
  EXPECT_EQ(G0[0].encode(), graph_S().encode());
  auto G2 = enumerate_graphs(1, 2, true);
  EXPECT_TRUE(std::any_of(G2.begin(), G2.end(), [](auto& g) { return g.encode() == graph_W().encode(); }));
}

TEST(Diagrams, DeframeWithoutVerticesIsIdentity) {
  auto d = deframe(graph_S(2));
  ASSERT_EQ(d.terms.size(), 1u);
  EXPECT_EQ(d.terms.begin()->second.coeff, 1);
  EXPECT_EQ(d.terms.begin()->second.value.encode(), graph_S(2).encode());
}

TEST(Diagrams, DeframeOfY) {
  // one trivalent vertex with white legs: Y minus three free white edges
  GraphBuilder b(1);
  int v = b.vertex();
  b.edge(v, -1, 0);
  b.edge(v, -1, 0);
  b.edge(v, -1, 1);
  auto Y = b.build();
  auto d = deframe(Y);
  ASSERT_EQ(d.terms.size(), 2u);
  for (auto& [k, t] : d.terms) EXPECT_EQ(t.coeff, t.value.trivalent() ? 1 : -1);
}

TEST(Diagrams, InverseDeframeIsTwoSided) {
  for (int m = 1; m <= 2; ++m)
    for (int l = 0; l <= 3; ++l)
      for (auto& g : enumerate_graphs(m, l)) {
        FormalSum<AdmissibleGraph> one;
        one.add(g, 1);
        EXPECT_TRUE(deframe(deframe_inverse(g)) == one) << g.encode();
        EXPECT_TRUE(deframe(deframe(g), +1) == one) << g.encode();
      }
}

TEST(Diagrams, ClosedRelationsHaveNoIOrY) {
  for (int l = 0; l <= 4; ++l) {
    GraphQuotient Q(1, l, true);
    EXPECT_TRUE(Q.relations().I.empty());
    EXPECT_TRUE(Q.relations().Y.empty());
  }
}

TEST(Diagrams, RelationsAreDegreeHomogeneous) {
  for (int l = 1; l <= 3; ++l) {
    auto R = build_relations(2, l);
    for (auto* r : R.all())
      for (auto& [k, t] : r->terms) EXPECT_EQ(t.value.degree(), l);
  }
}

TEST(Diagrams, ClosedTableM1) {
  const long ranks[] = {1, 0, 1, 1, 2, 1};
  for (int l = 0; l <= 5; ++l) EXPECT_EQ(quotient_structure(1, l, true).rank, ranks[l]) << "l=" << l;
}

TEST(Diagrams, OddVertexCountIsTwoTorsion) {
  for (int m = 1; m <= 2; ++m)
    for (int l = 0; l <= (m == 1 ? 5 : 3); ++l) {
      GraphQuotient Q(m, l, true);
      for (auto& g : Q.basis()) {
        bool odd = g.trivalent() % 2;
        for (int j = 1; j <= m; ++j) odd = odd || g.colored_count(j) % 2;
        if (odd) EXPECT_TRUE(Q.vanishes(Q.unit(g, 2))) << "m=" << m << " l=" << l << " " << g.encode();
      }
    }
}

TEST(Diagrams, PowerOfTwoLandsInClosedPart) {
  for (int l = 0; l <= 3; ++l) {
    GraphQuotient Q(1, l, false);
    Lattice span = Q.relation_lattice();
    for (auto& g : Q.basis())
      if (g.closed()) span.add(Q.unit(g));
    for (auto& g : Q.basis()) EXPECT_TRUE(span.contains(Q.unit(g, 1L << l))) << g.encode();
  }
}

TEST(Diagrams, GeneratorsAtDegreeFour) {
  GraphQuotient Q(1, 4, true);
  auto W = theta_graph(1, 1);
  auto WW = complete_colors(disjoint_union(W, W));
  EXPECT_EQ(Q.image_rank({Q.unit(graph_C()), Q.unit(WW)}), 2u);
}

TEST(Diagrams, ThetaUnionsIndependent) {
  EXPECT_TRUE(theta_union_independence(1, 1));
  EXPECT_TRUE(theta_union_independence(1, 3));
  EXPECT_TRUE(theta_union_independence(1, 5));
  GraphQuotient Q(1, 5, true);
  auto WT = complete_colors(disjoint_union(theta_graph(1, 1), theta_graph(1)));
  EXPECT_EQ(Q.image_rank({Q.unit(WT)}), 1u);
}

TEST(Diagrams, EvenOddClassesDoNotMix) {
  for (int l = 0; l <= 5; ++l) {
    GraphQuotient Q(1, l, true);
    for (auto* r : Q.relations().all()) {
      std::set<bool> cls;
      for (auto& [k, t] : r->terms) cls.insert(in_even_class(t.value));
      EXPECT_LE(cls.size(), 1u);
    }
    // odd part is 2-primary torsion
    for (auto& g : Q.basis())
      if (!in_even_class(g)) EXPECT_TRUE(Q.vanishes(Q.unit(g, 1L << 8))) << g.encode();
  }
}

TEST(Diagrams, DegreeCap) {
  EXPECT_THROW(enumerate_graphs(1, kDiagramDegreeCap + 1), EngineCapError);
}

TEST(Diagrams, ValidationRejectsBadGraphs) {
  GraphBuilder b(1);
  int v = b.vertex();
  b.edge(v, -1, 1);
  b.edge(v, -1, 1);
  b.edge(v, -1, 1);
  EXPECT_THROW(b.build(), ValidationError);
  GraphBuilder c(2);
  c.edge(-1, -1, 1);
  EXPECT_THROW(c.build(), ValidationError);
}
