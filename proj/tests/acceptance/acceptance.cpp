#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "ftinv/ftinv.hpp"

using namespace ftinv;

namespace {

#ifndef FTINV_FIXTURES
#define FTINV_FIXTURES "fixtures"
#endif

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

// assertions of a suite report whose names start with one of the prefixes
void take(Outcome& o, const SuiteReport& r, const std::vector<std::string>& prefixes) {
  for (auto& a : r.items)
    for (auto& p : prefixes)
      if (a.name.rfind(p, 0) == 0) o.require(a.pass, a.name + (a.detail.empty() ? "" : " [" + a.detail + "]"));
}

int failures = 0;

void criterion(int id, const std::string& title, double limit, const std::function<Outcome()>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit) o.require(false, "time limit exceeded");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs/%gs", secs, limit);
  std::cout << (o.pass ? "PASS " : "FAIL ") << id << " " << title << " (" << buf << ")";
  if (!o.detail.empty()) std::cout << " " << o.detail;
  std::cout << std::endl;
  failures += !o.pass;
}

ZPoly trefoil_power(int j) {
  ZPoly e(1), w = ZPoly(1) + ZPoly::monomial(2);
  for (int i = 0; i < j; ++i) e = e * w;
  return e;
}

Rational c2n_of(const FormalSum<SeifertManifold>& x, int n) {
  return evaluate(Invariant<SeifertManifold, Rational>{"C", [n](const SeifertManifold& m) { return c2n(m, n); }, 2 * n},
                  x);
}

FormalSum<SeifertManifold> full_bracket(const SeifertPresentation& P) {
  auto M = seifert_manifold(P);
  return bracket(M, SublinkSelector(P.surgeries.size(), true));
}

}  // namespace

int main() {
  FixtureSet fx(fixture_root(FTINV_FIXTURES));
  const auto seed = kDefaultSeed;

  criterion(1, "Conway anchors", 1, [&] {
    Outcome o;
    auto t = conway_link(fx.link("trefoil_R"));
    o.require(t.str() == "1+z^2", "trefoil " + t.str());
    for (int j = 1; j <= 4; ++j) {
      auto c = seifert_conway(fx.seifert("seifert_trefoil_power_" + std::to_string(j)), {});
      o.require(c == trefoil_power(j), "power " + std::to_string(j) + ": " + c.str());
    }
    return o;
  });

  criterion(2, "alternating Conway sums of the Seifert examples", 1, [&] {
    Outcome o;
    auto a = conway_alternating(fx.seifert("seifert_one_pair"));
    o.require(a.str() == "z^2", "example " + a.str());
    for (int n = 1; n <= 3; ++n) {
      auto b = conway_alternating(fx.seifert("seifert_lambda_" + std::to_string(2 * n)));
      o.require(b == ZPoly::monomial(2 * n), "lambda_" + std::to_string(2 * n) + ": " + b.str());
    }
    return o;
  });

  criterion(3, "C_2k on lambda_2n and the circular link", 5, [&] {
    Outcome o;
    for (int n = 1; n <= 3; ++n) {
      auto x = full_bracket(fx.seifert("seifert_lambda_" + std::to_string(2 * n)));
      for (int k = 1; k <= 3; ++k) {
        auto v = c2n_of(x, k);
        o.require(v == (k == n ? 1 : 0), "C" + std::to_string(2 * k) + "(lambda_" + std::to_string(2 * n) + ")=" + to_str(v));
      }
    }
    auto pair = [&](const std::string& name, long c4, long c22) {
      auto x = full_bracket(fx.seifert(name));
      auto M = seifert_manifold(fx.seifert(name));
      Invariant<SeifertManifold, Rational> C2{"C2", [](const SeifertManifold& m) { return c2n(m, 1); }, 2};
      auto sq = product_invariant(C2, C2);
      auto a = c2n_of(x, 2), b = evaluate(sq, x);
      o.require(a == c4 && b == c22, name + " (C4,C2^2)=(" + to_str(a) + "," + to_str(b) + ")");
    };
    pair("seifert_lambda_4", 1, 2);
    pair("seifert_circular_4", 0, 4);
    return o;
  });

  criterion(4, "z^l divides the alternating sum on 100 random presentations", 30, [&] {
    Outcome o;
    take(o, verify_divisibility(seed, 100), {"theorem_divisibility_random"});
    return o;
  });

  criterion(5, "quantum anchors", 60, [&] {
    Outcome o;
    auto S3 = fx.manifold("s3"), S1S2 = fx.manifold("s1xs2");
    for (long p : {5L, 7L, 11L}) {
      auto a = tau_p(S3, p), b = tau_p(S1S2, p);
      o.require(a == CyclotomicInt(p, 1), "tau_" + std::to_string(p) + "(S3)=" + a.str());
      o.require(b == CyclotomicInt::h(p).pow(n_of(p)), "tau_" + std::to_string(p) + "(S1xS2)=" + b.str());
    }
    for (auto n : {"trefoil_R", "poincare", "lens_2_1", "lens_3_1", "t3"}) {
      auto t = tau_p(fx.manifold(n), 3);
      o.require(t == CyclotomicInt(3, 1), std::string("tau_3(") + n + ")=" + t.str());
    }
    std::vector<std::pair<std::string, std::string>> pairs{{"trefoil_R", "lens_3_1"},
                                                           {"poincare", "lens_2_1"},
                                                           {"t3", "s1xs2"},
                                                           {"figure8_1", "poincare"},
                                                           {"lens_2_1", "lens_3_1"}};
    for (auto& [u, v] : pairs)
      for (long p : {5L, 7L}) {
        auto A = fx.manifold(u), B = fx.manifold(v);
        o.require(tau_p(connected_sum(A, B), p) == tau_p(A, p) * tau_p(B, p),
                  "multiplicativity " + u + "#" + v + " p=" + std::to_string(p));
      }
    return o;
  });

  criterion(6, "handle-slide pair", 60, [&] {
    Outcome o;
    auto L1 = fx.manifold("slide_pair_L1"), L2 = fx.manifold("slide_pair_L2");
    for (long p : {5L, 7L}) {
      auto a = tau_p(L1, p), b = tau_p(L2, p);
      o.require(a == b, "p=" + std::to_string(p) + ": " + a.str() + " vs " + b.str());
    }
    return o;
  });

  criterion(7, "tau_5^d separates 0-surgery on the two trefoils", 10, [&] {
    Outcome o;
    FormalSum<SurgeryPresentation> R, L;
    R.add(fx.manifold("trefoil_R"), 1);
    L.add(fx.manifold("trefoil_L"), 1);
    long sep = -1;
    for (long d = 0; d <= 4 && sep < 0; ++d)
      if (tau_p_d(R, 5, d).value != tau_p_d(L, 5, d).value) sep = d;
    o.require(sep >= 0, "no d <= 4 separates");
    if (o.pass) o.detail = "d=" + std::to_string(sep);
    return o;
  });

  criterion(8, "order and depth anchors", 300, [&] {
    Outcome o;
    auto one = [](const SurgeryPresentation& M) {
      FormalSum<SurgeryPresentation> x;
      x.add(M, 1);
      return x;
    };
    for (long p : {5L, 7L}) {
      std::string ps = " p=" + std::to_string(p);
      for (auto q : {"lens_2_1", "lens_3_1"}) {
        long v = p_order(one(fx.manifold(q)), p);
        o.require(v == 0, std::string("o(") + q + ")=" + valuation_str(v) + ps);
      }
      auto t3 = one(fx.manifold("t3"));
      long ot = p_order(t3, p), dt = p_depth(t3, p);
      o.require(ot == n_of(p) && dt == 0, "T3 (o,d)=(" + valuation_str(ot) + "," + valuation_str(dt) + ")" + ps);
      auto D = fx.manifold("delta");
      auto x = bracket(D, D.link.role_selector(Role::surgery));
      long od = p_order(x, p), dd = p_depth(x, p);
      o.require(od == 1 && dd == 3, "Delta (o,d)=(" + valuation_str(od) + "," + valuation_str(dd) + ")" + ps);
    }
    return o;
  });

  criterion(9, "3 o_p >= n b_p + l on the bracket fixtures", 300, [&] {
    Outcome o;
    int rows = 0;
    for (auto& r : quantum_case_rows({5, 7})) {
      if (r.l > 4) continue;
      ++rows;
      bool ok = r.order == kInfinity || 3 * r.order >= n_of(r.p) * r.bp + r.l;
      o.require(ok, r.name + " p=" + std::to_string(r.p) + " o=" + valuation_str(r.order));
    }
    if (o.pass) o.detail = std::to_string(rows) + " rows";
    return o;
  });

  criterion(10, "degree vanishing for tau_p^d and C_2n", 300, [&] {
    Outcome o;
    take(o, verify_degree(seed), {"tau_d_vanishing_", "c2n_vanishes_on_2n_plus_1"});
    return o;
  });

  criterion(11, "diagram table, odd vertex torsion, d o d", 120, [&] {
    Outcome o;
    const long ranks[] = {1, 0, 1, 1, 2, 1};
    for (int l = 0; l <= 5; ++l) {
      auto q = quotient_structure(1, l, true);
      o.require(q.rank == ranks[l], "rank at l=" + std::to_string(l) + " is " + std::to_string(q.rank));
    }
    for (int l = 0; l <= 4; ++l) {
      GraphQuotient Q(1, l, true);
      for (auto& g : Q.basis())
        if (g.trivalent() % 2) o.require(Q.vanishes(Q.unit(g, 2)), "2G != 0 for " + g.encode());
    }
    long total = 0, ok = 0, inv = 0;
    for (int m = 1; m <= 2; ++m)
      for (int l = 0; l <= 4; ++l)
        for (auto& g : enumerate_graphs(m, l)) {
          FormalSum<AdmissibleGraph> one;
          one.add(g, 1);
          ++total;
          ok += deframe(deframe(g)) == one;
          inv += deframe(deframe_inverse(g)) == one;
        }
    o.require(ok == total, "d o d = id on " + std::to_string(ok) + "/" + std::to_string(total) +
                               " graphs (only those without trivalent vertices); the plus-sign sum inverts d on " +
                               std::to_string(inv) + "/" + std::to_string(total));
    return o;
  });

  criterion(12, "spin suite", 60, [&] {
    Outcome o;
    take(o, verify_spin(fx), {"characteristic_count_", "rochlin_e8", "rochlin_degree3_vanishing_", "rochlin_borromean"});
    return o;
  });

  criterion(13, "symbolic identities", 10, [&] {
    Outcome o;
    std::mt19937_64 rng(seed);
    int bad = 0;
    for (int t = 0; t < 20; ++t) {
      auto L = detail::random_special_link(rng, static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3),
                                           1 + static_cast<int>(rng() % 2));
      bad += !(delta(delta(L)) == detail::single(L));
    }
    o.require(bad == 0, "delta^2 fails on " + std::to_string(bad) + "/20");
    take(o, verify_symbolic(seed), {"promotion_", "split_surgery_expansion"});
    take(o, verify_product(seed), {"product_formula_random"});
    return o;
  });

  return failures ? 1 : 0;
}
