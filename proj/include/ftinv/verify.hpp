#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "diagrams.hpp"
#include "fixtures.hpp"
#include "quantum.hpp"
#include "spin.hpp"

namespace ftinv {

struct FixtureError : ValidationError {
  using ValidationError::ValidationError;
};

inline constexpr unsigned long kDefaultSeed = 20240601;

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  unsigned long seed = kDefaultSeed;
  std::vector<Assertion> items;

  bool ok() const {
    return std::all_of(items.begin(), items.end(), [](const Assertion& a) { return a.pass; });
  }
  void check(std::string name, bool pass, std::string detail = {}) {
    items.push_back({std::move(name), pass, std::move(detail)});
  }
  nlohmann::json to_json() const {
    nlohmann::json j{{"suite", suite}, {"seed", seed}, {"pass", ok()}, {"assertions", nlohmann::json::array()}};
    for (auto& a : items) j["assertions"].push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
    return j;
  }
};

// fixture root: explicit, else $FTINV_FIXTURES, else ./fixtures
inline std::filesystem::path fixture_root(const std::string& explicit_root = {}) {
  if (!explicit_root.empty()) return explicit_root;
  if (const char* e = std::getenv("FTINV_FIXTURES")) return e;
  return "fixtures";
}

inline nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

class FixtureSet {
 public:
  explicit FixtureSet(std::filesystem::path root) : root_(std::move(root)) {}
  nlohmann::json json(const std::string& name) const { return load_json(root_ / (name + ".json")); }
  FramedLink link(const std::string& name) const { return link_from_json(json(name)); }
  SurgeryPresentation manifold(const std::string& name) const { return {link(name)}; }
  SeifertPresentation seifert(const std::string& name) const { return seifert_from_json(json(name)); }
  SpinPresentation spin(const std::string& name) const { return spin_from_json(json(name)); }

 private:
  std::filesystem::path root_;
};

namespace detail {

template <class T>
FormalSum<T> single(const T& t) {
  FormalSum<T> x;
  x.add(t, 1);
  return x;
}

// random special link: each surgery index used at most twice
inline FramedLink random_special_link(std::mt19937_64& rng, int m, int l, int reps_wanted) {
  std::vector<Replacement> reps;
  std::map<int, int> uses;
  for (int tries = 0; tries < 50 && static_cast<int>(reps.size()) < reps_wanted; ++tries) {
    if (l + m < 3) break;
    std::vector<int> pool(l + m);
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::array<int, 3> t{pool[0], pool[1], pool[2]};
    std::sort(t.begin(), t.end());
    if (t[0] > l) continue;
    bool ok = true;
    for (int x : t)
      if (x <= l && uses[x] >= 2) ok = false;
    if (!ok) continue;
    for (int x : t)
      if (x <= l) ++uses[x];
    reps.push_back({t[0], t[1], t[2], rng() % 2 ? 1 : -1});
  }
  auto L = special_link(m, l, reps);
  for (int c = 0; c < l; ++c) L.components[c].framing = rng() % 2 ? 1 : -1;
  for (int c = l; c < l + m; ++c) L.components[c].framing = static_cast<long>(rng() % 5) - 2;
  return L;
}

// V - V^T is the standard symplectic form; entries of V in [-2,2]
inline SeifertPresentation random_seifert(std::mt19937_64& rng, int g, int l) {
  const int n = 2 * g;
  SeifertPresentation P;
  P.V = IntMatrix(n, n);
  auto draw = [&] { return static_cast<long>(rng() % 5) - 2; };
  for (int i = 0; i < n; ++i) {
    P.V(i, i) = draw();
    for (int j = i + 1; j < n; ++j) {
      long u = (i % 2 == 0 && j == i + 1) ? 1 : 0;
      long a;
      do a = draw();
      while (a - u < -2);
      P.V(i, j) = a;
      P.V(j, i) = a - u;
    }
  }
  for (int k = 0; k < l; ++k) {
    Surgery s;
    s.eps = rng() % 2 ? 1 : -1;
    for (int i = 0; i < n; ++i) s.lambda.push_back(draw());
    P.surgeries.push_back(s);
  }
  P.validate();
  return P;
}

inline Invariant<SeifertManifold, Rational> c2n_invariant(int n) {
  return {"C" + std::to_string(2 * n), [n](const SeifertManifold& M) { return c2n(M, n); }, 2 * n};
}

}  // namespace detail

// delta^2 = id, d o d = id, d o d^{-1} = id, AS twice = id
inline SuiteReport verify_involutions(unsigned long seed = kDefaultSeed, int lmax = 4, int mmax = 2) {
  SuiteReport r{"involutions", seed, {}};
  std::mt19937_64 rng(seed);
  int bad = 0, n = 0;
  for (int t = 0; t < 20; ++t) {
    int m = static_cast<int>(rng() % 3), l = 1 + static_cast<int>(rng() % 3);
    auto L = detail::random_special_link(rng, m, l, 1 + static_cast<int>(rng() % 2));
    ++n;
    if (!(delta(delta(L)) == detail::single(L))) ++bad;
  }
  for (auto& L : {fixtures::trefoil(1), fixtures::hopf(), fixtures::borromean(), fixtures::borromean_pair()}) {
    ++n;
    if (!(delta(delta(L)) == detail::single(L))) ++bad;
  }
  r.check("delta_squared_identity", bad == 0, std::to_string(n - bad) + "/" + std::to_string(n) + " links");
  long dd_total = 0, dd_ok = 0, inv_ok = 0, as_ok = 0, dd_free = 0;
  for (int m = 1; m <= mmax; ++m)
    for (int l = 0; l <= lmax; ++l)
      for (auto& g : enumerate_graphs(m, l, false)) {
        auto one = detail::single(g);
        ++dd_total;
        bool dd = deframe(deframe(g)) == one;
        dd_ok += dd;
        if (g.trivalent() == 0) dd_free += dd;
        inv_ok += deframe(deframe_inverse(g)) == one;
        bool as = true;
        for (int v = 0; v < g.trivalent(); ++v) as = as && flip_vertex(flip_vertex(g, v), v).encode() == g.encode();
        as_ok += as;
      }
  auto frac = [&](long k) { return std::to_string(k) + "/" + std::to_string(dd_total) + " graphs"; };
  r.check("deframe_squared_identity", dd_ok == dd_total,
          frac(dd_ok) + "; holds only on graphs without trivalent vertices (" + std::to_string(dd_free) + ")");
  r.check("deframe_inverse_is_plus_sign_sum", inv_ok == dd_total, frac(inv_ok));
  r.check("vertex_flip_involution", as_ok == dd_total, frac(as_ok));
  return r;
}

// z^l divides the alternating Conway sum; surgery step divisible by z; basis-change invariance
inline SuiteReport verify_divisibility(unsigned long seed = kDefaultSeed, int trials = 100) {
  SuiteReport r{"divisibility", seed, {}};
  std::mt19937_64 rng(seed);
  int bad = 0, step_bad = 0, basis_bad = 0;
  std::string first;
  for (int t = 0; t < trials; ++t) {
    int g = 1 + static_cast<int>(rng() % 3), l = static_cast<int>(rng() % 5);
    auto P = detail::random_seifert(rng, g, l);
    try {
      auto a = conway_alternating(P);
      if (!a.divisible_by_power(l)) throw std::logic_error(a.str());
    } catch (const std::logic_error& e) {
      if (!bad++) first = e.what();
    }
    SublinkSelector all(l, true);
    for (auto& S : all.subsets())
      for (int k = 0; k < l; ++k) {
        if (S[k]) continue;
        auto S2 = S;
        S2.bits[k] = true;
        if (!(seifert_conway(P, S) - seifert_conway(P, S2)).divisible_by_power(1)) ++step_bad;
      }
    // elementary congruence e_i += e_j on a random pair
    int n = 2 * g, i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
    if (i != j) {
      IntMatrix U(n, n);
      for (int k = 0; k < n; ++k) U(k, k) = 1;
      U(i, j) = 1;
      SeifertPresentation Q = P;
      Q.V = U * P.V * U.transpose();
      for (auto& s : Q.surgeries) s.lambda[i] += s.lambda[j];
      for (auto& S : SublinkSelector(l, true).subsets())
        if (!(seifert_conway(P, S) == seifert_conway(Q, S))) ++basis_bad;
    }
  }
  r.check("theorem_divisibility_random", bad == 0,
          std::to_string(trials - bad) + "/" + std::to_string(trials) + (first.empty() ? "" : " first: " + first));
  r.check("surgery_step_divisible_by_z", step_bad == 0, std::to_string(step_bad) + " failures");
  r.check("basis_change_invariance", basis_bad == 0, std::to_string(basis_bad) + " failures");
  auto ex = seifert_manifold(fixtures::one_pair());
  r.check("example_both_surgeries_trefoil", seifert_conway(ex.P, SublinkSelector(2, true)).str() == "1+z^2",
          seifert_conway(ex.P, SublinkSelector(2, true)).str());
  auto ea = conway_alternating(ex.P);
  r.check("example_alternating_z2", ea.str() == "z^2", ea.str());
  for (int n = 1; n <= 3; ++n) {
    auto a = conway_alternating(lambda_2n_seifert(n));
    r.check("lambda_" + std::to_string(2 * n) + "_alternating", a == ZPoly::monomial(2 * n), a.str());
  }
  return r;
}

// bracket cases for the quantum degree statements
struct QuantumCaseRow {
  std::string name;
  long p, l, order, bp;
  bool vanish;
};

inline std::vector<QuantumCaseRow> quantum_case_rows(const std::vector<long>& primes = {5, 7}) {
  std::vector<QuantumCaseRow> out;
  for (auto& c : fixtures::bracket_cases()) {
    auto x = bracket(c.M, c.L());
    long l = static_cast<long>(c.L().count());
    for (long p : primes) {
      auto t = tau_p(x, p);
      long o = v_h(t), b = bp(x, p);
      bool vanish = true;
      for (long d = 0; 3 * d < l + n_of(p) * b; ++d) vanish = vanish && is_zero(pi_d(t, d));
      out.push_back({c.name, p, l, o, b, vanish});
    }
  }
  return out;
}

// order inequality, truncated tau vanishing, C_2n vanishing, framing flip
inline SuiteReport verify_degree(unsigned long seed = kDefaultSeed) {
  SuiteReport r{"degree", seed, {}};
  for (auto& row : quantum_case_rows()) {
    std::string tag = row.name + "_p" + std::to_string(row.p);
    bool ineq = row.order == kInfinity || 3 * row.order >= n_of(row.p) * row.bp + row.l;
    r.check("order_inequality_" + tag, ineq,
            "o=" + valuation_str(row.order) + " b=" + std::to_string(row.bp) + " l=" + std::to_string(row.l));
    r.check("tau_d_vanishing_" + tag, row.vanish);
  }
  std::mt19937_64 rng(seed);
  int bad = 0, flip_bad = 0, total = 0;
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 10; ++t) {
      auto P = detail::random_seifert(rng, 1 + static_cast<int>(rng() % 3), 2 * n + 1);
      auto M = seifert_manifold(P);
      ++total;
      if (evaluate(detail::c2n_invariant(n), bracket(M, SublinkSelector(2 * n + 1, true))) != 0) ++bad;
      // degree-l invariant sees [M,L] and [M,L'] with opposite signs
      auto Q = seifert_manifold(detail::random_seifert(rng, 1 + static_cast<int>(rng() % 3), 2 * n));
      auto Q2 = Q;
      Q2.P.surgeries[0].eps *= -1;
      SublinkSelector all(2 * n, true);
      auto phi = detail::c2n_invariant(n);
      if (evaluate(phi, bracket(Q, all)) + evaluate(phi, bracket(Q2, all)) != 0) ++flip_bad;
    }
  r.check("c2n_vanishes_on_2n_plus_1", bad == 0, std::to_string(total - bad) + "/" + std::to_string(total));
  r.check("framing_flip_sign", flip_bad == 0, std::to_string(total - flip_bad) + "/" + std::to_string(total));
  return r;
}

// product formula and the realization values
inline SuiteReport verify_product(unsigned long seed = kDefaultSeed) {
  SuiteReport r{"product", seed, {}};
  auto C2 = detail::c2n_invariant(1), C4 = detail::c2n_invariant(2);
  auto C22 = product_invariant(C2, C2), C24 = product_invariant(C2, C4);
  std::mt19937_64 rng(seed);
  int bad = 0, total = 0;
  for (int t = 0; t < 20; ++t) {
    auto M = seifert_manifold(detail::random_seifert(rng, 1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 5)));
    SublinkSelector all(M.P.surgeries.size(), true);
    ++total;
    if (evaluate(C22, bracket(M, all)) != product_formula_rhs(C2, C2, M, all)) ++bad;
    ++total;
    if (evaluate(C24, bracket(M, all)) != product_formula_rhs(C2, C4, M, all)) ++bad;
  }
  r.check("product_formula_random", bad == 0, std::to_string(total - bad) + "/" + std::to_string(total));
  for (int n = 1; n <= 3; ++n) {
    auto M = seifert_manifold(lambda_2n_seifert(n));
    auto x = bracket(M, SublinkSelector(2 * n, true));
    std::string vals;
    bool ok = true;
    for (int k = 0; k <= 3; ++k) {
      auto v = evaluate(detail::c2n_invariant(k), x);
      vals += to_str(v) + " ";
      ok = ok && v == (k == n ? 1 : 0);
    }
    r.check("kronecker_lambda_" + std::to_string(2 * n), ok, vals);
    // C_2^n on lambda_2n
    Invariant<SeifertManifold, Rational> Cn{"C2^n", [n](const SeifertManifold& m) {
                                              Rational v = 1;
                                              for (int i = 0; i < n; ++i) v *= c2n(m, 1);
                                              return v;
                                            },
                                            2 * n};
    BigInt expect = 0;
    for (int j = 1; j <= n; ++j) {
      BigInt b = 1, pw = 1;
      for (int i = 0; i < j; ++i) b = b * (n - i) / (i + 1);
      for (int i = 0; i < n; ++i) pw *= j;
      expect += ((n - j) % 2 ? -1 : 1) * b * pw;
    }
    auto got = evaluate(Cn, x);
    r.check("c2_power_lambda_" + std::to_string(2 * n), got == Rational(expect), to_str(got) + " vs " + expect.str());
  }
  auto x4 = bracket(seifert_manifold(lambda_2n_seifert(2)), SublinkSelector(4, true));
  auto a = evaluate(C4, x4), b = evaluate(C22, x4);
  r.check("lambda_4_C4_C2sq", a == 1 && b == 2, to_str(a) + "," + to_str(b));
  auto xh = bracket(seifert_manifold(fixtures::circular_seifert()), SublinkSelector(4, true));
  a = evaluate(C4, xh), b = evaluate(C22, xh);
  r.check("circular_C4_C2sq", a == 0 && b == 4, to_str(a) + "," + to_str(b));
  for (int j = 1; j <= 4; ++j) {
    auto P = trefoil_power_seifert(j);
    ZPoly e(1), w = ZPoly(1) + ZPoly::monomial(2);
    for (int i = 0; i < j; ++i) e = e * w;
    r.check("trefoil_power_" + std::to_string(j), seifert_conway(P, {}) == e, seifert_conway(P, {}).str());
  }
  return r;
}

inline SuiteReport verify_quantum_anchors(const FixtureSet& fx) {
  SuiteReport r{"quantum-anchors", 0, {}};
  auto S3 = fx.manifold("s3"), S1S2 = fx.manifold("s1xs2");
  for (long p : {5L, 7L, 11L}) {
    auto a = tau_p(S3, p), b = tau_p(S1S2, p);
    r.check("tau_S3_p" + std::to_string(p), a == CyclotomicInt(p, 1), a.str());
    r.check("tau_S1xS2_p" + std::to_string(p), b == CyclotomicInt::h(p).pow(n_of(p)), b.str());
  }
  std::vector<std::string> names{"trefoil_R", "poincare", "lens_2_1", "lens_3_1", "t3"};
  for (auto& n : names) {
    auto t = tau_p(fx.manifold(n), 3);
    r.check("tau3_trivial_" + n, t == CyclotomicInt(3, 1), t.str());
  }
  std::vector<std::pair<std::string, std::string>> pairs{
      {"trefoil_R", "lens_3_1"}, {"poincare", "lens_2_1"}, {"t3", "s1xs2"}, {"figure8_1", "poincare"}, {"lens_2_1", "lens_3_1"}};
  for (auto& [u, v] : pairs)
    for (long p : {5L, 7L}) {
      auto A = fx.manifold(u), B = fx.manifold(v);
      bool ok = tau_p(connected_sum(A, B), p) == tau_p(A, p) * tau_p(B, p);
      r.check("multiplicative_" + u + "_" + v + "_p" + std::to_string(p), ok);
    }
  auto L1 = fx.manifold("slide_pair_L1"), L2 = fx.manifold("slide_pair_L2");
  for (long p : {5L, 7L}) {
    auto a = tau_p(L1, p), b = tau_p(L2, p);
    r.check("handle_slide_pair_p" + std::to_string(p), a == b, a.str() + " | " + b.str());
  }
  auto R0 = detail::single(fx.manifold("trefoil_R")), L0 = detail::single(fx.manifold("trefoil_L"));
  long sep = -1;
  for (long d = 0; d <= 4 && sep < 0; ++d)
    if (tau_p_d(R0, 5, d).value != tau_p_d(L0, 5, d).value) sep = d;
  r.check("trefoil_separation_p5", sep >= 0, "first d = " + std::to_string(sep));
  for (long p : {5L, 7L}) {
    std::string ps = "_p" + std::to_string(p);
    for (auto q : {"lens_2_1", "lens_3_1"}) {
      long o = p_order(detail::single(fx.manifold(q)), p);
      r.check(std::string("order_") + q + ps, o == 0, valuation_str(o));
    }
    auto t3 = detail::single(fx.manifold("t3"));
    long o = p_order(t3, p), d = p_depth(t3, p);
    r.check("order_depth_t3" + ps, o == n_of(p) && d == 0, valuation_str(o) + "," + valuation_str(d));
    auto D = fx.manifold("delta");
    auto x = bracket(D, D.link.role_selector(Role::surgery));
    o = p_order(x, p), d = p_depth(x, p);
    r.check("order_depth_delta" + ps, o == 1 && d == 3, valuation_str(o) + "," + valuation_str(d));
  }
  return r;
}

inline SuiteReport verify_spin(const FixtureSet& fx) {
  SuiteReport r{"spin", 0, {}};
  auto dim_ker2 = [](const SurgeryPresentation& M) {
    auto J = manifold_link(M);
    return static_cast<long>(J.size() - rank_mod_p(integer_linking_matrix(J), 2));
  };
  for (auto n : {"s1xs2", "poincare", "e8_chain", "t3", "lens_2_1", "slide_pair_L1"}) {
    auto M = fx.manifold(n);
    auto c = characteristic_sublinks(M);
    long want = 1L << dim_ker2(M);
    r.check(std::string("characteristic_count_") + n, static_cast<long>(c.size()) == want,
            std::to_string(c.size()) + " vs " + std::to_string(want));
  }
  auto E = fx.spin("e8_spin");
  r.check("rochlin_e8", rochlin(E) == 8, std::to_string(rochlin(E)));
  auto T = fx.spin("trefoil_spin");
  r.check("rochlin_plus_one_trefoil", rochlin(T) == 8, std::to_string(rochlin(T)));
  r.check("rochlin_s3", rochlin(SpinPresentation{}) == 0);
  for (auto& c : fixtures::spin_vanishing_cases()) {
    bool ok = true, q_const = true;
    std::string vals;
    for (auto& ch : characteristic_sublinks(c.M)) {
      SpinPresentation S{c.M, ch};
      auto x = spin_bracket(S, c.L());
      long mu = rochlin(x);
      vals += std::to_string(mu) + " ";
      ok = ok && mu == 0;
      std::set<long> qs;
      for (auto& [k, t] : x.terms) qs.insert(rochlin_quadratic_part(t.value));
      q_const = q_const && qs.size() == 1;
    }
    r.check("rochlin_degree3_vanishing_" + c.name, ok, vals);
    r.check("sigma_term_cancellation_" + c.name, q_const);
  }
  auto B = fx.spin("borromean_spin");
  auto bb = spin_bracket(B, B.presentation.link.role_selector(Role::surgery));
  r.check("rochlin_borromean_witness", rochlin(bb) == 8, std::to_string(rochlin(bb)));
  auto U = disjoint_union(E, T);
  r.check("rochlin_additive", rochlin(U) == (rochlin(E) + rochlin(T)) % 16, std::to_string(rochlin(U)));
  return r;
}

// promotion identities, H1 invariance of bracket terms, split-surgery expansion
inline SuiteReport verify_symbolic(unsigned long seed = kDefaultSeed) {
  SuiteReport r{"lemma10-3", seed, {}};
  std::mt19937_64 rng(seed);
  int l14 = 0, l14d = 0, h1 = 0, l103 = 0, total = 0;
  for (int t = 0; t < 15; ++t) {
    int m = static_cast<int>(rng() % 3), l = 2 + static_cast<int>(rng() % 2);
    auto L = detail::random_special_link(rng, m, l, 1 + static_cast<int>(rng() % 2));
    SurgeryPresentation M{L};
    ++total;
    auto K = SublinkSelector::of(L.size(), {static_cast<std::size_t>(l - 1)});
    auto Lr = M.link.role_selector(Role::surgery).minus(K);
    l14 += bracket(M, Lr | K) == bracket(M, Lr) - bracket(promote(M, K), Lr);
    l14d += bracket(promote(M, K), Lr) == bracket_delta(M, Lr, K);
    auto h = h1_invariants(M);
    bool hs = true;
    for (auto& [k, term] : bracket(M, Lr | K).terms) {
      auto g = h1_invariants(term.value);
      hs = hs && g.b1 == h.b1 && g.torsion == h.torsion;
    }
    h1 += hs;
    auto J = M.base();
    auto Lpm = L;
    for (auto i : J.indices()) Lpm.components[i].framing = rng() % 2 ? 1 : -1;
    auto [lhs, rhs] = split_surgery_expand(Lpm, J, Lr | K);
    l103 += lhs == rhs;
  }
  auto frac = [&](int k) { return std::to_string(k) + "/" + std::to_string(total); };
  r.check("promotion_first_form", l14 == total, frac(l14));
  r.check("promotion_delta_form", l14d == total, frac(l14d));
  r.check("bracket_terms_h1_bordant", h1 == total, frac(h1));
  r.check("split_surgery_expansion", l103 == total, frac(l103));
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"involutions", "divisibility", "degree", "product",
                                          "quantum-anchors", "spin", "lemma10-3"};
  return n;
}

inline SuiteReport run_suite(const std::string& name, unsigned long seed, const FixtureSet& fx) {
  if (name == "involutions") return verify_involutions(seed);
  if (name == "divisibility") return verify_divisibility(seed);
  if (name == "degree") return verify_degree(seed);
  if (name == "product") return verify_product(seed);
  if (name == "quantum-anchors") return verify_quantum_anchors(fx);
  if (name == "spin") return verify_spin(fx);
  if (name == "lemma10-3") return verify_symbolic(seed);
  throw ValidationError("unknown suite: " + name);
}

}  // namespace ftinv
