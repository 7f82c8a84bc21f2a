#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conway.hpp"
#include "link.hpp"

namespace ftinv {

// M = surgery on the base components; surgery-role components ride along as bracket candidates
struct SurgeryPresentation {
  FramedLink link;

  SublinkSelector base() const { return link.role_selector(Role::base); }
  std::string encode() const { return link.encode(); }
};

inline SurgeryPresentation s3() { return {}; }

// sublink `keep`, with `promote` turned into base components
inline SurgeryPresentation restrict_promote(const SurgeryPresentation& M, const SublinkSelector& keep,
                                            const SublinkSelector& promote) {
  FramedLink L = M.link;
  for (std::size_t i = 0; i < L.size(); ++i)
    if (promote[i]) L.components[i].role = Role::base;
  return {sublink(L, keep)};
}

// base components only
inline FramedLink manifold_link(const SurgeryPresentation& M) { return sublink(M.link, M.base()); }

struct H1Invariants {
  long b1 = 0;
  std::vector<BigInt> torsion;
  BigInt order = 1;
};

inline H1Invariants h1_invariants(const SurgeryPresentation& M) {
  auto J = manifold_link(M);
  if (!J.integral_framings()) throw ValidationError("h1_invariants: non-integral framing");
  auto snf = smith_normal_form(integer_linking_matrix(J));
  H1Invariants h;
  h.b1 = static_cast<long>(J.size() - snf.rank);
  for (auto& f : snf.factors)
    if (f > 1) h.torsion.push_back(f), h.order *= f;
  return h;
}

inline long bp(const SurgeryPresentation& M, long p) {
  if (p < 3 || !is_prime(p)) throw ValidationError("bp: p must be an odd prime");
  auto J = manifold_link(M);
  if (!J.integral_framings()) throw ValidationError("bp: non-integral framing");
  return static_cast<long>(J.size() - rank_mod_p(integer_linking_matrix(J), p));
}

template <class P>
long bp(const FormalSum<P>& x, long p) {
  if (x.empty()) throw ValidationError("bp: empty formal sum");
  long r = LONG_MAX;
  for (auto& [k, t] : x.terms) r = std::min(r, bp(t.value, p));
  return r;
}

// [M,L] = sum over S<L of (-1)^s M_S
inline FormalSum<SurgeryPresentation> bracket(const SurgeryPresentation& M, const SublinkSelector& L) {
  if (L.size() != M.link.size()) throw ValidationError("bracket: selector length mismatch");
  if (!is_admissible(L, M.link)) throw ValidationError("bracket: link is not admissible");
  FormalSum<SurgeryPresentation> r;
  auto b = M.base();
  for (auto& S : L.subsets()) r.add(restrict_promote(M, b.minus(L) | S, S), S.count() % 2 ? -1 : 1);
  return r;
}

// [M, L u T] summed over T<K with sign (-1)^t
inline FormalSum<SurgeryPresentation> bracket_delta(const SurgeryPresentation& M, const SublinkSelector& L,
                                                    const SublinkSelector& K) {
  FormalSum<SurgeryPresentation> r;
  for (auto& T : K.subsets()) {
    auto b = bracket(M, L | T);
    b *= T.count() % 2 ? -1 : 1;
    r += b;
  }
  return r;
}

inline SurgeryPresentation promote(const SurgeryPresentation& M, const SublinkSelector& K) {
  return restrict_promote(M, SublinkSelector(M.link.size(), true), K);
}

inline SurgeryPresentation connected_sum(const SurgeryPresentation& A, const SurgeryPresentation& B) {
  return {disjoint_union(A.link, B.link)};
}

template <class P>
FormalSum<P> connected_sum(const FormalSum<P>& x, const FormalSum<P>& y) {
  FormalSum<P> r;
  for (auto& [ka, a] : x.terms)
    for (auto& [kb, b] : y.terms) r.add(connected_sum(a.value, b.value), a.coeff * b.coeff);
  return r;
}

// Kirby-free reading of a knot K in S^3 under admissible +-1 surgeries
struct SeifertManifold {
  SeifertPresentation P;
  SublinkSelector active;  // surgeries performed

  std::string encode() const {
    std::string s = "V";
    for (std::size_t i = 0; i < P.V.rows; ++i) {
      s += "[";
      for (std::size_t j = 0; j < P.V.cols; ++j) s += P.V(i, j).str() + ",";
      s += "]";
    }
    std::vector<std::string> sur;
    for (std::size_t k = 0; k < P.surgeries.size(); ++k) {
      if (!active[k]) continue;
      std::string t = std::to_string(P.surgeries[k].eps) + ":";
      for (auto& v : P.surgeries[k].lambda) t += v.str() + ",";
      sur.push_back(t);
    }
    std::sort(sur.begin(), sur.end());
    for (auto& t : sur) s += "|" + t;
    return s;
  }
};

inline SeifertManifold seifert_manifold(const SeifertPresentation& P) {
  P.validate();
  return {P, SublinkSelector(P.surgeries.size())};
}

// L selects surgeries not yet performed
inline FormalSum<SeifertManifold> bracket(const SeifertManifold& M, const SublinkSelector& L) {
  if (L.size() != M.P.surgeries.size()) throw ValidationError("bracket: selector length mismatch");
  for (std::size_t k = 0; k < L.size(); ++k)
    if (L[k] && M.active[k]) throw ValidationError("bracket: surgery already performed");
  FormalSum<SeifertManifold> r;
  for (auto& S : L.subsets()) r.add({M.P, M.active | S}, S.count() % 2 ? -1 : 1);
  return r;
}

inline ZPoly conway(const SeifertManifold& M) { return seifert_conway(M.P, M.active); }

// coefficient of z^{2n} of the Conway polynomial of K in M, b1 = 1
inline Rational c2n(const SeifertManifold& M, int n) {
  if (n < 0) throw ValidationError("c2n: negative index");
  return conway(M).coeff(2 * n);
}

// 0-framed knot diagram in S^3
inline Rational c2n_diagram(const FramedLink& K, int n) {
  if (K.size() != 1 || K.components[0].framing != 0) throw ValidationError("c2n: b1 != 1 (need one 0-framed knot)");
  if (n < 0) throw ValidationError("c2n: negative index");
  return conway_link(K).coeff(2 * n);
}

// surgeries are admissible, so H1 = Z with no torsion
inline Rational lescop_b1_1(const SeifertManifold& M) { return c2n(M, 1) - Rational(1, 12); }

inline Rational lescop_b1_1(const SurgeryPresentation& M) {
  auto h = h1_invariants(M);
  if (h.b1 != 1) throw ValidationError("lescop: b1 != 1");
  return c2n_diagram(manifold_link(M), 1) - Rational(h.order) / 12;
}

// ring helpers for evaluation
inline Rational scale(const Rational& r, const BigInt& k) { return r * Rational(k); }
inline bool is_zero(const Rational& r) { return r == 0; }
inline std::string ring_str(const Rational& r) { return to_str(r); }

template <class P, class R>
struct Invariant {
  std::string name;
  std::function<R(const P&)> eval;
  std::optional<int> claimed_degree;
};

template <class P, class R>
R evaluate(const Invariant<P, R>& phi, const FormalSum<P>& x, R zero = R{}) {
  R acc = zero;
  for (auto& [key, t] : x.terms) {
    try {
      acc = acc + scale(phi.eval(t.value), t.coeff);
    } catch (const std::exception& e) {
      throw std::runtime_error(phi.name + " failed on term " + key + ": " + e.what());
    }
  }
  return acc;
}

template <class P>
struct VanishingCase {
  std::string name;
  P M;
  SublinkSelector L;
};

struct CaseResult {
  std::string name;
  std::string value;
  bool pass = false;
};

template <class P, class R>
std::vector<CaseResult> degree_vanishing_test(const Invariant<P, R>& phi, const std::vector<VanishingCase<P>>& cases,
                                              R zero = R{}) {
  std::vector<CaseResult> out;
  for (auto& c : cases) {
    if (phi.claimed_degree && static_cast<long>(c.L.count()) <= *phi.claimed_degree)
      throw ValidationError("degree test: case " + c.name + " has too few components");
    R v = evaluate(phi, bracket(c.M, c.L), zero);
    out.push_back({c.name, ring_str(v), is_zero(v)});
  }
  return out;
}

template <class P>
Invariant<P, Rational> product_invariant(const Invariant<P, Rational>& a, const Invariant<P, Rational>& b) {
  std::optional<int> d;
  if (a.claimed_degree && b.claimed_degree) d = *a.claimed_degree + *b.claimed_degree;
  return {a.name + "*" + b.name, [a, b](const P& M) { return a.eval(M) * b.eval(M); }, d};
}

// sum over S<L of lambda([M,S]) lambda'([M_S, L-S])
template <class P>
Rational product_formula_rhs(const Invariant<P, Rational>& a, const Invariant<P, Rational>& b, const P& M,
                             const SublinkSelector& L) {
  Rational r = 0;
  for (auto& S : L.subsets()) r += evaluate(a, bracket(M, S)) * evaluate(b, bracket(promote(M, S), L.minus(S)));
  return r;
}

inline SeifertManifold promote(const SeifertManifold& M, const SublinkSelector& S) { return {M.P, M.active | S}; }

// [S^3_J, L] against sum over S<J of (-1)^s [S^3, L u S]
inline std::pair<FormalSum<SurgeryPresentation>, FormalSum<SurgeryPresentation>> split_surgery_expand(
    const FramedLink& link, const SublinkSelector& J, const SublinkSelector& L) {
  if (J.size() != link.size() || L.size() != link.size()) throw ValidationError("split_surgery_expand: selector length mismatch");
  for (std::size_t i = 0; i < link.size(); ++i)
    if (J[i] && L[i]) throw ValidationError("split_surgery_expand: J and L overlap");
  auto JL = J | L;
  FramedLink W = sublink(link, JL);
  // indices inside W
  SublinkSelector Jw(W.size()), Lw(W.size());
  std::size_t w = 0;
  for (std::size_t i = 0; i < link.size(); ++i)
    if (JL[i]) Jw.bits[w] = J[i], Lw.bits[w] = L[i], ++w;
  auto lk = linking_matrix(W);
  for (std::size_t i = 0; i < W.size(); ++i)
    for (std::size_t j = 0; j < W.size(); ++j)
      if (i != j && lk[i][j] != 0) throw ValidationError("split_surgery_expand: J u L is not algebraically split");
  if (!is_admissible(Lw, W)) throw ValidationError("split_surgery_expand: L is not admissible");
  auto with_roles = [&](const SublinkSelector& surg) {
    FramedLink X = W;
    for (std::size_t i = 0; i < X.size(); ++i) X.components[i].role = surg[i] ? Role::surgery : Role::base;
    return SurgeryPresentation{X};
  };
  auto lhs = bracket(with_roles(Lw), Lw);
  FormalSum<SurgeryPresentation> rhs;
  for (auto& S : Jw.subsets()) {
    auto LS = Lw | S;
    // J - S is absent from S^3
    auto M = with_roles(LS);
    M = restrict_promote(M, LS, SublinkSelector(W.size()));
    SublinkSelector LSm(M.link.size(), true);
    auto b = bracket(M, LSm);
    b *= S.count() % 2 ? -1 : 1;
    rhs += b;
  }
  return {lhs, rhs};
}

}  // namespace ftinv
