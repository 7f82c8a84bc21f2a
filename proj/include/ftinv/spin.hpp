#pragma once

#include <string>
#include <vector>

#include "conway.hpp"
#include "manifold.hpp"

namespace ftinv {

struct SpinPresentation {
  SurgeryPresentation presentation;
  SublinkSelector chr;  // indexes presentation.link

  std::string encode() const {
    std::string s = presentation.encode() + "|c";
    for (auto i : chr.indices()) s += ":" + std::to_string(i);
    return s;
  }
};

// a_i == sum_{j in C} lk(i,j) mod 2 over base components, C inside the base
inline bool is_characteristic(const SurgeryPresentation& M, const SublinkSelector& C) {
  if (C.size() != M.link.size()) throw ValidationError("spin: selector length mismatch");
  auto base = M.base();
  if (C.minus(base).count()) return false;
  auto A = integer_linking_matrix(M.link);
  for (auto i : base.indices()) {
    BigInt s = A(i, i);
    for (auto j : C.indices()) s -= A(i, j);
    if (s % 2 != 0) return false;
  }
  return true;
}

inline void validate_spin(const SpinPresentation& S) {
  if (!S.presentation.link.integral_framings()) throw ValidationError("spin: non-integral framing");
  if (!is_characteristic(S.presentation, S.chr)) throw ValidationError("spin: characteristic condition violated");
}

// solutions of A x = diag(A) over Z/2, lifted to selectors on the full link
inline std::vector<SublinkSelector> characteristic_sublinks(const SurgeryPresentation& M) {
  if (!M.link.integral_framings()) throw ValidationError("characteristic_sublinks: non-integral framing");
  auto base = M.base().indices();
  const std::size_t n = base.size();
  auto A = integer_linking_matrix(M.link);
  // augmented rows over GF(2)
  std::vector<std::vector<int>> rows(n, std::vector<int>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) rows[r][c] = static_cast<int>(A(base[r], base[c]) % 2 != 0);
    rows[r][n] = rows[r][r];
  }
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < n; ++c) {
    std::size_t r = rank;
    while (r < n && !rows[r][c]) ++r;
    if (r == n) continue;
    std::swap(rows[r], rows[rank]);
    for (std::size_t k = 0; k < n; ++k)
      if (k != rank && rows[k][c])
        for (std::size_t t = 0; t <= n; ++t) rows[k][t] ^= rows[rank][t];
    pivot_col.push_back(static_cast<int>(c));
    ++rank;
  }
  for (std::size_t r = rank; r < n; ++r)
    if (rows[r][n]) return {};  // cannot happen for symmetric A (Wu)
  std::vector<std::size_t> free;
  std::vector<bool> is_pivot(n);
  for (int c : pivot_col) is_pivot[c] = true;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  if (free.size() > 24) throw ValidationError("characteristic_sublinks: too many spin structures");
  std::vector<SublinkSelector> out;
  for (unsigned long m = 0; m < (1ul << free.size()); ++m) {
    std::vector<int> x(n);
    for (std::size_t k = 0; k < free.size(); ++k) x[free[k]] = (m >> k) & 1;
    for (std::size_t r = 0; r < rank; ++r) {
      int v = rows[r][n];
      for (std::size_t f : free) v ^= rows[r][f] & x[f];
      x[pivot_col[r]] = v;
    }
    SublinkSelector s(M.link.size());
    for (std::size_t k = 0; k < n; ++k) s.bits[base[k]] = x[k];
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.bits < b.bits; });
  return out;
}

// Arf invariant of a totally proper link, by inverting c_{n+1} = sum of Arf over sublinks mod 2
inline int arf_proper(const FramedLink& L) {
  const std::size_t n = L.size();
  auto A = linking_matrix(L);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (denominator(A[i][j]) != 1 || numerator(A[i][j]) % 2 != 0) throw ValidationError("arf: non-proper link");
  if (n > 20) throw ValidationError("arf: too many components");
  int arf = 0;
  for (unsigned long m = 1; m < (1ul << n); ++m) {
    auto S = SublinkSelector::from_mask(n, m);
    auto c = conway_link(sublink(L, S)).coeff(static_cast<int>(S.count()) + 1);
    if (denominator(c) != 1) throw ValidationError("arf: non-integral Conway coefficient");
    arf ^= static_cast<int>(numerator(c) % 2 != 0);
  }
  return arf;
}

inline long mod16(BigInt v) {
  v %= 16;
  if (v < 0) v += 16;
  return static_cast<long>(v);
}

// signature of the base linking matrix minus C.C
inline long rochlin_quadratic_part(const SpinPresentation& S) {
  validate_spin(S);
  auto A = integer_linking_matrix(S.presentation.link);
  auto J = manifold_link(S.presentation);
  BigInt cc = 0;
  for (auto i : S.chr.indices())
    for (auto j : S.chr.indices()) cc += A(i, j);
  return mod16(BigInt(signature_nullity(integer_linking_matrix(J)).signature()) - cc);
}

inline long rochlin(const SpinPresentation& S) {
  long q = rochlin_quadratic_part(S);
  return mod16(BigInt(q + 8 * arf_proper(sublink(S.presentation.link, S.chr))));
}

inline long rochlin(const FormalSum<SpinPresentation>& x) {
  BigInt s = 0;
  for (auto& [k, t] : x.terms) s += t.coeff * rochlin(t.value);
  return mod16(s);
}

// [M,L] with spin structure J' u S on each M_S
inline FormalSum<SpinPresentation> spin_bracket(const SpinPresentation& M, const SublinkSelector& L) {
  validate_spin(M);
  const auto& link = M.presentation.link;
  if (L.size() != link.size()) throw ValidationError("spin_bracket: selector length mismatch");
  if (!is_admissible(L, link)) throw ValidationError("spin_bracket: link is not admissible");
  FormalSum<SpinPresentation> r;
  auto b = M.presentation.base();
  for (auto& S : L.subsets()) {
    auto keep = b.minus(L) | S;
    auto P = restrict_promote(M.presentation, keep, S);
    auto full = M.chr | S;
    SublinkSelector c(P.link.size());
    std::size_t at = 0;
    for (std::size_t i = 0; i < link.size(); ++i)
      if (keep[i]) c.bits[at++] = full[i];
    r.add({P, c}, S.count() % 2 ? -1 : 1);
  }
  return r;
}

inline SpinPresentation disjoint_union(const SpinPresentation& A, const SpinPresentation& B) {
  SpinPresentation r{{disjoint_union(A.presentation.link, B.presentation.link)}, {}};
  r.chr.bits = A.chr.bits;
  r.chr.bits.insert(r.chr.bits.end(), B.chr.bits.begin(), B.chr.bits.end());
  return r;
}

inline SpinPresentation spin_from_json(const nlohmann::json& j) {
  SpinPresentation S{{link_from_json(j)}, {}};
  S.chr = SublinkSelector(S.presentation.link.size());
  if (j.contains("char"))
    for (auto& i : j.at("char")) {
      auto k = i.get<long>();
      if (k < 0 || static_cast<std::size_t>(k) >= S.chr.size()) throw ValidationError("spin: char index out of range");
      S.chr.bits[k] = true;
    }
  validate_spin(S);
  return S;
}

inline nlohmann::json spin_to_json(const SpinPresentation& S) {
  auto j = link_to_json(S.presentation.link);
  j["char"] = S.chr.indices();
  return j;
}

}  // namespace ftinv
