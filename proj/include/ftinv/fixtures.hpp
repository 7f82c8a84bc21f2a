#pragma once

#include <string>
#include <vector>

#include "builders.hpp"
#include "conway.hpp"
#include "manifold.hpp"
#include "spin.hpp"

namespace ftinv::fixtures {

inline FramedLink unknot(Rational f = 0, Role r = Role::base) { return braid_closure({1, {}}, {comp_attr(f, r)}); }
inline FramedLink trefoil(int hand, Rational f = 0, Role r = Role::base) {
  return braid_closure({2, {hand, hand, hand}}, {comp_attr(f, r)});
}
inline FramedLink figure_eight(Rational f = 0) { return braid_closure({3, {1, -2, 1, -2}}, {comp_attr(f)}); }
inline FramedLink hopf(Rational f1 = 0, Rational f2 = 0) {
  return braid_closure({2, {1, 1}}, {comp_attr(f1), comp_attr(f2)});
}
inline FramedLink borromean(std::vector<Rational> f = {0, 0, 0}, Role r = Role::base) {
  return braid_closure({3, {1, -2, 1, -2, 1, -2}}, {comp_attr(f[0], r), comp_attr(f[1], r), comp_attr(f[2], r)});
}

// 0-framed unknot with the Borromean pair of the lambda_2 picture
inline FramedLink borromean_pair() { return special_link(1, 2, {{1, 2, 3, 1}}); }

// n parallel Borromean pairs around one 0-framed unknot
inline FramedLink lambda_2n_link(int n) {
  std::vector<Replacement> reps;
  for (int i = 0; i < n; ++i) reps.push_back({2 * i + 1, 2 * i + 2, 2 * n + 1, 1});
  return special_link(1, 2 * n, reps);
}

inline SeifertPresentation one_pair() { return lambda_2n_seifert(1); }

// L_8 with b_j banded to a_{j+1}, cyclically
inline SeifertPresentation circular_seifert() {
  SeifertPresentation P;
  P.V = IntMatrix(8, 8);
  for (int b = 0; b < 4; ++b) P.V(2 * b, 2 * b + 1) = 1;
  for (int j = 0; j < 4; ++j) {
    Surgery s;
    s.lambda.assign(8, 0);
    s.lambda[2 * j + 1] = 1;
    s.lambda[(2 * j + 2) % 8] = 1;
    P.surgeries.push_back(s);
  }
  return P;
}

// handle-slide pair: a +1 unknot beside Borromean(0,1,1), against the ring doubled and one copy reframed
inline FramedLink slide_pair_L1() { return disjoint_union(unknot(1), borromean({0, 1, 1})); }
inline FramedLink slide_pair_L2() {
  auto L = cable(borromean({0, 1, 1}), {2, 1, 1});
  for (auto& c : L.components)
    if (c.framing == 0) {
      c.framing = 1;
      break;
    }
  return L;
}

// E8 plumbing: arms of length 4, 2, 1 around one branch strand
inline FramedLink e8_chain() {
  Braid b{8, {}};
  for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 8}}) {
    auto w = clasp_word(i, j, 1);
    b.word.insert(b.word.end(), w.begin(), w.end());
  }
  return braid_closure(b, std::vector<Component>(8, comp_attr(2)));
}

inline SpinPresentation spin(const FramedLink& L, std::vector<std::size_t> chr) {
  SpinPresentation S{{L}, SublinkSelector(L.size())};
  for (auto i : chr) S.chr.bits.at(i) = true;
  validate_spin(S);
  return S;
}

inline SurgeryPresentation lens(long q) { return {unknot(q)}; }

// bracket cases for the degree and order suites: a presentation whose surgery-role components form L
struct BracketCase {
  std::string name;
  SurgeryPresentation M;
  SublinkSelector L() const { return M.link.role_selector(Role::surgery); }
};

inline std::vector<BracketCase> bracket_cases() {
  std::vector<BracketCase> out;
  auto add = [&](std::string n, FramedLink L) { out.push_back({std::move(n), {std::move(L)}}); };
  add("delta_right_trefoil", trefoil(1, 1, Role::surgery));
  add("delta_left_trefoil", trefoil(-1, -1, Role::surgery));
  add("two_trefoils", disjoint_union(trefoil(1, 1, Role::surgery), trefoil(1, -1, Role::surgery)));
  add("borromean_pair", borromean_pair());
  add("borromean_ppp", borromean({1, 1, 1}, Role::surgery));
  add("borromean_ppm", special_link(0, 3, {{1, 2, 3, -1}}));
  add("lambda_4", lambda_2n_link(2));
  add("chain_4", special_link(0, 4, {{1, 2, 3, 1}, {2, 3, 4, -1}}));
  add("two_bases", special_link(2, 2, {{1, 2, 3, 1}, {1, 2, 4, 1}}));
  add("trefoil_base", disjoint_union(trefoil(1, 0), borromean({1, 1, 1}, Role::surgery)));
  return out;
}

// zero-linking bases carrying 4-component special links, for the spin vanishing suite
inline std::vector<BracketCase> spin_vanishing_cases() {
  return {{"s3_chain_4", {special_link(0, 4, {{1, 2, 3, 1}, {2, 3, 4, -1}})}},
          {"s3_double_4", {special_link(0, 4, {{1, 2, 3, 1}, {1, 3, 4, -1}})}},
          {"two_bases_4", {special_link(2, 4, {{1, 2, 5, 1}, {3, 4, 6, 1}, {1, 3, 4, -1}})}}};
}

}  // namespace ftinv::fixtures
