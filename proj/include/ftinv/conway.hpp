#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "builders.hpp"
#include "link.hpp"

namespace ftinv {

namespace detail {

// rebuild a diagram from crossings after arc identifications; attributes dropped
inline FramedLink rebuild(const std::vector<Crossing>& xs, ArcUnion uf, const std::set<int>& arcs) {
  FramedLink L;
  std::map<int, int> succ;
  for (auto x : xs) {
    for (int& a : x.arcs) a = uf.find(a);
    L.crossings.push_back(x);
    succ[x.arcs[0]] = x.arcs[2];
    if (x.sign > 0) succ[x.arcs[3]] = x.arcs[1];
    else succ[x.arcs[1]] = x.arcs[3];
  }
  std::set<int> seen;
  for (int a0 : arcs) {
    int r = uf.find(a0);
    if (seen.count(r)) continue;
    Component c;
    int cur = r;
    do {
      c.arcs.push_back(cur);
      seen.insert(cur);
      auto it = succ.find(cur);
      if (it == succ.end()) break;
      cur = it->second;
    } while (cur != r);
    L.components.push_back(c);
  }
  return compact_arcs(L);
}

inline std::set<int> all_arcs(const FramedLink& L) {
  std::set<int> s;
  for (auto& c : L.components) s.insert(c.arcs.begin(), c.arcs.end());
  return s;
}

// over/under strand ends of each crossing
struct CrossingEnds {
  std::vector<int> under_in, over_in;
  explicit CrossingEnds(const FramedLink& L) {
    for (auto& x : L.crossings) {
      under_in.push_back(x.arcs[0]);
      over_in.push_back(x.sign > 0 ? x.arcs[3] : x.arcs[1]);
    }
  }
};

// crossings met first from below when components are run in `order` from `base` arcs
inline std::vector<int> bad_crossings(const FramedLink& L, const std::vector<int>& order, const std::vector<std::size_t>& base) {
  CrossingEnds ce(L);
  std::map<int, std::pair<int, bool>> ends;
  for (int i = 0; i < static_cast<int>(L.crossings.size()); ++i) {
    ends[ce.under_in[i]] = {i, true};
    ends[ce.over_in[i]] = {i, false};
  }
  std::vector<bool> seen(L.crossings.size(), false);
  std::vector<int> bad;
  for (int ci : order) {
    auto& arcs = L.components[ci].arcs;
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      auto it = ends.find(arcs[(base[ci] + k) % arcs.size()]);
      if (it == ends.end()) continue;
      auto [i, under] = it->second;
      if (seen[i]) continue;
      seen[i] = true;
      if (under) bad.push_back(i);
    }
  }
  return bad;
}

// base points and order with fewest bad crossings
inline std::vector<int> best_bad_crossings(const FramedLink& L) {
  const std::size_t k = L.size();
  auto own = L.arc_owner();
  std::vector<std::size_t> base(k, 0);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t best = SIZE_MAX;
    for (std::size_t b = 0; b < L.components[c].arcs.size(); ++b) {
      std::vector<std::size_t> bb(k, 0);
      bb[c] = b;
      std::size_t n = bad_crossings(L, {static_cast<int>(c)}, bb).size();
      if (n < best) best = n, base[c] = b;
    }
  }
  // under[i][j]: crossings with i under j
  std::vector<std::vector<int>> under(k, std::vector<int>(k, 0));
  CrossingEnds ce(L);
  for (std::size_t i = 0; i < L.crossings.size(); ++i) {
    int u = own.at(ce.under_in[i]).first, o = own.at(ce.over_in[i]).first;
    if (u != o) ++under[u][o];
  }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  auto cost = [&](const std::vector<int>& ord) {
    int s = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) s += under[ord[a]][ord[b]];
    return s;
  };
  if (k <= 7) {
    auto best = order;
    int bc = cost(order);
    while (std::next_permutation(order.begin(), order.end()))
      if (int c = cost(order); c < bc) bc = c, best = order;
    order = best;
  } else {
    // greedy: next is the component lying under the fewest remaining ones
    std::vector<int> left = order;
    order.clear();
    while (!left.empty()) {
      auto pick = std::min_element(left.begin(), left.end(), [&](int a, int b) {
        int ca = 0, cb = 0;
        for (int r : left) ca += under[a][r], cb += under[b][r];
        return ca < cb;
      });
      order.push_back(*pick);
      left.erase(pick);
    }
  }
  return bad_crossings(L, order, base);
}

inline Crossing switched(const Crossing& x) {
  auto [a, b, c, d] = x.arcs;
  Crossing y;
  y.sign = -x.sign;
  if (x.sign > 0) y.arcs = {d, a, b, c};
  else y.arcs = {b, c, d, a};
  return y;
}

// darts (crossing, position); alpha joins the two ends of an arc
struct DartMap {
  std::vector<std::array<std::pair<int, int>, 4>> alpha;
  explicit DartMap(const FramedLink& L) : alpha(L.crossings.size()) {
    std::map<int, std::vector<std::pair<int, int>>> at;
    for (int x = 0; x < static_cast<int>(L.crossings.size()); ++x)
      for (int p = 0; p < 4; ++p) at[L.crossings[x].arcs[p]].push_back({x, p});
    for (auto& [a, v] : at) {
      alpha[v[0].first][v[0].second] = v[1];
      alpha[v[1].first][v[1].second] = v[0];
    }
  }
};

// one Reidemeister I or II reduction, nullopt if none applies
inline std::optional<FramedLink> reduce_once(const FramedLink& L) {
  const int n = static_cast<int>(L.crossings.size());
  DartMap dm(L);
  auto arc = [&](int x, int p) { return L.crossings[x].arcs[((p % 4) + 4) % 4]; };
  for (int x = 0; x < n; ++x)
    for (int p = 0; p < 4; ++p) {
      auto [y, q] = dm.alpha[x][p];
      auto next = std::make_pair(y, (q + 1) % 4);
      std::vector<Crossing> rest;
      ArcUnion uf;
      if (next == std::make_pair(x, p)) {
        // monogon at corner (p-1, p)
        for (int j = 0; j < n; ++j)
          if (j != x) rest.push_back(L.crossings[j]);
        uf.unite(arc(x, p + 1), arc(x, p + 2));
        uf.unite(arc(x, p), arc(x, p + 2));
        return rebuild(rest, uf, all_arcs(L));
      }
      if (y == x) continue;
      auto [x2, p2] = dm.alpha[next.first][next.second];
      if (x2 != x || (p2 + 1) % 4 != p) continue;
      if ((p % 2) != (q % 2)) continue;  // clasp, not removable
      for (int j = 0; j < n; ++j)
        if (j != x && j != y) rest.push_back(L.crossings[j]);
      uf.unite(arc(x, p + 2), arc(y, q + 2));
      uf.unite(arc(x, p), arc(y, q + 2));
      uf.unite(arc(x, p + 1), arc(y, q + 3));
      uf.unite(arc(x, p + 3), arc(y, q + 3));
      return rebuild(rest, uf, all_arcs(L));
    }
  return std::nullopt;
}

inline FramedLink reduce_diagram(FramedLink L) {
  while (auto r = reduce_once(L)) L = *r;
  return L;
}

// number of connected pieces, crossingless circles counted separately
inline std::size_t diagram_pieces(const FramedLink& L) {
  ArcUnion uf;
  for (auto& x : L.crossings)
    for (int a : x.arcs) uf.unite(a, x.arcs[0]);
  std::set<int> roots;
  for (auto& c : L.components)
    for (int a : c.arcs) roots.insert(uf.find(a));
  return roots.size();
}

inline constexpr std::size_t kConwayNodeCap = 400000;

inline ZPoly conway_rec(FramedLink L, std::unordered_map<std::string, ZPoly>& memo) {
  L = reduce_diagram(std::move(L));
  if (L.crossings.empty()) return L.size() == 1 ? ZPoly(1) : ZPoly();
  if (diagram_pieces(L) > 1) return ZPoly();
  std::string key = L.encode();
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  if (memo.size() >= kConwayNodeCap) throw EngineCapError("conway: skein recursion exceeded node cap");
  auto bad = best_bad_crossings(L);
  // descending diagram is an unlink; each bad crossing contributes a smoothing
  ZPoly r = L.size() == 1 ? ZPoly(1) : ZPoly();
  auto arcs = all_arcs(L);
  auto xs = L.crossings;
  for (int i : bad) {
    const Crossing x = xs[i];
    std::vector<Crossing> rest;
    for (int j = 0; j < static_cast<int>(xs.size()); ++j)
      if (j != i) rest.push_back(xs[j]);
    ArcUnion uf;
    // oriented smoothing: under-in joins over-out, over-in joins under-out
    int over_in = x.sign > 0 ? x.arcs[3] : x.arcs[1], over_out = x.sign > 0 ? x.arcs[1] : x.arcs[3];
    uf.unite(x.arcs[0], over_out);
    uf.unite(over_in, x.arcs[2]);
    // nabla(L+) - nabla(L-) = z nabla(L0)
    r = r + ZPoly::monomial(1, x.sign) * conway_rec(rebuild(rest, uf, arcs), memo);
    xs[i] = switched(x);
  }
  memo.emplace(key, r);
  return r;
}

}  // namespace detail

inline ZPoly conway_link(const FramedLink& L) {
  L.validate();
  FramedLink bare = L;
  for (auto& c : bare.components) c.framing = 0, c.color.reset(), c.role = Role::base;
  std::unordered_map<std::string, ZPoly> memo;
  return detail::conway_rec(bare, memo);
}

struct Surgery {
  int eps = 1;
  std::vector<BigInt> lambda;
};

struct SeifertPresentation {
  IntMatrix V;
  std::vector<Surgery> surgeries;

  std::size_t genus2() const { return V.rows; }
  void validate() const {
    if (V.rows != V.cols) throw ValidationError("Seifert matrix must be square");
    for (auto& s : surgeries) {
      if (s.eps != 1 && s.eps != -1) throw ValidationError("surgery eps must be +1 or -1");
      if (s.lambda.size() != V.rows) throw ValidationError("linking vector length must equal Seifert matrix size");
    }
    IntMatrix w = V;
    auto vt = V.transpose();
    for (std::size_t i = 0; i < w.a.size(); ++i) w.a[i] -= vt.a[i];
    if (V.rows && abs(determinant(w)) != 1) throw ValidationError("V - V^T is not unimodular");
  }
  IntMatrix updated(const SublinkSelector& S) const {
    if (S.size() != surgeries.size()) throw ValidationError("selector length mismatch");
    IntMatrix W = V;
    for (std::size_t k = 0; k < surgeries.size(); ++k) {
      if (!S[k]) continue;
      auto& s = surgeries[k];
      for (std::size_t i = 0; i < V.rows; ++i)
        for (std::size_t j = 0; j < V.cols; ++j) W(i, j) -= s.eps * s.lambda[i] * s.lambda[j];
    }
    return W;
  }
};

// det(t^{1/2}V - t^{-1/2}V^T) rewritten in z = t^{1/2} - t^{-1/2}
inline ZPoly alexander_to_conway(const IntMatrix& V) {
  const std::size_t n = V.rows;
  if (n == 0) return ZPoly(1);
  if (n % 2) throw ValidationError("Seifert matrix must have even size");
  const std::size_t g = n / 2;
  // f(x) = det(xV - V^T) at x = 0..n, then Newton interpolation
  std::vector<Rational> xs, ys;
  for (std::size_t x = 0; x <= n; ++x) {
    RatMatrix m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(V(i, j) * static_cast<long>(x) - V(j, i));
    xs.push_back(Rational(static_cast<long>(x)));
    ys.push_back(determinant(m));
  }
  std::vector<Rational> dd = ys;
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t i = n; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
  std::vector<Rational> coef(n + 1, 0), basis{1};
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t i = 0; i < basis.size(); ++i) coef[i] += dd[k] * basis[i];
    std::vector<Rational> nb(basis.size() + 1, 0);
    for (std::size_t i = 0; i < basis.size(); ++i) nb[i + 1] += basis[i], nb[i] -= basis[i] * xs[k];
    basis = nb;
  }
  for (std::size_t k = 0; k <= n; ++k)
    if (coef[k] != coef[n - k]) throw ValidationError("Alexander polynomial not symmetric");
  // t^j + t^{-j} as polynomials in w = z^2 + 2
  ZPoly w = ZPoly::monomial(2) + ZPoly(2);
  std::vector<ZPoly> T{ZPoly(2), w};
  for (std::size_t j = 2; j <= g; ++j) T.push_back(w * T[j - 1] - T[j - 2]);
  ZPoly r(coef[g]);
  for (std::size_t j = 1; j <= g; ++j) r += ZPoly(coef[g + j]) * T[j];
  return r;
}

inline ZPoly seifert_conway(const SeifertPresentation& P, const SublinkSelector& S) {
  return alexander_to_conway(P.updated(S));
}

inline ZPoly conway_alternating(const SeifertPresentation& P) {
  SublinkSelector all(P.surgeries.size(), true);
  ZPoly r;
  for (auto& S : all.subsets()) {
    auto c = seifert_conway(P, S);
    r += S.count() % 2 ? -c : c;
  }
  if (!r.divisible_by_power(static_cast<int>(P.surgeries.size())))
    throw std::logic_error("theorem violation: z^l does not divide the alternating Conway sum: " + r.str());
  return r;
}

inline SeifertPresentation seifert_from_json(const nlohmann::json& j) {
  SeifertPresentation P;
  auto rows = j.at("V");
  P.V = IntMatrix(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw ValidationError("Seifert matrix must be square");
    for (std::size_t k = 0; k < rows.size(); ++k) P.V(i, k) = rows[i][k].get<long>();
  }
  if (j.contains("surgeries"))
    for (auto& sj : j["surgeries"]) {
      Surgery s;
      s.eps = sj.at("eps").get<int>();
      for (auto& v : sj.at("lambda")) s.lambda.push_back(v.get<long>());
      P.surgeries.push_back(s);
    }
  P.validate();
  return P;
}

inline nlohmann::json seifert_to_json(const SeifertPresentation& P) {
  nlohmann::json j;
  j["V"] = nlohmann::json::array();
  for (std::size_t i = 0; i < P.V.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < P.V.cols; ++k) row.push_back(static_cast<long>(P.V(i, k)));
    j["V"].push_back(row);
  }
  j["surgeries"] = nlohmann::json::array();
  for (auto& s : P.surgeries) {
    nlohmann::json l = nlohmann::json::array();
    for (auto& v : s.lambda) l.push_back(static_cast<long>(v));
    j["surgeries"].push_back({{"eps", s.eps}, {"lambda", l}});
  }
  return j;
}

// genus-n surface of the unknot with n Borromean blocks
inline SeifertPresentation lambda_2n_seifert(int n) {
  SeifertPresentation P;
  P.V = IntMatrix(2 * n, 2 * n);
  for (int b = 0; b < n; ++b) P.V(2 * b, 2 * b + 1) = 1;
  for (int k = 0; k < 2 * n; ++k) {
    Surgery s;
    s.lambda.assign(2 * n, 0);
    s.lambda[k] = 1;
    P.surgeries.push_back(s);
  }
  return P;
}

// connected sum of j right trefoils
inline SeifertPresentation trefoil_power_seifert(int j) {
  SeifertPresentation P;
  P.V = IntMatrix(2 * j, 2 * j);
  for (int b = 0; b < j; ++b) {
    P.V(2 * b, 2 * b) = -1, P.V(2 * b, 2 * b + 1) = 1, P.V(2 * b + 1, 2 * b + 1) = -1;
  }
  return P;
}

}  // namespace ftinv
