#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "link.hpp"

namespace ftinv {

// incremental PD construction with tagged arcs
class PDBuilder {
 public:
  int fresh(int tag) {
    int a = next_++;
    tag_[a] = tag;
    return a;
  }
  void crossing(int sign, int under_in, int under_out, int over_in, int over_out) {
    Crossing x;
    x.sign = sign;
    if (sign > 0) x.arcs = {under_in, over_out, under_out, over_in};
    else x.arcs = {under_in, over_in, under_out, over_out};
    xs_.push_back(x);
    succ_[under_in] = under_out;
    succ_[over_in] = over_out;
  }
  void identify(int a, int b) { uf_.unite(a, b); }

  // one component per tag, ordered by tag
  FramedLink finish(const std::map<int, Component>& attrs) {
    FramedLink L;
    for (auto x : xs_) {
      for (int& a : x.arcs) a = uf_.find(a);
      L.crossings.push_back(x);
    }
    std::map<int, int> succ;
    for (auto [a, b] : succ_) succ[uf_.find(a)] = uf_.find(b);
    std::map<int, std::vector<int>> cycles;
    std::set<int> seen;
    for (auto& [a, t] : tag_) {
      int r = uf_.find(a);
      if (seen.count(r)) continue;
      if (cycles.count(t) && !cycles[t].empty()) {
        // arc must already lie on this tag's cycle
        continue;
      }
      std::vector<int> cyc;
      int cur = r;
      do {
        cyc.push_back(cur);
        seen.insert(cur);
        auto it = succ.find(cur);
        if (it == succ.end()) break;
        cur = it->second;
      } while (cur != r);
      cycles[t] = cyc;
    }
    for (auto& [t, cyc] : cycles) {
      Component c = attrs.count(t) ? attrs.at(t) : Component{};
      // start the cycle at its smallest arc
      auto it = std::min_element(cyc.begin(), cyc.end());
      std::rotate(cyc.begin(), it, cyc.end());
      c.arcs = cyc;
      L.components.push_back(c);
    }
    for (auto& [a, t] : tag_)
      if (!seen.count(uf_.find(a))) throw ValidationError("builder: a tag spans more than one cycle");
    L = compact_arcs(L);
    L.validate();
    return L;
  }

 private:
  int next_ = 1;
  std::map<int, int> tag_;
  std::map<int, int> succ_;
  std::vector<Crossing> xs_;
  ArcUnion uf_;
};

// closure; strand tags are the strand's starting position's cycle representative
inline FramedLink braid_closure(const Braid& b, const std::vector<Component>& attrs = {}) {
  PDBuilder pb;
  // find the permutation cycles to tag arcs per closed component
  std::vector<int> perm(b.strands);
  std::iota(perm.begin(), perm.end(), 0);
  for (int g : b.word) {
    int k = std::abs(g) - 1;
    if (k < 0 || k + 1 >= b.strands) throw ValidationError("braid generator out of range");
    std::swap(perm[k], perm[k + 1]);
  }
  // perm[pos] = starting strand now at pos; component of starting strand s
  std::vector<int> comp(b.strands, -1);
  int ncomp = 0;
  for (int s = 0; s < b.strands; ++s) {
    if (comp[s] >= 0) continue;
    int cur = s;
    while (comp[cur] < 0) {
      comp[cur] = ncomp;
      cur = perm[cur];  // strand starting at cur ends at position where... follow closure
    }
    ++ncomp;
  }
  std::vector<int> pos_strand(b.strands), bottom(b.strands), cur(b.strands);
  std::iota(pos_strand.begin(), pos_strand.end(), 0);
  for (int i = 0; i < b.strands; ++i) bottom[i] = cur[i] = pb.fresh(comp[i]);
  for (int g : b.word) {
    int k = std::abs(g) - 1;
    int L = cur[k], R = cur[k + 1];
    int tl = comp[pos_strand[k]], tr = comp[pos_strand[k + 1]];
    int Lout = pb.fresh(tl), Rout = pb.fresh(tr);
    if (g > 0) pb.crossing(+1, R, Rout, L, Lout);
    else pb.crossing(-1, L, Lout, R, Rout);
    cur[k] = Rout, cur[k + 1] = Lout;
    std::swap(pos_strand[k], pos_strand[k + 1]);
  }
  for (int i = 0; i < b.strands; ++i) pb.identify(cur[i], bottom[i]);
  std::map<int, Component> at;
  for (int c = 0; c < ncomp; ++c) at[c] = c < static_cast<int>(attrs.size()) ? attrs[c] : Component{};
  auto out = pb.finish(at);
  out.braid = b;
  return out;
}

inline Component comp_attr(Rational framing, Role role = Role::base, std::optional<int> color = std::nullopt) {
  Component c;
  c.framing = framing;
  c.role = role;
  c.color = color;
  return c;
}

// word moving strand at position `from` leftward to position `to`, passing over
inline std::vector<int> carry_over(int from, int to) {
  std::vector<int> w;
  for (int k = from - 1; k >= to; --k) w.push_back(-k);
  return w;
}

inline std::vector<int> inverse_word(std::vector<int> w) {
  std::reverse(w.begin(), w.end());
  for (int& g : w) g = -g;
  return w;
}

// pure braid inserting a Borromean tangle on 1-based strands i<j<k
inline std::vector<int> borromean_word(int i, int j, int k, int sign) {
  std::vector<int> conj = carry_over(j, i + 1), c2 = carry_over(k, i + 2);
  conj.insert(conj.end(), c2.begin(), c2.end());
  std::vector<int> w = conj;
  for (int r = 0; r < 3; ++r) {
    w.push_back(sign * i);
    w.push_back(-sign * (i + 1));
  }
  auto inv = inverse_word(conj);
  w.insert(w.end(), inv.begin(), inv.end());
  return w;
}

// clasp of linking number `sign` between strands i<j
inline std::vector<int> clasp_word(int i, int j, int sign) {
  std::vector<int> conj = carry_over(j, i + 1), w = conj;
  w.push_back(sign * i);
  w.push_back(sign * i);
  auto inv = inverse_word(conj);
  w.insert(w.end(), inv.begin(), inv.end());
  return w;
}

struct Replacement {
  int i, j, k, sign;
};

inline Braid special_link_braid(int m, int l, const std::vector<Replacement>& reps) {
  std::map<int, int> uses;
  for (auto& r : reps) {
    if (!(1 <= r.i && r.i < r.j && r.j < r.k && r.k <= l + m && r.i <= l))
      throw ValidationError("special_link: replacement indices out of order or range");
    if (r.sign != 1 && r.sign != -1) throw ValidationError("special_link: sign must be +1 or -1");
    for (int x : {r.i, r.j, r.k})
      if (x <= l && ++uses[x] > 2) throw ValidationError("special_link: surgery index used more than twice");
  }
  Braid b{m + l, {}};
  for (auto& r : reps) {
    auto w = borromean_word(r.i, r.j, r.k, r.sign);
    b.word.insert(b.word.end(), w.begin(), w.end());
  }
  return b;
}

inline FramedLink special_link(int m, int l, const std::vector<Replacement>& reps) {
  if (m < 0 || l < 0) throw ValidationError("special_link: negative size");
  auto b = special_link_braid(m, l, reps);
  std::vector<Component> at;
  for (int c = 0; c < l; ++c) at.push_back(comp_attr(1, Role::surgery));
  for (int c = 0; c < m; ++c) at.push_back(comp_attr(0, Role::base));
  if (b.strands == 0) return {};
  return braid_closure(b, at);
}

// braid cable, bundles crossing bundles; full twists at the bottom
inline Braid cable_braid(const Braid& b, const std::vector<int>& copies_of_comp, const std::vector<long>& twists) {
  auto comp = braid_cycles(b);
  std::vector<int> at(b.strands);
  std::iota(at.begin(), at.end(), 0);
  auto width = [&](int pos) { return copies_of_comp[comp[at[pos]]]; };
  auto offset = [&](int pos) {
    int o = 0;
    for (int i = 0; i < pos; ++i) o += width(i);
    return o;
  };
  Braid out;
  for (int s = 0; s < b.strands; ++s) out.strands += width(s);
  std::vector<bool> twisted(copies_of_comp.size());
  for (int s = 0; s < b.strands; ++s) {
    int c = comp[s], n = copies_of_comp[c];
    if (twisted[c] || n < 2) continue;
    twisted[c] = true;
    int o = offset(s);
    for (long t = 0; t < std::abs(twists[c]); ++t)
      for (int r = 0; r < n; ++r)
        for (int g = 1; g < n; ++g) out.word.push_back(twists[c] > 0 ? o + g : -(o + g));
  }
  for (int g : b.word) {
    int k = std::abs(g) - 1, P = offset(k), nl = width(k), nr = width(k + 1);
    for (int i = nl - 1; i >= 0; --i)
      for (int j = 0; j < nr; ++j) out.word.push_back(g > 0 ? P + i + j + 1 : -(P + i + j + 1));
    std::swap(at[k], at[k + 1]);
  }
  return out;
}

// L's braid form, rebuilt and checked against the diagram; nullopt if absent or stale
inline std::optional<FramedLink> verified_braid_form(const FramedLink& L) {
  if (!L.braid) return std::nullopt;
  try {
    auto cyc = braid_cycles(*L.braid);
    int n = cyc.empty() ? 0 : *std::max_element(cyc.begin(), cyc.end()) + 1;
    if (static_cast<std::size_t>(n) != L.size()) return std::nullopt;
    auto B = braid_closure(*L.braid, L.components);
    if (B.encode() != L.encode()) return std::nullopt;
    return B;
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

// c_i parallel copies per component; twists realize framing-a push-offs unless blackboard
inline FramedLink cable(const FramedLink& L0, const std::vector<int>& c, bool blackboard = false) {
  if (c.size() != L0.size()) throw ValidationError("cable: multi-index length mismatch");
  for (int v : c)
    if (v < 0) throw ValidationError("cable: negative entry");
  SublinkSelector keep(L0.size());
  std::vector<int> cc;
  for (std::size_t i = 0; i < L0.size(); ++i)
    if (c[i] > 0) keep.bits[i] = true, cc.push_back(c[i]);
  FramedLink L = sublink(L0, keep);
  if (!blackboard && !L.integral_framings()) throw ValidationError("cable: non-integral framing");
  if (auto B = verified_braid_form(L)) {
    std::vector<long> tw(L.size());
    std::vector<Component> at;
    for (std::size_t i = 0; i < L.size(); ++i) {
      tw[i] = blackboard ? 0 : static_cast<long>(numerator(L.components[i].framing)) - L.writhe(i);
      for (int k = 0; k < cc[i]; ++k) at.push_back(L.components[i]);
    }
    return braid_closure(cable_braid(*B->braid, cc, tw), at);
  }
  auto own = L.arc_owner();
  PDBuilder pb;
  // tag of copy k (0-based) of component i
  std::vector<int> base_tag(L.size());
  int ntags = 0;
  for (std::size_t i = 0; i < L.size(); ++i) base_tag[i] = ntags, ntags += cc[i];
  std::map<std::pair<int, int>, int> start_lab, end_lab;  // (arc, copy) -> label
  for (std::size_t i = 0; i < L.size(); ++i)
    for (int a : L.components[i].arcs)
      for (int k = 0; k < cc[i]; ++k) start_lab[{a, k}] = end_lab[{a, k}] = pb.fresh(base_tag[i] + k);
  std::map<int, int> uses;
  for (auto& x : L.crossings)
    for (int a : x.arcs) ++uses[a];
  // twist boxes on the first arc of each component
  for (std::size_t i = 0; i < L.size(); ++i) {
    long twists = blackboard ? 0 : static_cast<long>(numerator(L.components[i].framing)) - L.writhe(i);
    int n = cc[i];
    int a0 = L.components[i].arcs[0];
    bool free_circle = uses[a0] == 0;
    if (twists == 0 || n == 1) {
      continue;
    }
    std::vector<int> cur(n), tags(n);
    for (int k = 0; k < n; ++k) cur[k] = start_lab[{a0, k}], tags[k] = base_tag[i] + k;
    int sg = twists > 0 ? 1 : -1;
    for (long t = 0; t < std::abs(twists); ++t)
      for (int r = 0; r < n; ++r)
        for (int g = 0; g + 1 < n; ++g) {
          int Lf = cur[g], R = cur[g + 1];
          int Lout = pb.fresh(tags[g]), Rout = pb.fresh(tags[g + 1]);
          if (sg > 0) pb.crossing(+1, R, Rout, Lf, Lout);
          else pb.crossing(-1, Lf, Lout, R, Rout);
          cur[g] = Rout, cur[g + 1] = Lout;
          std::swap(tags[g], tags[g + 1]);
        }
    for (int k = 0; k < n; ++k) {
      if (free_circle) pb.identify(cur[k], start_lab[{a0, k}]);
      else end_lab[{a0, k}] = cur[k];
    }
  }
  for (auto& x : L.crossings) {
    auto [a, b, cl, d] = x.arcs;
    int nu = cc[own.at(a).first], no = cc[own.at(b).first];
    // vertical segments V[x][y], horizontal H[y][x]
    std::vector<std::vector<int>> V(nu, std::vector<int>(no + 1)), H(no, std::vector<int>(nu + 1));
    int tu = base_tag[own.at(a).first], to = base_tag[own.at(b).first];
    for (int xi = 0; xi < nu; ++xi) {
      V[xi][0] = end_lab.at({a, xi});
      V[xi][no] = start_lab.at({cl, xi});
      for (int y = 1; y < no; ++y) V[xi][y] = pb.fresh(tu + xi);
    }
    for (int y = 0; y < no; ++y) {
      int k = x.sign > 0 ? no - 1 - y : y;
      if (x.sign > 0) H[y][0] = end_lab.at({d, k}), H[y][nu] = start_lab.at({b, k});
      else H[y][nu] = end_lab.at({b, k}), H[y][0] = start_lab.at({d, k});
      for (int xi = 1; xi < nu; ++xi) H[y][xi] = pb.fresh(to + k);
    }
    for (int xi = 0; xi < nu; ++xi)
      for (int y = 0; y < no; ++y) {
        int ui = V[xi][y], uo = V[xi][y + 1];
        if (x.sign > 0) pb.crossing(+1, ui, uo, H[y][xi], H[y][xi + 1]);
        else pb.crossing(-1, ui, uo, H[y][xi + 1], H[y][xi]);
      }
  }
  std::map<int, Component> at;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (int k = 0; k < cc[i]; ++k) at[base_tag[i] + k] = L.components[i];
  return pb.finish(at);
}

}  // namespace ftinv
