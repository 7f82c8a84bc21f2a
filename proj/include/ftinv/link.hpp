#pragma once

#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"

namespace ftinv {

enum class Role { base, surgery };

// braid word: +k is sigma_k, -k its inverse, strands 1..n moving upward
struct Braid {
  int strands = 0;
  std::vector<int> word;
};

// component index of each starting strand, cycles numbered by first strand
inline std::vector<int> braid_cycles(const Braid& b) {
  std::vector<int> perm(b.strands);
  std::iota(perm.begin(), perm.end(), 0);
  for (int g : b.word) {
    int k = std::abs(g) - 1;
    if (g == 0 || k + 1 >= b.strands) throw ValidationError("braid generator out of range");
    std::swap(perm[k], perm[k + 1]);
  }
  std::vector<int> where(b.strands);
  for (int i = 0; i < b.strands; ++i) where[perm[i]] = i;
  std::vector<int> comp(b.strands, -1);
  int n = 0;
  for (int s = 0; s < b.strands; ++s) {
    if (comp[s] >= 0) continue;
    for (int cur = s; comp[cur] < 0; cur = where[cur]) comp[cur] = n;
    ++n;
  }
  return comp;
}

// drop the strands of unselected cycles
inline Braid braid_delete(const Braid& b, const std::vector<bool>& keep_comp) {
  auto comp = braid_cycles(b);
  std::vector<int> at(b.strands);
  std::iota(at.begin(), at.end(), 0);
  auto kept = [&](int pos) { return keep_comp[comp[at[pos]]]; };
  Braid out;
  for (int s = 0; s < b.strands; ++s) out.strands += keep_comp[comp[s]];
  for (int g : b.word) {
    int k = std::abs(g) - 1;
    if (kept(k) && kept(k + 1)) {
      int r = 0;
      for (int i = 0; i < k; ++i) r += kept(i);
      out.word.push_back(g > 0 ? r + 1 : -(r + 1));
    }
    std::swap(at[k], at[k + 1]);
  }
  return out;
}

struct Crossing {
  std::array<int, 4> arcs{};  // ccw from the incoming under-strand
  int sign = 1;
};

struct Component {
  std::vector<int> arcs;  // cycle in travel order
  Rational framing = 0;
  std::optional<int> color;
  Role role = Role::base;
};

// bitmask over components
struct SublinkSelector {
  std::vector<bool> bits;

  SublinkSelector() = default;
  explicit SublinkSelector(std::size_t n, bool v = false) : bits(n, v) {}
  static SublinkSelector of(std::size_t n, std::initializer_list<std::size_t> idx) {
    SublinkSelector s(n);
    for (auto i : idx) s.bits.at(i) = true;
    return s;
  }
  static SublinkSelector from_mask(std::size_t n, unsigned long mask) {
    SublinkSelector s(n);
    for (std::size_t i = 0; i < n; ++i) s.bits[i] = (mask >> i) & 1;
    return s;
  }
  std::size_t size() const { return bits.size(); }
  bool operator[](std::size_t i) const { return bits[i]; }
  std::size_t count() const { return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), true)); }
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i]) r.push_back(i);
    return r;
  }
  SublinkSelector operator|(const SublinkSelector& o) const {
    SublinkSelector r(*this);
    for (std::size_t i = 0; i < bits.size(); ++i) r.bits[i] = bits[i] || o.bits[i];
    return r;
  }
  SublinkSelector minus(const SublinkSelector& o) const {
    SublinkSelector r(*this);
    for (std::size_t i = 0; i < bits.size(); ++i) r.bits[i] = bits[i] && !o.bits[i];
    return r;
  }
  // all subsets of this selector, in mask order
  std::vector<SublinkSelector> subsets() const {
    auto idx = indices();
    std::vector<SublinkSelector> out;
    for (unsigned long m = 0; m < (1ul << idx.size()); ++m) {
      SublinkSelector s(bits.size());
      for (std::size_t k = 0; k < idx.size(); ++k)
        if ((m >> k) & 1) s.bits[idx[k]] = true;
      out.push_back(s);
    }
    return out;
  }
};

struct FramedLink {
  std::vector<Crossing> crossings;
  std::vector<Component> components;
  // closed-braid form when known; components are its cycles in order
  std::optional<Braid> braid;

  std::size_t size() const { return components.size(); }

  // arc -> (component, position in cycle)
  std::map<int, std::pair<std::size_t, std::size_t>> arc_owner() const {
    std::map<int, std::pair<std::size_t, std::size_t>> own;
    for (std::size_t c = 0; c < components.size(); ++c)
      for (std::size_t i = 0; i < components[c].arcs.size(); ++i) {
        if (!own.emplace(components[c].arcs[i], std::make_pair(c, i)).second)
          throw ValidationError("arc " + std::to_string(components[c].arcs[i]) + " listed twice in components");
      }
    return own;
  }
  std::size_t under_component(const Crossing& x, const std::map<int, std::pair<std::size_t, std::size_t>>& own) const {
    return own.at(x.arcs[0]).first;
  }
  std::size_t over_component(const Crossing& x, const std::map<int, std::pair<std::size_t, std::size_t>>& own) const {
    return own.at(x.arcs[1]).first;
  }

  void validate() const {
    auto own = arc_owner();
    std::map<int, int> uses;
    for (auto& x : crossings)
      for (int a : x.arcs) {
        if (!own.count(a)) throw ValidationError("crossing uses unknown arc " + std::to_string(a));
        ++uses[a];
      }
    for (auto& comp : components) {
      if (comp.arcs.empty()) throw ValidationError("component with no arcs");
      bool crossingless = std::all_of(comp.arcs.begin(), comp.arcs.end(), [&](int a) { return uses[a] == 0; });
      if (crossingless) {
        if (comp.arcs.size() != 1) throw ValidationError("crossingless component must be a single arc");
        continue;
      }
      for (int a : comp.arcs)
        if (uses[a] != 2) throw ValidationError("malformed diagram: arc " + std::to_string(a) + " used " + std::to_string(uses[a]) + " times");
    }
    auto next = [&](int a) {
      auto [c, i] = own.at(a);
      auto& arcs = components[c].arcs;
      return arcs[(i + 1) % arcs.size()];
    };
    for (auto& x : crossings) {
      auto [a, b, c, d] = x.arcs;
      if (x.sign != 1 && x.sign != -1) throw ValidationError("crossing sign must be +1 or -1");
      if (own.at(a).first != own.at(c).first || next(a) != c)
        throw ValidationError("under-strand arcs not consecutive in travel order");
      if (own.at(b).first != own.at(d).first) throw ValidationError("over-strand arcs on different components");
      bool pos = next(d) == b, neg = next(b) == d;
      if (!pos && !neg) throw ValidationError("over-strand arcs not consecutive");
      if (pos != neg && (pos ? 1 : -1) != x.sign)
        throw ValidationError("crossing sign inconsistent with orientation");
    }
  }

  long writhe(std::size_t comp) const {
    auto own = arc_owner();
    long w = 0;
    for (auto& x : crossings)
      if (under_component(x, own) == comp && over_component(x, own) == comp) w += x.sign;
    return w;
  }

  bool integral_framings() const {
    return std::all_of(components.begin(), components.end(),
                       [](const Component& c) { return denominator(c.framing) == 1; });
  }

  SublinkSelector role_selector(Role r) const {
    SublinkSelector s(size());
    for (std::size_t i = 0; i < size(); ++i) s.bits[i] = components[i].role == r;
    return s;
  }

  std::string encode() const;
};

inline RatMatrix linking_matrix(const FramedLink& L) {
  L.validate();
  auto own = L.arc_owner();
  std::size_t n = L.size();
  RatMatrix m(n, std::vector<Rational>(n));
  for (auto& x : L.crossings) {
    std::size_t u = L.under_component(x, own), o = L.over_component(x, own);
    if (u == o) continue;
    m[u][o] += Rational(x.sign, 2);
    m[o][u] += Rational(x.sign, 2);
  }
  for (std::size_t i = 0; i < n; ++i) m[i][i] = L.components[i].framing;
  return m;
}

inline IntMatrix integer_linking_matrix(const FramedLink& L) {
  auto m = linking_matrix(L);
  IntMatrix r(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (denominator(m[i][j]) != 1) throw ValidationError("non-integral framing");
      r(i, j) = numerator(m[i][j]);
    }
  return r;
}

// union-find over arc labels
struct ArcUnion {
  std::map<int, int> parent;
  int find(int a) {
    auto it = parent.find(a);
    if (it == parent.end()) return a;
    int r = find(it->second);
    parent[a] = r;
    return r;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// relabel arcs 1..N in component travel order
inline FramedLink compact_arcs(FramedLink L) {
  std::map<int, int> lab;
  int next = 1;
  for (auto& c : L.components)
    for (int& a : c.arcs) {
      if (!lab.count(a)) lab[a] = next++;
      a = lab[a];
    }
  for (auto& x : L.crossings)
    for (int& a : x.arcs) a = lab.at(a);
  return L;
}

inline FramedLink sublink(const FramedLink& L, const SublinkSelector& S) {
  if (S.size() != L.size()) throw ValidationError("selector length mismatch");
  auto own = L.arc_owner();
  ArcUnion uf;
  FramedLink out;
  std::vector<Crossing> kept;
  for (auto& x : L.crossings) {
    bool u = S[own.at(x.arcs[0]).first], o = S[own.at(x.arcs[1]).first];
    if (u && o) kept.push_back(x);
    else if (u) uf.unite(x.arcs[0], x.arcs[2]);
    else if (o) uf.unite(x.arcs[1], x.arcs[3]);
  }
  for (auto& x : kept) {
    Crossing y = x;
    for (int& a : y.arcs) a = uf.find(a);
    out.crossings.push_back(y);
  }
  for (std::size_t c = 0; c < L.size(); ++c) {
    if (!S[c]) continue;
    Component comp = L.components[c];
    std::vector<int> cyc;
    for (int a : comp.arcs) {
      int r = uf.find(a);
      if (cyc.empty() || cyc.back() != r) cyc.push_back(r);
    }
    while (cyc.size() > 1 && cyc.front() == cyc.back()) cyc.pop_back();
    comp.arcs = cyc;
    out.components.push_back(comp);
  }
  if (L.braid) {
    std::vector<bool> k(L.size());
    for (std::size_t c = 0; c < L.size(); ++c) k[c] = S[c];
    out.braid = braid_delete(*L.braid, k);
  }
  return compact_arcs(out);
}

inline FramedLink disjoint_union(const FramedLink& A, const FramedLink& B) {
  FramedLink out = compact_arcs(A);
  int shift = 0;
  for (auto& c : out.components)
    for (int a : c.arcs) shift = std::max(shift, a);
  FramedLink b = compact_arcs(B);
  for (auto& x : b.crossings) {
    for (int& a : x.arcs) a += shift;
    out.crossings.push_back(x);
  }
  for (auto c : b.components) {
    for (int& a : c.arcs) a += shift;
    out.components.push_back(c);
  }
  auto bf = [](const FramedLink& X) { return X.size() == 0 ? std::optional<Braid>(Braid{}) : X.braid; };
  auto ba = bf(A), bb = bf(B);
  out.braid.reset();
  if (ba && bb) {
    Braid u = *ba;
    for (int g : bb->word) u.word.push_back(g > 0 ? g + ba->strands : g - ba->strands);
    u.strands += bb->strands;
    out.braid = u;
  }
  return out;
}

// sublinks of L with alternating signs, 2^n terms
inline FormalSum<FramedLink> delta(const FramedLink& L) {
  FormalSum<FramedLink> r;
  SublinkSelector all(L.size(), true);
  for (auto& S : all.subsets()) r.add(sublink(L, S), S.count() % 2 ? -1 : 1);
  return r;
}

inline FormalSum<FramedLink> delta(const FormalSum<FramedLink>& x) {
  FormalSum<FramedLink> r;
  for (auto& [k, t] : x.terms) {
    auto d = delta(t.value);
    d *= t.coeff;
    r += d;
  }
  return r;
}

inline bool is_admissible(const SublinkSelector& sel, const FramedLink& L) {
  auto m = linking_matrix(L);
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (!sel[i]) continue;
    if (m[i][i] != 1 && m[i][i] != -1) return false;
    for (std::size_t j = 0; j < L.size(); ++j)
      if (j != i && m[i][j] != 0) return false;
  }
  return true;
}

// canonical encoding: invariant under arc relabeling and component re-indexing
inline std::string FramedLink::encode() const {
  validate();
  auto own = arc_owner();
  // arc -> its two (crossing, position) slots
  std::map<int, std::vector<std::pair<int, int>>> slots;
  for (int x = 0; x < static_cast<int>(crossings.size()); ++x)
    for (int p = 0; p < 4; ++p) slots[crossings[x].arcs[p]].push_back({x, p});
  auto other = [&](int x, int p) {
    auto& s = slots.at(crossings[x].arcs[p]);
    if (s[0] == std::make_pair(x, p)) return s[1];
    return s[0];
  };
  auto attr = [&](std::size_t c) {
    auto& comp = components[c];
    std::string s = to_str(comp.framing) + (comp.role == Role::base ? "b" : "s");
    if (comp.color) s += "c" + std::to_string(*comp.color);
    return s;
  };
  const int n = static_cast<int>(crossings.size());
  std::vector<int> piece(n, -1);
  int npieces = 0;
  for (int s = 0; s < n; ++s) {
    if (piece[s] >= 0) continue;
    std::vector<int> st{s};
    piece[s] = npieces;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int p = 0; p < 4; ++p) {
        int y = other(x, p).first;
        if (piece[y] < 0) piece[y] = npieces, st.push_back(y);
      }
    }
    ++npieces;
  }
  auto code_from = [&](int start) {
    std::map<int, int> lab;
    std::map<std::size_t, int> clab;
    std::vector<int> order{start};
    lab[start] = 0;
    std::string code;
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
      int x = order[qi];
      code += crossings[x].sign > 0 ? "+" : "-";
      for (std::size_t role : {own.at(crossings[x].arcs[0]).first, own.at(crossings[x].arcs[1]).first}) {
        if (!clab.count(role)) {
          int id = static_cast<int>(clab.size());
          clab[role] = id;
          code += "[" + attr(role) + "]";
        }
        code += "k" + std::to_string(clab[role]);
      }
      for (int p = 0; p < 4; ++p) {
        auto [y, q] = other(x, p);
        if (!lab.count(y)) {
          lab[y] = static_cast<int>(order.size());
          order.push_back(y);
        }
        code += "." + std::to_string(lab[y]) + ":" + std::to_string(q);
      }
      code += ";";
    }
    return code;
  };
  std::vector<std::string> parts;
  for (int pc = 0; pc < npieces; ++pc) {
    std::optional<std::string> best;
    for (int s = 0; s < n; ++s)
      if (piece[s] == pc) {
        auto c = code_from(s);
        if (!best || c < *best) best = c;
      }
    parts.push_back("P" + *best);
  }
  std::map<int, int> uses;
  for (auto& x : crossings)
    for (int a : x.arcs) ++uses[a];
  for (std::size_t c = 0; c < components.size(); ++c)
    if (uses[components[c].arcs[0]] == 0) parts.push_back("O[" + attr(c) + "]");
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (auto& p : parts) out += p + "|";
  return out;
}

// JSON interface
inline Rational parse_rational(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ValidationError("framing must be an integer or a \"p/q\" string");
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in framing");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw ValidationError("bad rational: " + s);
  }
}

inline FramedLink link_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("components")) throw ValidationError("link JSON needs \"components\"");
  FramedLink L;
  std::vector<int> orient;
  for (auto& cj : j.at("components")) {
    Component c;
    c.arcs = cj.at("arcs").get<std::vector<int>>();
    c.framing = cj.contains("framing") ? parse_rational(cj["framing"]) : Rational(0);
    if (cj.contains("color") && !cj["color"].is_null()) c.color = cj["color"].get<int>();
    std::string role = cj.value("role", "base");
    if (role != "base" && role != "surgery") throw ValidationError("role must be base or surgery");
    c.role = role == "base" ? Role::base : Role::surgery;
    int o = cj.value("orientation", 1);
    if (o != 1 && o != -1) throw ValidationError("orientation must be +1 or -1");
    orient.push_back(o);
    L.components.push_back(c);
  }
  if (j.contains("crossings"))
    for (auto& xj : j.at("crossings")) {
      if (!xj.is_array() || xj.size() != 5) throw ValidationError("crossing must be [a,b,c,d,sign]");
      Crossing x;
      for (int i = 0; i < 4; ++i) x.arcs[i] = xj[i].get<int>();
      auto s = xj[4];
      int sg = s.is_string() ? (s.get<std::string>() == "+" || s.get<std::string>() == "+1" ? 1
                               : s.get<std::string>() == "-" || s.get<std::string>() == "-1" ? -1 : 0)
                             : s.get<int>();
      if (sg != 1 && sg != -1) throw ValidationError("crossing sign must be + or -");
      x.sign = sg;
      L.crossings.push_back(x);
    }
  // reversed components: flip the cycle, rotate crossings where they pass under
  auto own = L.arc_owner();
  for (auto& x : L.crossings)
    for (int a : x.arcs)
      if (!own.count(a)) throw ValidationError("crossing uses unknown arc " + std::to_string(a));
  for (auto& x : L.crossings) {
    bool ru = orient[own.at(x.arcs[0]).first] < 0, ro = orient[own.at(x.arcs[1]).first] < 0;
    if (ru) std::swap(x.arcs[0], x.arcs[2]), std::swap(x.arcs[1], x.arcs[3]);
    if (ru != ro) x.sign = -x.sign;
  }
  for (std::size_t c = 0; c < L.size(); ++c)
    if (orient[c] < 0) std::reverse(L.components[c].arcs.begin(), L.components[c].arcs.end());
  L.validate();
  // optional closed-braid hint; checked against the diagram before use
  if (j.contains("braid") && !j["braid"].is_null()) {
    auto& bj = j["braid"];
    L.braid = Braid{bj.at("strands").get<int>(), bj.at("word").get<std::vector<int>>()};
    braid_cycles(*L.braid);
  }
  return L;
}

inline nlohmann::json link_to_json(const FramedLink& L) {
  nlohmann::json j;
  j["components"] = nlohmann::json::array();
  for (auto& c : L.components) {
    nlohmann::json cj;
    cj["arcs"] = c.arcs;
    cj["framing"] = to_str(c.framing);
    cj["color"] = c.color ? nlohmann::json(*c.color) : nlohmann::json(nullptr);
    cj["role"] = c.role == Role::base ? "base" : "surgery";
    cj["orientation"] = 1;
    j["components"].push_back(cj);
  }
  j["crossings"] = nlohmann::json::array();
  for (auto& x : L.crossings)
    j["crossings"].push_back({x.arcs[0], x.arcs[1], x.arcs[2], x.arcs[3], x.sign > 0 ? "+" : "-"});
  if (L.braid) j["braid"] = {{"strands", L.braid->strands}, {"word", L.braid->word}};
  return j;
}

}  // namespace ftinv
