#pragma once

#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace ftinv {

inline constexpr int kDiagramDegreeCap = 6;
// coefficient of X in I - H + kIhxXSign*X; the planar clockwise reading gives +1,
// the degree-5 closed rank of the table requires -1
inline constexpr int kIhxXSign = -1;

// colour 0 is white; an end of -1 is a univalent vertex
struct GraphEdge {
  std::array<int, 2> end{-1, -1};
  int color = 0;
};

// half-edge h lies on edge h/2 at end h%2
struct AdmissibleGraph {
  int colors = 0;  // m
  std::vector<GraphEdge> edges;
  std::vector<std::array<int, 3>> rot;  // cyclic order of half-edges at each trivalent vertex

  int trivalent() const { return static_cast<int>(rot.size()); }
  int degree() const {
    int w = 0;
    for (auto& e : edges) w += e.color == 0;
    return w;
  }
  bool internal(int e) const { return edges[e].end[0] >= 0 && edges[e].end[1] >= 0; }
  bool isolated(int e) const { return edges[e].end[0] < 0 && edges[e].end[1] < 0; }
  bool closed() const {
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].color == 0 && !internal(static_cast<int>(e))) return false;
    return true;
  }
  int vertex_of(int h) const { return edges[h / 2].end[h % 2]; }
  int slot_of(int h) const {
    int v = vertex_of(h);
    for (int k = 0; k < 3; ++k)
      if (rot[v][k] == h) return k;
    throw std::logic_error("graph: half-edge missing from rotation");
  }
  // non-isolated edges of colour j
  int colored_count(int j) const {
    int c = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) c += edges[e].color == j && !isolated(static_cast<int>(e));
    return c;
  }

  void validate() const {
    if (colors < 0) throw ValidationError("graph: negative colour count");
    std::vector<int> seen(2 * edges.size(), 0);
    for (std::size_t v = 0; v < rot.size(); ++v) {
      int white = 0;
      std::set<int> cols;
      for (int h : rot[v]) {
        if (h < 0 || h >= static_cast<int>(seen.size()) || vertex_of(h) != static_cast<int>(v))
          throw ValidationError("graph: rotation inconsistent with edges");
        ++seen[h];
        int c = edges[h / 2].color;
        if (c == 0) ++white;
        else if (!cols.insert(c).second) throw ValidationError("graph: two edges of one colour at a vertex");
      }
      if (!white) throw ValidationError("graph: trivalent vertex without white edge");
    }
    for (std::size_t h = 0; h < seen.size(); ++h)
      if ((vertex_of(static_cast<int>(h)) >= 0) != (seen[h] == 1)) throw ValidationError("graph: dangling half-edge");
    std::vector<int> per(colors + 1, 0), iso(colors + 1, 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto& E = edges[e];
      if (E.color < 0 || E.color > colors) throw ValidationError("graph: colour out of range");
      if (E.end[0] >= 0 && E.end[0] == E.end[1]) throw ValidationError("graph: loop edge");
      if (E.color > 0 && internal(static_cast<int>(e))) throw ValidationError("graph: internal coloured edge");
      ++per[E.color];
      if (E.color > 0 && isolated(static_cast<int>(e))) ++iso[E.color];
    }
    for (int j = 1; j <= colors; ++j) {
      if (per[j] == 0) throw ValidationError("graph: empty colour " + std::to_string(j));
      if (iso[j] && per[j] > 1) throw ValidationError("graph: isolated coloured edge not alone in its colour");
    }
  }

  std::string encode() const;
};

namespace detail {

// components as (vertices, edges)
inline std::vector<std::pair<std::vector<int>, std::vector<int>>> components(const AdmissibleGraph& g) {
  int n = g.trivalent();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto& e : g.edges)
    if (e.end[0] >= 0 && e.end[1] >= 0) parent[find(e.end[0])] = find(e.end[1]);
  std::map<int, std::pair<std::vector<int>, std::vector<int>>> by;
  for (int v = 0; v < n; ++v) by[find(v)].first.push_back(v);
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto& E = g.edges[e];
    int v = E.end[0] >= 0 ? E.end[0] : E.end[1];
    if (v < 0) out.push_back({{}, {static_cast<int>(e)}});
    else by[find(v)].second.push_back(static_cast<int>(e));
  }
  for (auto& [r, c] : by) out.push_back(c);
  return out;
}

// traversal code from a rooted half-edge slot, deterministic under the rotation system
inline std::vector<int> rooted_code(const AdmissibleGraph& g, int root, int start_slot, std::size_t nverts) {
  std::vector<int> label(g.trivalent(), -1), start(g.trivalent(), 0), order;
  label[root] = 0, start[root] = start_slot, order.push_back(root);
  std::vector<int> code{static_cast<int>(nverts)};
  for (std::size_t i = 0; i < order.size(); ++i) {
    int x = order[i];
    for (int j = 0; j < 3; ++j) {
      int h = g.rot[x][(start[x] + j) % 3];
      int o = h ^ 1, w = g.vertex_of(o);
      code.push_back(g.edges[h / 2].color);
      if (w < 0) {
        code.push_back(-1), code.push_back(-1);
        continue;
      }
      int s = g.slot_of(o);
      if (label[w] < 0) {
        label[w] = static_cast<int>(order.size()), start[w] = s;
        order.push_back(w);
      }
      code.push_back(label[w]);
      code.push_back((s - start[w] + 3) % 3);
    }
  }
  return code;
}

inline std::vector<std::vector<int>> component_codes(const AdmissibleGraph& g) {
  std::vector<std::vector<int>> codes;
  for (auto& [vs, es] : components(g)) {
    if (vs.empty()) {
      codes.push_back({0, g.edges[es[0]].color});
      continue;
    }
    std::vector<int> best;
    for (int v : vs)
      for (int k = 0; k < 3; ++k) {
        auto c = rooted_code(g, v, k, vs.size());
        if (best.empty() || c < best) best = std::move(c);
      }
    codes.push_back(best);
  }
  std::sort(codes.begin(), codes.end());
  return codes;
}

}  // namespace detail

inline std::string AdmissibleGraph::encode() const {
  std::string s = "m" + std::to_string(colors);
  for (auto& c : detail::component_codes(*this)) {
    s += "|";
    for (int x : c) s += std::to_string(x) + ",";
  }
  return s;
}

// incremental construction; vertices receive half-edges in insertion order
class GraphBuilder {
 public:
  explicit GraphBuilder(int m) { g_.colors = m; }
  int vertex() {
    g_.rot.push_back({-1, -1, -1});
    fill_.push_back(0);
    return static_cast<int>(g_.rot.size()) - 1;
  }
  int edge(int u, int v, int color) {
    int e = static_cast<int>(g_.edges.size());
    g_.edges.push_back({{u, v}, color});
    if (u >= 0) g_.rot[u][fill_[u]++] = 2 * e;
    if (v >= 0) g_.rot[v][fill_[v]++] = 2 * e + 1;
    return e;
  }
  // reverse the cyclic order at v
  void flip(int v) { std::swap(g_.rot[v][1], g_.rot[v][2]); }
  AdmissibleGraph build() const {
    g_.validate();
    return g_;
  }
  // pieces that may lack colours
  AdmissibleGraph build_unchecked() const { return g_; }

 private:
  AdmissibleGraph g_;
  std::vector<int> fill_;
};

inline AdmissibleGraph flip_vertex(AdmissibleGraph g, int v) {
  std::swap(g.rot[v][1], g.rot[v][2]);
  return g;
}

inline AdmissibleGraph disjoint_union(const AdmissibleGraph& a, const AdmissibleGraph& b) {
  AdmissibleGraph g = a;
  g.colors = std::max(a.colors, b.colors);
  int eo = static_cast<int>(a.edges.size()), vo = a.trivalent();
  for (auto e : b.edges) {
    for (int& x : e.end)
      if (x >= 0) x += vo;
    g.edges.push_back(e);
  }
  for (auto r : b.rot) {
    for (int& h : r) h += 2 * eo;
    g.rot.push_back(r);
  }
  return g;
}

// delete edges and vertices, compacting indices; removed vertices leave univalent ends
inline AdmissibleGraph remove_parts(const AdmissibleGraph& g, const std::vector<bool>& drop_vertex,
                                    const std::vector<bool>& drop_edge) {
  std::vector<int> vmap(g.trivalent(), -1), emap(g.edges.size(), -1);
  AdmissibleGraph out;
  out.colors = g.colors;
  int nv = 0;
  for (int v = 0; v < g.trivalent(); ++v)
    if (!drop_vertex[v]) vmap[v] = nv++;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (drop_edge[e]) continue;
    emap[e] = static_cast<int>(out.edges.size());
    GraphEdge E = g.edges[e];
    for (int& x : E.end) x = x >= 0 ? vmap[x] : -1;
    out.edges.push_back(E);
  }
  for (int v = 0; v < g.trivalent(); ++v) {
    if (drop_vertex[v]) continue;
    std::array<int, 3> r{};
    for (int k = 0; k < 3; ++k) {
      int h = g.rot[v][k];
      if (emap[h / 2] < 0) throw std::logic_error("graph: dropped edge still attached");
      r[k] = 2 * emap[h / 2] + h % 2;
    }
    out.rot.push_back(r);
  }
  return out;
}

// split open the vertices in S, then prune isolated coloured edges while the colour keeps another edge
inline AdmissibleGraph split_open(const AdmissibleGraph& g, const std::vector<bool>& S) {
  AdmissibleGraph h = remove_parts(g, S, std::vector<bool>(g.edges.size(), false));
  std::vector<int> per(h.colors + 1, 0);
  for (auto& e : h.edges) ++per[e.color];
  std::vector<bool> drop(h.edges.size(), false);
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    int c = h.edges[e].color;
    if (c > 0 && h.isolated(static_cast<int>(e)) && per[c] > 1) drop[e] = true, --per[c];
  }
  return remove_parts(h, std::vector<bool>(h.trivalent(), false), drop);
}

// d(G) = sum over S of (-1)^s G_S
inline FormalSum<AdmissibleGraph> deframe(const AdmissibleGraph& g, int sign = -1) {
  FormalSum<AdmissibleGraph> r;
  int t = g.trivalent();
  if (t > 20) throw EngineCapError("deframe: too many trivalent vertices");
  for (unsigned long mask = 0; mask < (1ul << t); ++mask) {
    std::vector<bool> S(t);
    int s = 0;
    for (int v = 0; v < t; ++v) S[v] = (mask >> v) & 1, s += S[v];
    r.add(split_open(g, S), (s % 2 && sign < 0) ? -1 : 1);
  }
  return r;
}

inline FormalSum<AdmissibleGraph> deframe(const FormalSum<AdmissibleGraph>& x, int sign = -1) {
  FormalSum<AdmissibleGraph> r;
  for (auto& [k, t] : x.terms) {
    auto d = deframe(t.value, sign);
    d *= t.coeff;
    r += d;
  }
  return r;
}

// sum over S of G_S, the two-sided inverse of deframe
inline FormalSum<AdmissibleGraph> deframe_inverse(const AdmissibleGraph& g) { return deframe(g, +1); }

namespace detail {

struct ComponentShape {
  AdmissibleGraph g;
  int white;
  unsigned colors_used;
};

// connected components with trivalent vertices and at most wmax white edges
inline std::vector<ComponentShape> connected_shapes(int m, int wmax, bool closed) {
  std::map<std::string, ComponentShape> found;
  for (int t = 1; t <= wmax + 1; ++t) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < t; ++i)
      for (int j = i + 1; j < t; ++j) pairs.push_back({i, j});
    std::vector<int> mult(pairs.size(), 0), deg(t, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pi, int internal) {
      if (pi == pairs.size()) {
        if (internal < t - 1) return;
        // connected?
        std::vector<int> par(t);
        std::iota(par.begin(), par.end(), 0);
        std::function<int(int)> f = [&](int x) { return par[x] == x ? x : par[x] = f(par[x]); };
        for (std::size_t q = 0; q < pairs.size(); ++q)
          if (mult[q]) par[f(pairs[q].first)] = f(pairs[q].second);
        for (int v = 0; v < t; ++v)
          if (f(v) != f(0)) return;
        // leg multisets per vertex: number of white legs and a colour subset
        std::vector<std::vector<std::vector<int>>> legs(t);
        for (int v = 0; v < t; ++v) {
          int r = 3 - deg[v];
          for (unsigned sub = 0; sub < (1u << m); ++sub) {
            int k = __builtin_popcount(sub);
            if (k > r) continue;
            int wl = r - k;
            if (closed && wl > 0) continue;
            if (deg[v] == 0 && wl == 0) continue;
            std::vector<int> l(wl, 0);
            for (int c = 0; c < m; ++c)
              if (sub >> c & 1) l.push_back(c + 1);
            legs[v].push_back(l);
          }
          if (legs[v].empty()) return;
        }
        std::vector<std::size_t> pick(t, 0);
        while (true) {
          int white = internal;
          unsigned used = 0;
          for (int v = 0; v < t; ++v)
            for (int c : legs[v][pick[v]]) {
              if (c == 0) ++white;
              else used |= 1u << (c - 1);
            }
          if (white <= wmax) {
            for (unsigned long o = 0; o < (1ul << t); ++o) {
              GraphBuilder b(m);
              for (int v = 0; v < t; ++v) b.vertex();
              for (std::size_t q = 0; q < pairs.size(); ++q)
                for (int k = 0; k < mult[q]; ++k) b.edge(pairs[q].first, pairs[q].second, 0);
              for (int v = 0; v < t; ++v)
                for (int c : legs[v][pick[v]]) b.edge(v, -1, c);
              for (int v = 0; v < t; ++v)
                if (o >> v & 1) b.flip(v);
              AdmissibleGraph g = b.build_unchecked();
              auto key = g.encode();
              if (!found.count(key)) found.emplace(key, ComponentShape{g, white, used});
            }
          }
          int v = 0;
          while (v < t && ++pick[v] == legs[v].size()) pick[v] = 0, ++v;
          if (v == t) break;
        }
        return;
      }
      auto [i, j] = pairs[pi];
      for (int k = 0; k <= 3; ++k) {
        if (deg[i] + k > 3 || deg[j] + k > 3 || internal + k > wmax) break;
        mult[pi] = k, deg[i] += k, deg[j] += k;
        rec(pi + 1, internal + k);
        deg[i] -= k, deg[j] -= k;
      }
      mult[pi] = 0;
    };
    rec(0, 0);
  }
  std::vector<ComponentShape> out;
  for (auto& [k, c] : found) out.push_back(c);
  return out;
}

}  // namespace detail

// G^m_l up to isomorphism, sorted by encoding
inline std::vector<AdmissibleGraph> enumerate_graphs(int m, int l, bool closed_only = false) {
  if (m < 1) throw ValidationError("enumerate_graphs: m must be >= 1");
  if (l < 0) throw ValidationError("enumerate_graphs: negative degree");
  if (l > kDiagramDegreeCap) throw EngineCapError("enumerate_graphs: degree above cap " + std::to_string(kDiagramDegreeCap));
  auto shapes = detail::connected_shapes(m, l, closed_only);
  if (!closed_only) {
    GraphBuilder b(m);
    b.edge(-1, -1, 0);
    shapes.push_back({b.build_unchecked(), 1, 0});
  }
  std::map<std::string, AdmissibleGraph> out;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, int, unsigned)> rec = [&](std::size_t from, int left, unsigned used) {
    if (left == 0) {
      AdmissibleGraph g;
      g.colors = m;
      for (std::size_t i : chosen) g = disjoint_union(g, shapes[i].g);
      for (int c = 1; c <= m; ++c)
        if (!(used >> (c - 1) & 1)) {
          GraphBuilder s(m);
          s.edge(-1, -1, c);
          g = disjoint_union(g, s.build_unchecked());
        }
      g.colors = m;
      g.validate();
      out.emplace(g.encode(), g);
      return;
    }
    for (std::size_t i = from; i < shapes.size(); ++i) {
      if (shapes[i].white > left) continue;
      chosen.push_back(i);
      rec(i, left - shapes[i].white, used | shapes[i].colors_used);
      chosen.pop_back();
    }
  };
  rec(0, l, 0);
  std::vector<AdmissibleGraph> v;
  for (auto& [k, g] : out) v.push_back(g);
  return v;
}

// Relations

struct RelationSet {
  std::vector<FormalSum<AdmissibleGraph>> AS, S, IHX, I, Y;

  std::vector<const FormalSum<AdmissibleGraph>*> all() const {
    std::vector<const FormalSum<AdmissibleGraph>*> v;
    for (auto* fam : {&AS, &S, &IHX, &I, &Y})
      for (auto& r : *fam) v.push_back(&r);
    return v;
  }
};

namespace detail {

inline FormalSum<AdmissibleGraph> two_term(const AdmissibleGraph& a, long ca, const AdmissibleGraph& b, long cb) {
  FormalSum<AdmissibleGraph> r;
  r.add(a, ca);
  r.add(b, cb);
  return r;
}

// rebuild with vertex u carrying half-edges (x,y,z) and v carrying (p,q,r)
inline AdmissibleGraph reattach(AdmissibleGraph g, int u, std::array<int, 3> at_u, int v, std::array<int, 3> at_v) {
  for (int h : at_u) g.edges[h / 2].end[h % 2] = u;
  for (int h : at_v) g.edges[h / 2].end[h % 2] = v;
  g.rot[u] = at_u, g.rot[v] = at_v;
  return g;
}

// rotation at v starting from half-edge h
inline std::array<int, 3> rotate_to(const AdmissibleGraph& g, int v, int h) {
  auto r = g.rot[v];
  while (r[0] != h) std::rotate(r.begin(), r.begin() + 1, r.end());
  return r;
}

inline bool y_shaped(const AdmissibleGraph& g, const std::vector<int>& vs, const std::vector<int>& es) {
  if (vs.size() != 1 || es.size() != 3) return false;
  for (int e : es)
    if (g.internal(e)) return false;
  return true;
}

// theta, vertices oppositely oriented, with colours i (and j) split open
inline AdmissibleGraph theta_shape(int m, int i, int j) {
  GraphBuilder b(m);
  int a = b.vertex(), c = b.vertex();
  if (i == 0) {
    b.edge(a, c, 0), b.edge(a, c, 0), b.edge(a, c, 0);
    b.flip(c);
  } else if (j == 0) {
    b.edge(a, c, 0), b.edge(a, c, 0);
    b.edge(a, -1, i), b.edge(c, -1, i);
    b.flip(c);
  } else {
    b.edge(a, c, 0);
    b.edge(a, -1, i), b.edge(a, -1, j);
    b.edge(c, -1, j), b.edge(c, -1, i);
  }
  return b.build_unchecked();
}

// the theta-shaped closed replacement of a Y component, vertices oppositely oriented
inline AdmissibleGraph theta_replacement(const AdmissibleGraph& g, int v, const std::vector<int>& es) {
  std::vector<bool> dv(g.trivalent(), false), de(g.edges.size(), false);
  dv[v] = true;
  std::vector<int> cols;
  for (int e : es) de[e] = true, cols.push_back(g.edges[e].color);
  std::sort(cols.begin(), cols.end());
  AdmissibleGraph rest = remove_parts(g, dv, de);
  std::erase(cols, 0);
  AdmissibleGraph th = theta_shape(g.colors, cols.size() > 0 ? cols[0] : 0, cols.size() > 1 ? cols[1] : 0);
  return disjoint_union(rest, th);
}

}  // namespace detail

inline RelationSet build_relations(const std::vector<AdmissibleGraph>& basis) {
  RelationSet R;
  for (auto& g : basis) {
    int t = g.trivalent();
    for (int v = 0; v < t; ++v) {
      bool has_internal = false, has_external_white = false;
      for (int h : g.rot[v]) {
        int e = h / 2;
        if (g.internal(e)) has_internal = true;
        else if (g.edges[e].color == 0) has_external_white = true;
      }
      if (has_internal) R.AS.push_back(detail::two_term(g, 1, flip_vertex(g, v), 1));
      if (has_external_white) R.S.push_back(detail::two_term(g, 1, flip_vertex(g, v), -1));
    }
    for (int j = 1; j <= g.colors; ++j) {
      AdmissibleGraph f = g;
      bool any = false;
      for (int v = 0; v < t; ++v)
        for (int h : g.rot[v])
          if (g.edges[h / 2].color == j) {
            f = flip_vertex(f, v), any = true;
            break;
          }
      if (any) R.S.push_back(detail::two_term(g, 1, f, -1));
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (!g.internal(static_cast<int>(e)) || g.edges[e].color != 0) continue;
      int u = g.edges[e].end[0], v = g.edges[e].end[1];
      int eu = 2 * static_cast<int>(e), ev = eu + 1;
      auto ru = detail::rotate_to(g, u, eu), rv = detail::rotate_to(g, v, ev);
      int a = ru[1], b = ru[2], c = rv[1], d = rv[2];
      std::set<int> distinct{a / 2, b / 2, c / 2, d / 2};
      if (distinct.size() != 4) continue;
      std::set<int> cols;
      bool ok = true;
      for (int h : {a, b, c, d}) {
        int col = g.edges[h / 2].color;
        if (col > 0 && !cols.insert(col).second) ok = false;
      }
      if (!ok) continue;
      // planar reading: I has u=(A,B,e), v=(e,D,C); H has (A,e,C),(e,B,D); X has (A,e,D),(e,B,C)
      int A = a, B = b, C = d, D = c;
      auto H = detail::reattach(g, u, {A, eu, C}, v, {ev, B, D});
      auto X = detail::reattach(g, u, {A, eu, D}, v, {ev, B, C});
      FormalSum<AdmissibleGraph> r;
      r.add(g, 1);
      r.add(H, -1);
      r.add(X, kIhxXSign);
      R.IHX.push_back(r);
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (g.edges[e].color == 0 && g.isolated(static_cast<int>(e))) {
        FormalSum<AdmissibleGraph> r;
        r.add(g, 1);
        R.I.push_back(r);
        break;
      }
    for (auto& [vs, es] : detail::components(g))
      if (detail::y_shaped(g, vs, es)) R.Y.push_back(detail::two_term(g, 2, detail::theta_replacement(g, vs[0], es), -1));
  }
  return R;
}

inline RelationSet build_relations(int m, int l, bool closed_only = false) {
  auto basis = enumerate_graphs(m, l, closed_only);
  auto R = build_relations(basis);
  if (closed_only) R.I.clear(), R.Y.clear();
  return R;
}

struct QuotientStructure {
  long rank = 0;
  std::vector<BigInt> torsion;
};

// relation lattice in coordinates of a graph basis
class GraphQuotient {
 public:
  GraphQuotient(int m, int l, bool closed_only) : m_(m), l_(l), closed_(closed_only) {
    basis_ = enumerate_graphs(m, l, closed_only);
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i].encode()] = i;
    rels_ = build_relations(basis_);
    if (closed_only) rels_.I.clear(), rels_.Y.clear();
    lattice_ = Lattice(basis_.size());
    for (auto* r : rels_.all()) {
      auto v = vec(*r);
      if (!std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; })) lattice_.add(v);
    }
  }

  const std::vector<AdmissibleGraph>& basis() const { return basis_; }
  const RelationSet& relations() const { return rels_; }
  const Lattice& relation_lattice() const { return lattice_; }
  std::size_t index(const AdmissibleGraph& g) const {
    auto it = index_.find(g.encode());
    if (it == index_.end()) throw ValidationError("graph not in the degree-" + std::to_string(l_) + " basis");
    return it->second;
  }

  std::vector<BigInt> vec(const FormalSum<AdmissibleGraph>& x) const {
    std::vector<BigInt> v(basis_.size(), BigInt(0));
    for (auto& [k, t] : x.terms) {
      auto it = index_.find(k);
      if (it == index_.end()) throw std::logic_error("relation term outside the graph basis: " + k);
      v[it->second] += t.coeff;
    }
    return v;
  }
  std::vector<BigInt> unit(const AdmissibleGraph& g, long k = 1) const {
    std::vector<BigInt> v(basis_.size(), BigInt(0));
    v[index(g)] = k;
    return v;
  }

  QuotientStructure structure() const {
    QuotientStructure q;
    IntMatrix M(lattice_.basis.size(), basis_.size());
    for (std::size_t i = 0; i < lattice_.basis.size(); ++i)
      for (std::size_t j = 0; j < basis_.size(); ++j) M(i, j) = lattice_.basis[i][j];
    auto snf = smith_normal_form(M);
    q.rank = static_cast<long>(basis_.size() - snf.rank);
    for (auto& f : snf.factors)
      if (f > 1) q.torsion.push_back(f);
    return q;
  }

  // is x zero in the quotient
  bool vanishes(const std::vector<BigInt>& x) const { return lattice_.contains(x); }

  // rank over Q of the images of the given vectors in the quotient
  std::size_t image_rank(const std::vector<std::vector<BigInt>>& xs) const {
    Lattice L = lattice_;
    std::size_t before = L.basis.size();
    for (auto& x : xs) L.add(x);
    return L.basis.size() - before;
  }

 private:
  int m_, l_;
  bool closed_;
  std::vector<AdmissibleGraph> basis_;
  std::map<std::string, std::size_t> index_;
  RelationSet rels_;
  Lattice lattice_{0};
};

inline QuotientStructure quotient_structure(int m, int l, bool closed_only) {
  return GraphQuotient(m, l, closed_only).structure();
}

inline std::vector<BigInt> odd_part(const std::vector<BigInt>& torsion) {
  std::vector<BigInt> out;
  for (auto f : torsion) {
    while (f % 2 == 0) f /= 2;
    if (f > 1) out.push_back(f);
  }
  return out;
}

// Named generators for m = 1

inline AdmissibleGraph graph_S(int m = 1) {
  GraphBuilder b(m);
  for (int c = 1; c <= m; ++c) b.edge(-1, -1, c);
  return b.build();
}

// theta with colour i split open (W), or all white, or colours i,j split (H)
inline AdmissibleGraph theta_graph(int m, int i = 0, int j = 0) { return detail::theta_shape(m, i, j); }


// pad missing colours with isolated edges
inline AdmissibleGraph complete_colors(AdmissibleGraph g) {
  for (int c = 1; c <= g.colors; ++c)
    if (std::none_of(g.edges.begin(), g.edges.end(), [&](const GraphEdge& e) { return e.color == c; })) {
      GraphBuilder s(g.colors);
      s.edge(-1, -1, c);
      g = disjoint_union(g, s.build_unchecked());
    }
  g.validate();
  return g;
}

inline AdmissibleGraph graph_W() { return complete_colors(theta_graph(1, 1)); }
inline AdmissibleGraph graph_Theta() { return complete_colors(theta_graph(1)); }

// square of white edges with a colour-1 leg at each corner
inline AdmissibleGraph graph_C() {
  GraphBuilder b(1);
  int v[4];
  for (int& x : v) x = b.vertex();
  for (int k = 0; k < 4; ++k) b.edge(v[k], v[(k + 1) % 4], 0);
  for (int k = 0; k < 4; ++k) b.edge(v[k], -1, 1);
  return b.build();
}

// disjoint unions of thetas (W, white theta, H types) in degree l, padded with isolated colours
inline std::vector<AdmissibleGraph> theta_unions(int m, int l) {
  struct Piece {
    AdmissibleGraph g;
    int w;
  };
  std::vector<Piece> pieces{{theta_graph(m), 3}};
  for (int i = 1; i <= m; ++i) {
    pieces.push_back({theta_graph(m, i), 2});
    for (int j = i + 1; j <= m; ++j) pieces.push_back({theta_graph(m, i, j), 1});
  }
  std::map<std::string, AdmissibleGraph> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
    if (left == 0) {
      if (pick.empty()) return;
      AdmissibleGraph g;
      g.colors = m;
      for (auto i : pick) g = disjoint_union(g, pieces[i].g);
      g = complete_colors(g);
      out.emplace(g.encode(), g);
      return;
    }
    for (std::size_t i = from; i < pieces.size(); ++i)
      if (pieces[i].w <= left) {
        pick.push_back(i);
        rec(i, left - pieces[i].w);
        pick.pop_back();
      }
  };
  rec(0, l);
  std::vector<AdmissibleGraph> v;
  for (auto& [k, g] : out) v.push_back(g);
  return v;
}

// all even colour counts
inline bool in_even_class(const AdmissibleGraph& g) {
  for (int j = 1; j <= g.colors; ++j)
    if (g.colored_count(j) % 2) return false;
  return true;
}

inline bool theta_union_independence(int m, int l) {
  GraphQuotient Q(m, l, true);
  auto T = theta_unions(m, l);
  std::vector<std::vector<BigInt>> xs;
  for (auto& g : T) xs.push_back(Q.unit(g));
  return Q.image_rank(xs) == T.size();
}

}  // namespace ftinv
