#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "kauffman.hpp"

namespace ftinv {

// Recoupling at A of order p. Colours are strand counts 0..p-2 carrying the projector.
class Recoupling {
 public:
  explicit Recoupling(long p) : p_(p) {
    qint_.push_back(CyclotomicInt(p));
    fact_.push_back(CyclotomicInt(p, 1));
    for (long n = 1; n <= 2 * p; ++n) {
      CyclotomicInt q(p);
      for (long i = 0; i < n; ++i) q += a_power(p, 2 * (n - 1) - 4 * i);
      qint_.push_back(q);
      fact_.push_back(fact_.back() * q);
    }
  }

  long p() const { return p_; }
  long max_color() const { return p_ - 2; }

  bool admissible(int a, int b, int c) const {
    return (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * max_color() &&
           std::max({a, b, c}) <= max_color();
  }

  const CyclotomicInt& fact(long n) const { return fact_.at(n); }

  // loop value of colour n
  CyclotomicInt delta(int n) const { return n % 2 ? -qint_[n + 1] : qint_[n + 1]; }

  const CyclotomicInt& theta(int a, int b, int c) {
    auto key = std::make_tuple(a, b, c);
    auto it = theta_.find(key);
    if (it != theta_.end()) return it->second;
    int i = (a + b - c) / 2, j = (b + c - a) / 2, k = (a + c - b) / 2;
    CyclotomicInt num = fact(i + j + k + 1) * fact(i) * fact(j) * fact(k);
    CyclotomicInt den = fact(i + j) * fact(j + k) * fact(i + k);
    CyclotomicInt v = num.divide(den);
    if ((i + j + k) % 2) v = -v;
    return theta_.emplace(key, v).first->second;
  }

  // faces (a,d,e) (b,c,e) (a,b,f) (c,d,f)
  const CyclotomicInt& tet(int a, int b, int e, int c, int d, int f) {
    auto key = std::array<int, 6>{a, b, e, c, d, f};
    auto it = tet_.find(key);
    if (it != tet_.end()) return it->second;
    int a1 = (a + d + e) / 2, a2 = (b + c + e) / 2, a3 = (a + b + f) / 2, a4 = (c + d + f) / 2;
    int b1 = (b + d + e + f) / 2, b2 = (a + c + e + f) / 2, b3 = (a + b + c + d) / 2;
    int ai[4] = {a1, a2, a3, a4}, bj[3] = {b1, b2, b3};
    CyclotomicInt I(p_, 1), E(p_, 1);
    for (int x : ai)
      for (int y : bj) I *= fact(y - x);
    for (int x : {a, b, c, d, e, f}) E *= fact(x);
    int m = *std::max_element(ai, ai + 4), M = *std::min_element(bj, bj + 3);
    CyclotomicInt sum(p_);
    for (int s = m; s <= M; ++s) {
      CyclotomicInt den(p_, 1);
      for (int x : ai) den *= fact(s - x);
      for (int y : bj) den *= fact(y - s);
      CyclotomicInt t = fact(s + 1).divide(den);
      sum += s % 2 ? -t : t;
    }
    return tet_.emplace(key, (I * sum).divide(E)).first->second;
  }

  // half twist of legs a,b meeting at c
  CyclotomicInt lambda(int a, int b, int c, int sign) const {
    long e = (static_cast<long>(c) * (c + 2) - a * (a + 2) - b * (b + 2)) / 2;
    CyclotomicInt v = a_power(p_, sign > 0 ? e : -e);
    return ((a + b - c) / 2) % 2 ? -v : v;
  }

  // local matrix of sigma^{sign} on the left comb: (u,a)->x, (x,b)->v  to  (u,b)->x', (x',a)->v
  const std::map<std::pair<int, int>, CyclotomicInt>& braid_block(int u, int a, int b, int v, int sign) {
    auto key = std::make_tuple(u, a, b, v, sign);
    auto it = block_.find(key);
    if (it != block_.end()) return it->second;
    std::map<std::pair<int, int>, CyclotomicInt> out;
    for (int x = 0; x <= max_color(); ++x) {
      if (!admissible(u, a, x) || !admissible(x, b, v)) continue;
      for (int y = 0; y <= max_color(); ++y) {
        if (!admissible(a, b, y) || !admissible(u, y, v)) continue;
        CyclotomicInt f = tet(a, b, x, v, u, y) * delta(y);
        f = f.divide(theta(a, b, y) * theta(u, y, v));
        if (f.is_zero()) continue;
        f *= lambda(a, b, y, sign);
        for (int x2 = 0; x2 <= max_color(); ++x2) {
          if (!admissible(u, b, x2) || !admissible(x2, a, v)) continue;
          CyclotomicInt g = tet(b, a, x2, v, u, y) * delta(x2);
          g = g.divide(theta(u, b, x2) * theta(x2, a, v));
          auto [pos, fresh] = out.try_emplace({x, x2}, CyclotomicInt(p_));
          pos->second += f * g;
        }
      }
    }
    return block_.emplace(key, std::move(out)).first->second;
  }

 private:
  long p_;
  std::vector<CyclotomicInt> qint_, fact_;
  std::map<std::tuple<int, int, int>, CyclotomicInt> theta_;
  std::map<std::array<int, 6>, CyclotomicInt> tet_;
  std::map<std::tuple<int, int, int, int, int>, std::map<std::pair<int, int>, CyclotomicInt>> block_;
};

// admissible left-comb paths x_0 = 0, x_1 = c_1, ..., x_n
inline std::vector<std::vector<int>> comb_paths(Recoupling& R, const std::vector<int>& colors) {
  std::vector<std::vector<int>> out{{0}};
  for (int c : colors) {
    std::vector<std::vector<int>> nx;
    for (auto& pth : out)
      for (int x = 0; x <= R.max_color(); ++x)
        if (R.admissible(pth.back(), c, x)) {
          auto q = pth;
          q.push_back(x);
          nx.push_back(q);
        }
    out = std::move(nx);
  }
  return out;
}

// Kauffman bracket of the closure of b with strand-start colours, blackboard framing
inline CyclotomicInt colored_braid_bracket(Recoupling& R, const Braid& b, const std::vector<int>& start_colors) {
  const long p = R.p();
  if (static_cast<int>(start_colors.size()) != b.strands) throw ValidationError("fusion: colour count mismatch");
  CyclotomicInt total(p);
  if (b.strands == 0) return CyclotomicInt(p, 1);
  for (auto& start : comb_paths(R, start_colors)) {
    std::map<std::vector<int>, CyclotomicInt> vec{{start, CyclotomicInt(p, 1)}};
    std::vector<int> col = start_colors;
    for (int g : b.word) {
      int k = std::abs(g) - 1;
      int a = col[k], bb = col[k + 1];
      std::map<std::vector<int>, CyclotomicInt> nx;
      for (auto& [pth, c] : vec) {
        auto& blk = R.braid_block(pth[k], a, bb, pth[k + 2], g > 0 ? 1 : -1);
        for (auto it = blk.lower_bound({pth[k + 1], -1}); it != blk.end() && it->first.first == pth[k + 1]; ++it) {
          auto q = pth;
          q[k + 1] = it->first.second;
          auto [pos, fresh] = nx.try_emplace(q, CyclotomicInt(p));
          pos->second += c * it->second;
        }
      }
      std::erase_if(nx, [](auto& kv) { return kv.second.is_zero(); });
      vec = std::move(nx);
      std::swap(col[k], col[k + 1]);
      if (vec.empty()) break;
    }
    auto it = vec.find(start);
    if (it != vec.end()) total += it->second * R.delta(start.back());
  }
  return total;
}

}  // namespace ftinv
