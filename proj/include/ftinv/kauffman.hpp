#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "cyclotomic.hpp"
#include "link.hpp"

namespace ftinv {

// Laurent polynomial in A
struct LaurentA {
  std::map<int, BigInt> c;

  static LaurentA mono(int e, const BigInt& v = 1) {
    LaurentA r;
    if (v != 0) r.c[e] = v;
    return r;
  }
  LaurentA& operator+=(const LaurentA& o) {
    for (auto& [e, v] : o.c)
      if ((c[e] += v) == 0) c.erase(e);
    return *this;
  }
  friend LaurentA operator*(const LaurentA& x, const LaurentA& y) {
    LaurentA r;
    for (auto& [e, v] : x.c)
      for (auto& [f, w] : y.c) r += mono(e + f, v * w);
    return r;
  }
  friend bool operator==(const LaurentA& x, const LaurentA& y) { return x.c == y.c; }
  std::string str() const {
    std::string s;
    for (auto& [e, v] : c) s += (v > 0 && !s.empty() ? "+" : "") + v.str() + "*A^" + std::to_string(e);
    return s.empty() ? "0" : s;
  }
};

// exponent a with 4a = 1 mod p, A = q^a
inline long kauffman_exponent(long p) {
  for (long a = 1; a < p; ++a)
    if ((4 * a) % p == 1) return a;
  throw ValidationError("no Kauffman exponent for p");
}

inline CyclotomicInt to_cyclotomic(const LaurentA& f, long p) {
  long a = kauffman_exponent(p);
  std::vector<BigInt> c(p, BigInt(0));
  for (auto& [e, v] : f.c) c[((static_cast<long>(e) * a) % p + p) % p] += v;
  return CyclotomicInt::from_q_coeffs(p, c);
}

// A^k as an element of Lambda_p
inline CyclotomicInt a_power(long p, long k) { return from_q_power(p, k * kauffman_exponent(p)); }

// the two smoothings of crossing [a,b,c,d]: A joins (a,b),(c,d); A^{-1} joins (a,d),(b,c)
inline constexpr int kSmoothA[2][2] = {{0, 1}, {2, 3}};
inline constexpr int kSmoothB[2][2] = {{0, 3}, {1, 2}};

// state sum over all 2^N smoothings; empty diagram 1, unknot d = -A^2 - A^{-2}
inline LaurentA bracket_naive(const FramedLink& L, std::size_t max_crossings = 20) {
  const std::size_t n = L.crossings.size();
  if (n > max_crossings) throw EngineCapError("bracket_naive: too many crossings");
  std::map<int, int> idx;
  for (auto& comp : L.components)
    for (int a : comp.arcs) idx.emplace(a, static_cast<int>(idx.size()));
  LaurentA d = LaurentA::mono(2, -1);
  d += LaurentA::mono(-2, -1);
  std::vector<LaurentA> dpow{LaurentA::mono(0)};
  LaurentA r;
  for (unsigned long s = 0; s < (1ul << n); ++s) {
    std::vector<int> par(idx.size());
    std::iota(par.begin(), par.end(), 0);
    std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
    int na = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool a = (s >> i) & 1;
      na += a;
      auto& sm = a ? kSmoothA : kSmoothB;
      auto& arcs = L.crossings[i].arcs;
      for (auto& pr : sm) par[find(idx.at(arcs[pr[0]]))] = find(idx.at(arcs[pr[1]]));
    }
    std::size_t loops = 0;
    for (std::size_t k = 0; k < par.size(); ++k) loops += find(static_cast<int>(k)) == static_cast<int>(k);
    while (dpow.size() <= loops) dpow.push_back(dpow.back() * d);
    r += LaurentA::mono(na - static_cast<int>(n - na)) * dpow[loops];
  }
  return r;
}

namespace mm {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}
inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  for (a %= m; e; e >>= 1, a = mulmod(a, a, m))
    if (e & 1) r = mulmod(r, a, m);
  return r;
}
inline bool is_prime64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % q == 0) return n == q;
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) d /= 2, ++s;
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s && comp; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) comp = false;
    }
    if (comp) return false;
  }
  return true;
}

// primes P = 1 mod p below 2^62 with a primitive p-th root of unity
struct PrimeRoot {
  std::uint64_t P, omega;
};

inline std::vector<PrimeRoot> primes_for(long p, std::size_t count) {
  static std::map<long, std::vector<PrimeRoot>> cache;
  auto& v = cache[p];
  std::uint64_t P = v.empty() ? ((1ull << 62) / p) * p + 1 : v.back().P - p;
  while (v.size() < count) {
    for (; !is_prime64(P); P -= p) {
    }
    for (std::uint64_t g = 2;; ++g) {
      std::uint64_t w = powmod(g, (P - 1) / p, P);
      if (w != 1) {
        v.push_back({P, w});
        break;
      }
    }
    P -= p;
  }
  return {v.begin(), v.begin() + count};
}

// channels (prime r, embedding e = 1..p-1)
struct Channels {
  long p;
  std::vector<PrimeRoot> primes;
  std::size_t size() const { return primes.size() * (p - 1); }
  std::uint64_t modulus(std::size_t c) const { return primes[c / (p - 1)].P; }

  std::vector<std::uint64_t> image(const CyclotomicInt& x) const {
    auto qc = x.q_coeffs();
    std::vector<std::uint64_t> out(size());
    for (std::size_t r = 0; r < primes.size(); ++r) {
      auto [P, w] = primes[r];
      std::vector<std::uint64_t> cm(qc.size());
      BigInt PB = static_cast<unsigned long long>(P);
      for (std::size_t i = 0; i < qc.size(); ++i) cm[i] = static_cast<std::uint64_t>(mod_pos(qc[i], PB));
      for (long e = 1; e < p; ++e) {
        std::uint64_t root = powmod(w, e, P), acc = 0, pw = 1;
        for (std::size_t i = 0; i < cm.size(); ++i) {
          acc = (acc + mulmod(cm[i], pw, P)) % P;
          pw = mulmod(pw, root, P);
        }
        out[r * (p - 1) + (e - 1)] = acc;
      }
    }
    return out;
  }

  CyclotomicInt recover(const std::vector<std::uint64_t>& vals) const {
    std::vector<BigInt> coeff(p - 1, BigInt(0));
    BigInt M = 1;
    for (std::size_t r = 0; r < primes.size(); ++r) {
      auto [P, w] = primes[r];
      // value at 1 of the degree <= p-2 representative
      std::vector<std::uint64_t> y(p);
      std::uint64_t s = 0;
      for (long e = 1; e < p; ++e) {
        y[e] = vals[r * (p - 1) + (e - 1)];
        s = (s + mulmod(y[e], powmod(w, e, P), P)) % P;
      }
      y[0] = (P - s) % P;
      std::uint64_t pinv = powmod(static_cast<std::uint64_t>(p), P - 2, P);
      BigInt PB = static_cast<unsigned long long>(P);
      for (long j = 0; j + 1 < p; ++j) {
        std::uint64_t acc = 0;
        for (long e = 0; e < p; ++e) acc = (acc + mulmod(y[e], powmod(w, ((p - e) * j) % p, P), P)) % P;
        acc = mulmod(acc, pinv, P);
        // CRT step
        BigInt cur = coeff[j];
        BigInt t = mod_pos(BigInt(static_cast<unsigned long long>(acc)) - cur, PB);
        BigInt Minv = static_cast<unsigned long long>(
            powmod(static_cast<std::uint64_t>(mod_pos(M, PB)), P - 2, P));
        t = mod_pos(t * Minv, PB);
        coeff[j] = cur + M * t;
      }
      M *= PB;
    }
    for (auto& c : coeff)
      if (c > M / 2) c -= M;
    std::vector<BigInt> qc(coeff.begin(), coeff.end());
    return CyclotomicInt::from_q_coeffs(p, qc);
  }
};

}  // namespace mm

// planar network: vertices with legs labelled by arcs, each label used exactly twice overall
struct NetVertex {
  std::vector<int> legs;
  // (pairing of leg indices, coefficient)
  std::vector<std::pair<std::vector<std::pair<int, int>>, CyclotomicInt>> terms;
};

struct Network {
  std::vector<NetVertex> vertices;
  std::size_t free_loops = 0;
};

inline Network network_from_diagram(const FramedLink& L, long p) {
  Network net;
  CyclotomicInt A = a_power(p, 1), Ai = a_power(p, -1);
  std::set<int> used;
  for (auto& x : L.crossings) {
    NetVertex v;
    v.legs.assign(x.arcs.begin(), x.arcs.end());
    v.terms.push_back({{{kSmoothA[0][0], kSmoothA[0][1]}, {kSmoothA[1][0], kSmoothA[1][1]}}, A});
    v.terms.push_back({{{kSmoothB[0][0], kSmoothB[0][1]}, {kSmoothB[1][0], kSmoothB[1][1]}}, Ai});
    net.vertices.push_back(v);
    used.insert(x.arcs.begin(), x.arcs.end());
  }
  for (auto& c : L.components)
    if (c.arcs.size() == 1 && !used.count(c.arcs[0])) ++net.free_loops;
  return net;
}

struct ContractionStats {
  std::size_t max_width = 0, max_states = 0, primes = 0;
};

inline constexpr std::size_t kDefaultWidthCap = 16;

// exact Kauffman bracket of a planar network; width counted in strands (boundary points / 2)
inline CyclotomicInt contract(const Network& net, long p, std::size_t width_cap = kDefaultWidthCap,
                              ContractionStats* stats = nullptr) {
  // label count bounds the number of loops in any state
  std::set<int> labels;
  double log2B = 2.0 * static_cast<double>(net.free_loops) + 4;
  for (auto& v : net.vertices) {
    labels.insert(v.legs.begin(), v.legs.end());
    BigInt s = 0;
    for (auto& [pr, c] : v.terms)
      for (auto& x : c.q_coeffs()) s += abs(x);
    log2B += std::log2(std::max(1.0, s.convert_to<double>()));
  }
  log2B += static_cast<double>(labels.size()) + 8;
  std::size_t nprimes = static_cast<std::size_t>(std::ceil(log2B / 61.0)) + 1;
  mm::Channels ch{p, mm::primes_for(p, nprimes)};
  const std::size_t K = ch.size();
  std::vector<std::vector<std::vector<std::uint64_t>>> coef(net.vertices.size());
  for (std::size_t i = 0; i < net.vertices.size(); ++i)
    for (auto& [pr, c] : net.vertices[i].terms) coef[i].push_back(ch.image(c));
  CyclotomicInt d = -(a_power(p, 2) + a_power(p, -2));
  std::vector<std::vector<std::uint64_t>> dpow{ch.image(CyclotomicInt(p, 1))};
  auto dimg = ch.image(d);
  auto dp = [&](std::size_t k) -> const std::vector<std::uint64_t>& {
    while (dpow.size() <= k) {
      auto nx = dpow.back();
      for (std::size_t c = 0; c < K; ++c) nx[c] = mm::mulmod(nx[c], dimg[c], ch.modulus(c));
      dpow.push_back(nx);
    }
    return dpow[k];
  };

  // state: partner index per boundary position, stored as bytes
  std::vector<int> boundary;
  std::unordered_map<std::string, std::size_t> index{{std::string(), 0}};
  std::vector<std::string> keys{std::string()};
  std::vector<std::uint64_t> amp = dp(net.free_loops);
  std::vector<bool> done(net.vertices.size(), false);
  ContractionStats st;
  st.primes = nprimes;
  for (std::size_t step = 0; step < net.vertices.size(); ++step) {
    // greedy: most legs already on the boundary, then smallest resulting boundary
    std::map<int, int> bpos;
    for (std::size_t i = 0; i < boundary.size(); ++i) bpos[boundary[i]] = static_cast<int>(i);
    long best = -1, bestScore = LONG_MIN;
    for (std::size_t v = 0; v < net.vertices.size(); ++v) {
      if (done[v]) continue;
      long glued = 0;
      for (int l : net.vertices[v].legs) glued += bpos.count(l);
      long score = glued * 16 - static_cast<long>(net.vertices[v].legs.size());
      if (score > bestScore) bestScore = score, best = static_cast<long>(v);
    }
    const NetVertex& V = net.vertices[best];
    done[best] = true;
    const int b = static_cast<int>(boundary.size()), k = static_cast<int>(V.legs.size());
    // glue[n] for node n in [0,b+k): partner node across a glued label, or -1
    std::vector<int> glue(b + k, -1);
    std::map<int, int> seenLeg;
    for (int i = 0; i < k; ++i) {
      int l = V.legs[i];
      if (auto it = bpos.find(l); it != bpos.end()) glue[it->second] = b + i, glue[b + i] = it->second;
      else if (auto jt = seenLeg.find(l); jt != seenLeg.end()) glue[b + i] = b + jt->second, glue[b + jt->second] = b + i;
      else seenLeg[l] = i;
    }
    std::vector<int> newBoundary, newPos(b + k, -1);
    for (int i = 0; i < b; ++i)
      if (glue[i] < 0) newPos[i] = static_cast<int>(newBoundary.size()), newBoundary.push_back(boundary[i]);
    for (int i = 0; i < k; ++i)
      if (glue[b + i] < 0) newPos[b + i] = static_cast<int>(newBoundary.size()), newBoundary.push_back(V.legs[i]);
    if (newBoundary.size() / 2 > width_cap)
      throw EngineCapError("TL contraction width " + std::to_string(newBoundary.size() / 2) + " exceeds cap " +
                           std::to_string(width_cap));
    std::unordered_map<std::string, std::size_t> nindex;
    std::vector<std::string> nkeys;
    std::vector<std::uint64_t> namp;
    std::vector<int> inner(b + k);
    std::vector<char> vis(b + k);
    std::string key(newBoundary.size(), '\0');
    for (std::size_t s = 0; s < keys.size(); ++s) {
      const std::string& sk = keys[s];
      for (std::size_t t = 0; t < V.terms.size(); ++t) {
        for (int i = 0; i < b; ++i) inner[i] = static_cast<unsigned char>(sk[i]);
        for (auto& [x, y] : V.terms[t].first) inner[b + x] = b + y, inner[b + y] = b + x;
        std::fill(vis.begin(), vis.end(), 0);
        // open strands: walk inner, glue, inner, ... from each free endpoint
        for (int n0 = 0; n0 < b + k; ++n0) {
          if (glue[n0] >= 0 || vis[n0]) continue;
          int cur = n0;
          vis[cur] = 1;
          for (;;) {
            cur = inner[cur];
            vis[cur] = 1;
            if (glue[cur] < 0) break;
            cur = glue[cur];
            vis[cur] = 1;
          }
          key[newPos[n0]] = static_cast<char>(newPos[cur]);
          key[newPos[cur]] = static_cast<char>(newPos[n0]);
        }
        std::size_t loops = 0;
        for (int n0 = 0; n0 < b + k; ++n0) {
          if (vis[n0]) continue;
          ++loops;
          int cur = n0;
          do {
            vis[cur] = 1;
            cur = inner[cur];
            vis[cur] = 1;
            cur = glue[cur];
          } while (cur != n0);
        }
        auto [it, fresh] = nindex.try_emplace(key, nkeys.size());
        if (fresh) {
          nkeys.push_back(key);
          namp.resize(namp.size() + K, 0);
        }
        const auto& cf = coef[best][t];
        const auto& dl = dp(loops);
        std::uint64_t* dst = namp.data() + it->second * K;
        const std::uint64_t* src = amp.data() + s * K;
        for (std::size_t c = 0; c < K; ++c) {
          std::uint64_t P = ch.modulus(c);
          std::uint64_t v = mm::mulmod(mm::mulmod(src[c], cf[c], P), dl[c], P);
          dst[c] = (dst[c] + v) % P;
        }
      }
    }
    boundary = newBoundary;
    keys = std::move(nkeys);
    amp = std::move(namp);
    st.max_width = std::max(st.max_width, boundary.size() / 2);
    st.max_states = std::max(st.max_states, keys.size());
  }
  if (!boundary.empty()) throw ValidationError("network is not closed");
  if (stats) *stats = st;
  return ch.recover(amp);
}

inline CyclotomicInt bracket_tl(const FramedLink& L, long p, std::size_t width_cap = kDefaultWidthCap,
                                ContractionStats* stats = nullptr) {
  L.validate();
  return contract(network_from_diagram(L, p), p, width_cap, stats);
}

}  // namespace ftinv
