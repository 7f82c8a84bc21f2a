#pragma once

#include <future>
#include <optional>
#include <thread>
#include <map>
#include <string>
#include <vector>

#include "builders.hpp"
#include "fusion.hpp"
#include "kauffman.hpp"
#include "manifold.hpp"

namespace ftinv {

// [k] = (A^{2k} - A^{-2k}) / (A^2 - A^{-2})
inline CyclotomicInt quantum_int(long p, long k) {
  CyclotomicInt r(p);
  for (long i = 0; i < k; ++i) r += a_power(p, 2 * (k - 1) - 4 * i);
  return k < 0 ? -quantum_int(p, -k) : r;
}

// full-twist eigenvalue on the colour-k strand (k-1 parallel strands with the projector)
inline CyclotomicInt twist_factor(long p, long k) {
  long m = k - 1;
  CyclotomicInt r = a_power(p, m * (m + 2));
  return m % 2 ? -r : r;
}

// S_m(z) coefficients, e_m = S_m(z) in the annulus skein
inline std::vector<BigInt> chebyshev(long m) {
  std::vector<std::vector<BigInt>> S{{1}, {0, 1}};
  for (long i = 2; i <= m; ++i) {
    std::vector<BigInt> nx(i + 1, BigInt(0));
    for (std::size_t j = 0; j < S[i - 1].size(); ++j) nx[j + 1] += S[i - 1][j];
    for (std::size_t j = 0; j < S[i - 2].size(); ++j) nx[j] -= S[i - 2][j];
    S.push_back(nx);
  }
  return S[m];
}

// SO(3) colour range
inline std::vector<long> so3_colors(long p) {
  std::vector<long> ks;
  for (long k = 1; k <= p - 2; k += 2) ks.push_back(k);
  return ks;
}

struct QuantumOptions {
  std::size_t width_cap = kDefaultWidthCap;
  bool parallel = true;
  bool use_braid = true;  // recoupling on a verified closed-braid form
};

// blackboard bracket of the braid closure, component i coloured k_i
inline CyclotomicInt braid_colored(Recoupling& R, const FramedLink& B, const std::vector<long>& k) {
  auto cyc = braid_cycles(*B.braid);
  std::vector<int> sc;
  for (int c : cyc) sc.push_back(static_cast<int>(k[c] - 1));
  return colored_braid_bracket(R, *B.braid, sc);
}

// blackboard cables of one diagram, memoised by copy counts
class CableCache {
 public:
  CableCache(const FramedLink& L, long p, QuantumOptions opt) : L_(L), p_(p), opt_(opt) {}

  const CyclotomicInt& get(const std::vector<int>& j) {
    auto it = cache_.find(j);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(j, compute(j)).first->second;
  }

  // evaluate many in parallel, results stored
  void prefetch(const std::vector<std::vector<int>>& js) {
    std::vector<std::vector<int>> todo;
    for (auto& j : js)
      if (!cache_.count(j)) todo.push_back(j);
    if (!opt_.parallel || todo.size() < 2) {
      for (auto& j : todo) get(j);
      return;
    }
    std::size_t lanes = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t lo = 0; lo < todo.size(); lo += lanes) {
      std::vector<std::future<CyclotomicInt>> fs;
      std::size_t hi = std::min(todo.size(), lo + lanes);
      for (std::size_t i = lo; i < hi; ++i)
        fs.push_back(std::async(std::launch::async, [this, j = todo[i]] { return compute(j); }));
      for (std::size_t i = lo; i < hi; ++i) cache_.emplace(todo[i], fs[i - lo].get());
    }
  }

 private:
  CyclotomicInt compute(const std::vector<int>& j) const {
    if (std::all_of(j.begin(), j.end(), [](int x) { return x == 0; })) return CyclotomicInt(p_, 1);
    return bracket_tl(cable(L_, j, true), p_, opt_.width_cap);
  }

  FramedLink L_;
  long p_;
  QuantumOptions opt_;
  std::map<std::vector<int>, CyclotomicInt> cache_;
};

inline void check_quantum_input(const FramedLink& L, long p) {
  if (p < 3 || p > 31 || !is_prime(p)) throw ValidationError("quantum: p must be an odd prime <= 31");
  if (!L.integral_framings()) throw ValidationError("quantum: non-integral framing");
  L.validate();
}

// all multi-indices with entries from `choices[i]`
inline std::vector<std::vector<int>> multi_indices(const std::vector<std::vector<int>>& choices) {
  std::vector<std::vector<int>> out{{}};
  for (auto& ch : choices) {
    std::vector<std::vector<int>> nx;
    for (auto& pre : out)
      for (int c : ch) {
        auto v = pre;
        v.push_back(c);
        nx.push_back(v);
      }
    out = nx;
  }
  return out;
}

// J_{L,k}: bracket with component i coloured k_i (k_i = 1 is the empty colour), framing-corrected
inline CyclotomicInt colored_jones(const FramedLink& L, const std::vector<long>& k, long p, QuantumOptions opt = {}) {
  check_quantum_input(L, p);
  if (k.size() != L.size()) throw ValidationError("colored_jones: colour vector length mismatch");
  for (long ki : k)
    if (ki < 1) throw ValidationError("colored_jones: colours start at 1");
  auto B = opt.use_braid ? verified_braid_form(L) : std::nullopt;
  if (B && *std::max_element(k.begin(), k.end()) <= p - 1) {
    Recoupling R(p);
    CyclotomicInt r = braid_colored(R, *B, k);
    for (std::size_t i = 0; i < B->size(); ++i)
      r *= twist_factor(p, k[i]).pow(static_cast<long>(numerator(B->components[i].framing)) - B->writhe(i));
    return r;
  }
  CableCache cache(L, p, opt);
  std::vector<std::vector<int>> choices;
  std::vector<std::vector<BigInt>> cheb;
  for (long ki : k) {
    cheb.push_back(chebyshev(ki - 1));
    std::vector<int> js;
    for (std::size_t j = 0; j < cheb.back().size(); ++j)
      if (cheb.back()[j] != 0) js.push_back(static_cast<int>(j));
    choices.push_back(js);
  }
  auto idx = multi_indices(choices);
  cache.prefetch(idx);
  CyclotomicInt r(p);
  for (auto& j : idx) {
    BigInt w = 1;
    for (std::size_t i = 0; i < j.size(); ++i) w *= cheb[i][j[i]];
    r += cache.get(j) * w;
  }
  for (std::size_t i = 0; i < L.size(); ++i) {
    long a = static_cast<long>(numerator(L.components[i].framing)) - L.writhe(i);
    r *= twist_factor(p, k[i]).pow(a);
  }
  return r;
}

// <L> = sum over SO(3) colours of prod [k_i] J_{L,k}
inline CyclotomicInt p_bracket(const FramedLink& L, long p, QuantumOptions opt = {}) {
  check_quantum_input(L, p);
  if (L.size() == 0) return CyclotomicInt(p, 1);
  if (auto B = opt.use_braid ? verified_braid_form(L) : std::nullopt) {
    Recoupling R(p);
    std::vector<std::vector<CyclotomicInt>> W(B->size());
    std::vector<std::vector<int>> choices(B->size());
    for (std::size_t i = 0; i < B->size(); ++i) {
      long a = static_cast<long>(numerator(B->components[i].framing)) - B->writhe(i);
      for (long k : so3_colors(p)) {
        W[i].push_back(quantum_int(p, k) * twist_factor(p, k).pow(a));
        choices[i].push_back(static_cast<int>(W[i].size() - 1));
      }
    }
    auto ks = so3_colors(p);
    CyclotomicInt r(p);
    for (auto& j : multi_indices(choices)) {
      std::vector<long> k;
      CyclotomicInt w(p, 1);
      for (std::size_t i = 0; i < j.size(); ++i) k.push_back(ks[j[i]]), w *= W[i][j[i]];
      r += w * braid_colored(R, *B, k);
    }
    return r;
  }
  const long maxj = p - 3;
  // W_i[j] = sum_k [k] theta_k^{a_i - w_i} coeff of z^j in S_{k-1}
  std::vector<std::vector<CyclotomicInt>> W(L.size(), std::vector<CyclotomicInt>(maxj + 1, CyclotomicInt(p)));
  for (std::size_t i = 0; i < L.size(); ++i) {
    long a = static_cast<long>(numerator(L.components[i].framing)) - L.writhe(i);
    for (long k : so3_colors(p)) {
      CyclotomicInt wk = quantum_int(p, k) * twist_factor(p, k).pow(a);
      auto s = chebyshev(k - 1);
      for (std::size_t j = 0; j < s.size(); ++j)
        if (s[j] != 0) W[i][j] += wk * s[j];
    }
  }
  std::vector<std::vector<int>> choices(L.size());
  for (std::size_t i = 0; i < L.size(); ++i)
    for (long j = 0; j <= maxj; ++j)
      if (!W[i][j].is_zero()) choices[i].push_back(static_cast<int>(j));
  auto idx = multi_indices(choices);
  CableCache cache(L, p, opt);
  cache.prefetch(idx);
  CyclotomicInt r(p);
  for (auto& j : idx) {
    CyclotomicInt w(p, 1);
    for (std::size_t i = 0; i < j.size(); ++i) w *= W[i][j[i]];
    r += w * cache.get(j);
  }
  return r;
}

// p-bracket of the a-framed unknot
inline CyclotomicInt b_constant(long p, long a) {
  CyclotomicInt r(p);
  for (long k : so3_colors(p)) {
    auto qk = quantum_int(p, k);
    r += qk * qk * twist_factor(p, k).pow(a);
  }
  return r;
}

inline long n_of(long p) { return (p - 3) / 2; }

struct QuantumResult {
  CyclotomicInt bracket, norm, tau;
  SignatureNullity sig;
};

inline CyclotomicInt p_norm(const FramedLink& L, long p) {
  check_quantum_input(L, p);
  auto s = signature_nullity(integer_linking_matrix(L));
  CyclotomicInt b0h = b_constant(p, 0);
  for (long i = 0; i < n_of(p); ++i) b0h = b0h.div_h();
  return b_constant(p, 1).pow(s.pos) * b_constant(p, -1).pow(s.neg) * b0h.pow(s.zero);
}

inline QuantumResult quantum_result(const SurgeryPresentation& M, long p, QuantumOptions opt = {}) {
  auto J = manifold_link(M);
  QuantumResult r;
  r.bracket = p_bracket(J, p, opt);
  r.norm = p_norm(J, p);
  r.sig = signature_nullity(integer_linking_matrix(J));
  try {
    r.tau = r.bracket.divide(r.norm);
  } catch (const std::domain_error&) {
    throw std::logic_error("tau_p: <L>/|L| is not integral (convention error)");
  }
  return r;
}

inline CyclotomicInt tau_p(const SurgeryPresentation& M, long p, QuantumOptions opt = {}) {
  return quantum_result(M, p, opt).tau;
}

inline CyclotomicInt tau_p(const FormalSum<SurgeryPresentation>& x, long p, QuantumOptions opt = {}) {
  CyclotomicInt r(p);
  for (auto& [k, t] : x.terms) r += tau_p(t.value, p, opt) * t.coeff;
  return r;
}

inline Residue tau_p_d(const FormalSum<SurgeryPresentation>& x, long p, long d, QuantumOptions opt = {}) {
  return pi_d(tau_p(x, p, opt), d);
}

inline long p_order(const FormalSum<SurgeryPresentation>& x, long p, QuantumOptions opt = {}) {
  return v_h(tau_p(x, p, opt));
}

inline long p_depth_from(long order, long bpx, long p) {
  return order == kInfinity ? kInfinity : 3 * order - n_of(p) * bpx;
}

inline long p_depth(const FormalSum<SurgeryPresentation>& x, long p, QuantumOptions opt = {}) {
  return p_depth_from(p_order(x, p, opt), bp(x, p), p);
}

inline FormalSum<SurgeryPresentation> as_sum(const SurgeryPresentation& M) {
  FormalSum<SurgeryPresentation> x;
  x.add(M, 1);
  return x;
}

struct RobustRow {
  long p, order, bp, depth;
};

struct RobustReport {
  std::vector<RobustRow> rows;
  long lower_bound;
  bool equal;  // every d_p equals the lower bound
};

inline RobustReport robust_check(const FormalSum<SurgeryPresentation>& x, const std::vector<long>& primes,
                                 long depth_lower_bound, QuantumOptions opt = {}) {
  RobustReport r{{}, depth_lower_bound, true};
  for (long p : primes) {
    long o = p_order(x, p, opt), b = bp(x, p);
    long d = p_depth_from(o, b, p);
    r.rows.push_back({p, o, b, d});
    r.equal = r.equal && d == depth_lower_bound;
  }
  return r;
}

inline std::string valuation_str(long v) { return v == kInfinity ? "inf" : std::to_string(v); }

}  // namespace ftinv
