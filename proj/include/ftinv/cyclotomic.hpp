#pragma once

#include <climits>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace ftinv {

inline constexpr long kInfinity = LONG_MAX;

// element of Z[q]/Phi_p(q) as sum a_j h^j, h = q - 1, 0 <= j <= p-2
class CyclotomicInt {
 public:
  CyclotomicInt() = default;
  explicit CyclotomicInt(long p, const BigInt& v = 0) : p_(p), a_(check(p) - 1, BigInt(0)) { a_[0] = v; }
  CyclotomicInt(long p, std::vector<BigInt> coeffs) : p_(p), a_(std::move(coeffs)) {
    check(p);
    if (a_.size() > static_cast<std::size_t>(p - 1)) reduce(a_);
    a_.resize(p - 1, BigInt(0));
  }

  static CyclotomicInt h(long p) {
    CyclotomicInt r(p);
    if (p > 2) r.a_[1] = 1;
    else r.a_[0] = -2;
    return r;
  }

  long p() const { return p_; }
  const std::vector<BigInt>& coeffs() const { return a_; }
  BigInt coeff(std::size_t j) const { return j < a_.size() ? a_[j] : BigInt(0); }
  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return x == 0; });
  }

  friend bool operator==(const CyclotomicInt& x, const CyclotomicInt& y) { return x.p_ == y.p_ && x.a_ == y.a_; }
  friend bool operator!=(const CyclotomicInt& x, const CyclotomicInt& y) { return !(x == y); }

  CyclotomicInt& operator+=(const CyclotomicInt& o) {
    same(o);
    for (std::size_t j = 0; j < a_.size(); ++j) a_[j] += o.a_[j];
    return *this;
  }
  CyclotomicInt& operator-=(const CyclotomicInt& o) {
    same(o);
    for (std::size_t j = 0; j < a_.size(); ++j) a_[j] -= o.a_[j];
    return *this;
  }
  friend CyclotomicInt operator+(CyclotomicInt x, const CyclotomicInt& y) { return x += y; }
  friend CyclotomicInt operator-(CyclotomicInt x, const CyclotomicInt& y) { return x -= y; }
  friend CyclotomicInt operator-(CyclotomicInt x) {
    for (auto& c : x.a_) c = -c;
    return x;
  }
  friend CyclotomicInt operator*(const CyclotomicInt& x, const CyclotomicInt& y) {
    x.same(y);
    std::vector<BigInt> r(2 * x.a_.size(), BigInt(0));
    for (std::size_t i = 0; i < x.a_.size(); ++i) {
      if (x.a_[i] == 0) continue;
      for (std::size_t j = 0; j < y.a_.size(); ++j) r[i + j] += x.a_[i] * y.a_[j];
    }
    return CyclotomicInt(x.p_, std::move(r));
  }
  friend CyclotomicInt operator*(CyclotomicInt x, const BigInt& k) {
    for (auto& c : x.a_) c *= k;
    return x;
  }
  CyclotomicInt& operator*=(const CyclotomicInt& o) { return *this = *this * o; }

  CyclotomicInt pow(long e) const {
    if (e < 0) return CyclotomicInt(p_, 1).divide(pow(-e));
    CyclotomicInt r(p_, 1), b = *this;
    for (; e; e >>= 1, b = b * b)
      if (e & 1) r = r * b;
    return r;
  }

  // q-power basis c_0..c_{p-2}
  std::vector<BigInt> q_coeffs() const {
    std::vector<BigInt> c(a_.size(), BigInt(0));
    // h^j = sum_i binom(j,i) (-1)^{j-i} q^i
    for (std::size_t j = 0; j < a_.size(); ++j) {
      if (a_[j] == 0) continue;
      for (std::size_t i = 0; i <= j; ++i) {
        BigInt t = binom(static_cast<long>(j), static_cast<long>(i)) * a_[j];
        c[i] += (j - i) % 2 ? BigInt(-t) : t;
      }
    }
    return c;
  }

  // sum_e c_e q^e, any length; q^p = 1
  static CyclotomicInt from_q_coeffs(long p, const std::vector<BigInt>& c) {
    check(p);
    std::vector<BigInt> folded(p, BigInt(0));
    for (std::size_t e = 0; e < c.size(); ++e) folded[e % p] += c[e];
    // q^{p-1} = -(1 + q + ... + q^{p-2})
    for (long e = 0; e + 1 < p; ++e) folded[e] -= folded[p - 1];
    std::vector<BigInt> a(p - 1, BigInt(0));
    for (long e = 0; e + 1 < p; ++e) {
      if (folded[e] == 0) continue;
      for (long j = 0; j <= e; ++j) a[j] += binom(e, j) * folded[e];
    }
    return CyclotomicInt(p, std::move(a));
  }

  // q -> q^e
  CyclotomicInt galois(long e) const {
    e = ((e % p_) + p_) % p_;
    if (e == 0) throw ValidationError("galois: exponent divisible by p");
    auto c = q_coeffs();
    std::vector<BigInt> d(p_, BigInt(0));
    for (long i = 0; i + 1 < p_; ++i) d[(i * e) % p_] += c[i];
    return from_q_coeffs(p_, d);
  }

  // field norm, an integer
  BigInt norm() const {
    CyclotomicInt r = *this;
    for (long e = 2; e < p_; ++e) r = r * galois(e);
    return r.a_[0];
  }

  // exact quotient, throws if b does not divide
  CyclotomicInt divide(const CyclotomicInt& b) const {
    same(b);
    if (b.is_zero()) throw std::domain_error("cyclotomic: division by zero");
    CyclotomicInt conj(p_, 1);
    for (long e = 2; e < p_; ++e) conj = conj * b.galois(e);
    BigInt n = (b * conj).a_[0];
    CyclotomicInt r = *this * conj;
    for (auto& c : r.a_) {
      if (c % n != 0) throw std::domain_error("cyclotomic: inexact division");
      c /= n;
    }
    return r;
  }

  bool divisible_by_h() const { return a_[0] % p_ == 0; }

  // a / h, requires divisible_by_h
  CyclotomicInt div_h() const {
    if (!divisible_by_h()) throw std::domain_error("cyclotomic: not divisible by h");
    // p = -h g(h), g(h) = sum_{j>=2} binom(p,j) h^{j-2}
    std::vector<BigInt> r(a_.begin() + 1, a_.end());
    r.resize(p_ - 1, BigInt(0));
    BigInt c = a_[0] / p_;
    for (long j = 2; j <= p_; ++j) r[j - 2] -= c * binom(p_, j);
    return CyclotomicInt(p_, std::move(r));
  }

  std::string str() const {
    std::string s;
    for (std::size_t j = 0; j < a_.size(); ++j) {
      if (a_[j] == 0) continue;
      std::string v = a_[j].str();
      std::string term = j == 0 ? v : (a_[j] == 1 ? "" : a_[j] == -1 ? "-" : v + "*") + "h" + (j > 1 ? "^" + std::to_string(j) : "");
      if (!s.empty()) s += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
      else s = term;
    }
    return (s.empty() ? "0" : s) + " (p=" + std::to_string(p_) + ")";
  }

 private:
  static long check(long p) {
    if (p < 3 || p > 31 || !is_prime(p)) throw ValidationError("cyclotomic: p must be an odd prime <= 31");
    return p;
  }
  void same(const CyclotomicInt& o) const {
    if (p_ != o.p_) throw ValidationError("cyclotomic: mismatched primes");
  }
  // h^{p-1} = -sum_{j=1}^{p-1} binom(p,j) h^{j-1}
  void reduce(std::vector<BigInt>& v) const {
    const long d = p_ - 1;
    for (long k = static_cast<long>(v.size()) - 1; k >= d; --k) {
      if (v[k] == 0) continue;
      BigInt c = v[k];
      v[k] = 0;
      for (long j = 1; j <= d; ++j) v[k - d + j - 1] -= c * binom(p_, j);
    }
    v.resize(d);
  }

  long p_ = 3;
  std::vector<BigInt> a_ = std::vector<BigInt>(2, BigInt(0));
};

inline CyclotomicInt from_q_power(long p, long e) {
  std::vector<BigInt> c(p, BigInt(0));
  c[((e % p) + p) % p] = 1;
  return CyclotomicInt::from_q_coeffs(p, c);
}

// h-adic valuation, kInfinity for zero
inline long v_h(const CyclotomicInt& a) {
  if (a.is_zero()) return kInfinity;
  long v = 0;
  CyclotomicInt x = a;
  while (x.divisible_by_h()) x = x.div_h(), ++v;
  return v;
}

struct Residue {
  BigInt value;
  BigInt modulus;
};

// a_j mod p^k with j = d mod (p-1), k = d div (p-1) + 1
inline Residue pi_d(const CyclotomicInt& a, long d) {
  if (d < 0) throw ValidationError("pi_d: negative degree");
  const long p = a.p();
  long j = d % (p - 1), k = d / (p - 1) + 1;
  BigInt m = 1;
  for (long i = 0; i < k; ++i) m *= p;
  return {mod_pos(a.coeff(j), m), m};
}

inline CyclotomicInt scale(const CyclotomicInt& r, const BigInt& k) { return r * k; }
inline bool is_zero(const CyclotomicInt& r) { return r.is_zero(); }
inline std::string ring_str(const CyclotomicInt& r) { return r.str(); }

inline Residue operator+(const Residue& x, const Residue& y) {
  BigInt m = x.modulus == 0 ? y.modulus : x.modulus;
  if (y.modulus != 0 && y.modulus != m) throw ValidationError("residue: mismatched moduli");
  return {m == 0 ? BigInt(x.value + y.value) : mod_pos(x.value + y.value, m), m};
}
inline Residue scale(const Residue& r, const BigInt& k) {
  return {r.modulus == 0 ? BigInt(r.value * k) : mod_pos(r.value * k, r.modulus), r.modulus};
}
inline bool is_zero(const Residue& r) { return r.value == 0; }
inline std::string ring_str(const Residue& r) { return r.value.str() + " mod " + r.modulus.str(); }

}  // namespace ftinv
