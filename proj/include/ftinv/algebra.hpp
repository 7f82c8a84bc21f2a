#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ftinv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EngineCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt mod_pos(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline BigInt binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::string to_str(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

// dense integer matrix, row major
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<BigInt> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    for (auto& row : init) {
      if (row.size() != cols) throw ValidationError("ragged matrix");
      for (long v : row) a.emplace_back(v);
    }
  }
  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  BigInt& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  IntMatrix transpose() const {
    IntMatrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  bool is_symmetric() const {
    if (rows != cols) return false;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = i + 1; j < cols; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }
  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw ValidationError("dimension mismatch");
    IntMatrix r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

struct SmithForm {
  std::vector<BigInt> factors;  // d_1 | d_2 | ... , length min(rows, cols)
  std::size_t rank = 0;
  IntMatrix U, V;  // U * M * V = D
};

// Smith normal form by elimination with smallest nonzero pivot
inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows, C = m.cols;
  IntMatrix d = m, U = IntMatrix::identity(R), V = IntMatrix::identity(C);
  auto swap_rows = [&](IntMatrix& x, std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < x.cols; ++k) std::swap(x(i, k), x(j, k));
  };
  auto swap_cols = [&](IntMatrix& x, std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < x.rows; ++k) std::swap(x(k, i), x(k, j));
  };
  auto add_row = [&](IntMatrix& x, std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t k = 0; k < x.cols; ++k) x(dst, k) += f * x(src, k);
  };
  auto add_col = [&](IntMatrix& x, std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t k = 0; k < x.rows; ++k) x(k, dst) += f * x(k, src);
  };
  std::size_t n = std::min(R, C);
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // smallest nonzero entry in the trailing block
      std::optional<std::pair<std::size_t, std::size_t>> piv;
      BigInt best;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (d(i, j) != 0) {
            BigInt v = abs(d(i, j));
            if (!piv || v < best) best = v, piv = {i, j};
          }
      if (!piv) goto done;
      swap_rows(d, t, piv->first), swap_rows(U, t, piv->first);
      swap_cols(d, t, piv->second), swap_cols(V, t, piv->second);
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        BigInt q = floor_div(d(i, t), d(t, t));
        if (q != 0) add_row(d, i, t, -q), add_row(U, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        BigInt q = floor_div(d(t, j), d(t, t));
        if (q != 0) add_col(d, j, t, -q), add_col(V, j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the rest by the pivot
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row(d, t, i, 1), add_row(U, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t k = 0; k < C; ++k) d(t, k) = -d(t, k);
      for (std::size_t k = 0; k < R; ++k) U(t, k) = -U(t, k);
    }
  }
done:
  SmithForm s;
  for (std::size_t i = 0; i < n; ++i) {
    s.factors.push_back(d(i, i));
    if (d(i, i) != 0) ++s.rank;
  }
  s.U = std::move(U);
  s.V = std::move(V);
  return s;
}

inline std::size_t rank_mod_p(const IntMatrix& m, long p) {
  if (!is_prime(p)) throw ValidationError("rank_mod_p: modulus is not prime");
  std::vector<std::vector<long>> x(m.rows, std::vector<long>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      x[i][j] = static_cast<long>(mod_pos(m(i, j), p));
  auto inv = [p](long v) {
    long r = 1, e = p - 2, b = v % p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p, e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
    std::size_t r = rank;
    while (r < m.rows && x[r][c] == 0) ++r;
    if (r == m.rows) continue;
    std::swap(x[r], x[rank]);
    long iv = inv(x[rank][c]);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == rank || x[i][c] == 0) continue;
      long f = x[i][c] * iv % p;
      for (std::size_t j = c; j < m.cols; ++j) x[i][j] = ((x[i][j] - f * x[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// rational matrix helpers
using RatMatrix = std::vector<std::vector<Rational>>;

inline RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows, std::vector<Rational>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r[i][j] = Rational(m(i, j));
  return r;
}

inline Rational determinant(RatMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && m[r][c] == 0) ++r;
    if (r == n) return 0;
    if (r != c) std::swap(m[r], m[c]), det = -det;
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

inline BigInt determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw ValidationError("determinant of non-square matrix");
  return numerator(determinant(to_rat(m)));
}

// unique solution of a x = b over Q, nullopt if singular
inline std::optional<std::vector<Rational>> solve(RatMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && a[r][c] == 0) ++r;
    if (r == n) return std::nullopt;
    std::swap(a[r], a[c]), std::swap(b[r], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

struct SignatureNullity {
  long pos = 0, neg = 0, zero = 0;
  long signature() const { return pos - neg; }
  friend bool operator==(const SignatureNullity&, const SignatureNullity&) = default;
};

// congruence diagonalization over Q
inline SignatureNullity signature_nullity(const RatMatrix& m0) {
  RatMatrix m = m0;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    if (m[i].size() != n) throw ValidationError("signature of non-square matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j] != m[j][i]) throw ValidationError("signature of non-symmetric matrix");
  SignatureNullity s;
  std::vector<bool> done(n, false);
  std::vector<std::size_t> order;
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> piv;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && m[i][i] != 0) { piv = i; break; }
    if (!piv) {
      // all remaining diagonal entries vanish: look for an off-diagonal pair
      std::optional<std::pair<std::size_t, std::size_t>> pr;
      for (std::size_t i = 0; i < n && !pr; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!done[i] && !done[j] && m[i][j] != 0) { pr = {i, j}; break; }
      if (!pr) break;
      auto [i, j] = *pr;
      // e_i += e_j makes m[i][i] = 2 m[i][j]
      for (std::size_t k = 0; k < n; ++k) m[i][k] += m[j][k];
      for (std::size_t k = 0; k < n; ++k) m[k][i] += m[k][j];
      piv = i;
    }
    std::size_t p = *piv;
    Rational d = m[p][p];
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || i == p || m[i][p] == 0) continue;
      Rational f = m[i][p] / d;
      for (std::size_t k = 0; k < n; ++k) m[i][k] -= f * m[p][k];
      for (std::size_t k = 0; k < n; ++k) m[k][i] -= f * m[k][p];
    }
    done[p] = true;
    (d > 0 ? s.pos : s.neg)++;
  }
  s.zero = static_cast<long>(n) - s.pos - s.neg;
  return s;
}

inline SignatureNullity signature_nullity(const IntMatrix& m) { return signature_nullity(to_rat(m)); }

// Hermite-style echelon basis of an integer lattice, used for membership tests
struct Lattice {
  std::size_t dim = 0;
  std::vector<std::vector<BigInt>> basis;  // echelon rows, pivot columns increasing
  std::vector<std::size_t> pivots;

  explicit Lattice(std::size_t n) : dim(n) {}

  // reduce v against the basis, returns the remainder
  std::vector<BigInt> reduce(std::vector<BigInt> v) const {
    for (std::size_t r = 0; r < basis.size(); ++r) {
      std::size_t c = pivots[r];
      if (v[c] == 0) continue;
      BigInt q = floor_div(v[c], basis[r][c]);
      for (std::size_t j = c; j < dim; ++j) v[j] -= q * basis[r][j];
    }
    return v;
  }
  bool contains(const std::vector<BigInt>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const BigInt& x) { return x == 0; });
  }
  void add(std::vector<BigInt> v) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim; ++c) {
      if (v[c] == 0) {
        if (r < basis.size() && pivots[r] == c) ++r;
        continue;
      }
      if (r < basis.size() && pivots[r] == c) {
        // gcd step between basis row r and v in column c
        auto& b = basis[r];
        while (v[c] != 0) {
          BigInt q = floor_div(b[c], v[c]);
          for (std::size_t j = c; j < dim; ++j) b[j] -= q * v[j];
          std::swap(b, v);
        }
        if (b[c] < 0)
          for (std::size_t j = c; j < dim; ++j) b[j] = -b[j];
        ++r;
        continue;
      }
      if (v[c] < 0)
        for (std::size_t j = c; j < dim; ++j) v[j] = -v[j];
      basis.insert(basis.begin() + static_cast<long>(r), v);
      pivots.insert(pivots.begin() + static_cast<long>(r), c);
      // rows below may now be reducible, keep them but the echelon is intact
      return;
    }
  }
};

// polynomial in one variable with rational coefficients, sparse
struct ZPoly {
  std::map<int, Rational> c;

  ZPoly() = default;
  ZPoly(Rational v) { if (v != 0) c[0] = v; }
  static ZPoly monomial(int e, Rational v = 1) {
    ZPoly p;
    if (v != 0) p.c[e] = v;
    return p;
  }
  Rational coeff(int e) const {
    auto it = c.find(e);
    return it == c.end() ? Rational(0) : it->second;
  }
  bool is_zero() const { return c.empty(); }
  int lowest() const { return c.empty() ? 0 : c.begin()->first; }
  int degree() const { return c.empty() ? -1 : c.rbegin()->first; }
  void trim() {
    for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
  }
  ZPoly& operator+=(const ZPoly& o) {
    for (auto& [e, v] : o.c) c[e] += v;
    trim();
    return *this;
  }
  ZPoly& operator-=(const ZPoly& o) {
    for (auto& [e, v] : o.c) c[e] -= v;
    trim();
    return *this;
  }
  friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
  friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
  friend ZPoly operator-(const ZPoly& a) { return ZPoly() - a; }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    ZPoly r;
    for (auto& [e1, v1] : a.c)
      for (auto& [e2, v2] : b.c) r.c[e1 + e2] += v1 * v2;
    r.trim();
    return r;
  }
  ZPoly pow(unsigned k) const {
    ZPoly r(1);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c == b.c; }
  bool divisible_by_power(int k) const { return c.empty() || c.begin()->first >= k; }

  // "1+z^2", "-3*z+z^4/2"
  std::string str(const std::string& var = "z") const {
    if (c.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [e, v] : c) {
      Rational a = v;
      if (!first) s += a < 0 ? "-" : "+";
      else if (a < 0) s += "-";
      if (a < 0) a = -a;
      first = false;
      std::string num = to_str(Rational(numerator(a))), den;
      if (denominator(a) != 1) den = "/" + to_str(Rational(denominator(a)));
      if (e == 0) s += num + den;
      else {
        std::string mon = var + (e == 1 ? "" : "^" + std::to_string(e));
        s += (num == "1" ? mon : num + "*" + mon) + den;
      }
    }
    return s;
  }
};

// finite Z-linear combination of basis objects keyed by a canonical encoding
template <class B>
struct FormalSum {
  struct Term {
    B value;
    BigInt coeff;
  };
  std::map<std::string, Term> terms;

  void add(const B& b, const BigInt& k) {
    if (k == 0) return;
    std::string key = b.encode();
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(key, Term{b, k});
      return;
    }
    it->second.coeff += k;
    if (it->second.coeff == 0) terms.erase(it);
  }
  FormalSum& operator+=(const FormalSum& o) {
    for (auto& [k, t] : o.terms) add(t.value, t.coeff);
    return *this;
  }
  FormalSum& operator*=(const BigInt& k) {
    if (k == 0) terms.clear();
    for (auto& [key, t] : terms) t.coeff *= k;
    return *this;
  }
  friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
  friend FormalSum operator-(FormalSum a, FormalSum b) { return a += (b *= -1); }
  friend bool operator==(const FormalSum& a, const FormalSum& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (auto& [k, t] : a.terms) {
      auto it = b.terms.find(k);
      if (it == b.terms.end() || it->second.coeff != t.coeff) return false;
    }
    return true;
  }
  bool empty() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }
};

}  // namespace ftinv
