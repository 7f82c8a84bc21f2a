#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "ftinv/cyclotomic.hpp"

using namespace ftinv;
using cd = std::complex<double>;

namespace {

// numeric value at q = exp(2 pi i / p) from the q-power coefficients
cd numeric(const CyclotomicInt& a) {
  const long p = a.p();
  const double pi = std::acos(-1.0);
  cd q = std::polar(1.0, 2 * pi / p), h = q - 1.0, v = 0, hp = 1;
  for (auto& c : a.coeffs()) v += static_cast<double>(c) * hp, hp *= h;
  return v;
}

CyclotomicInt random_element(std::mt19937& rng, long p) {
  std::vector<BigInt> c(p - 1);
  for (auto& x : c) x = static_cast<long>(rng() % 7) - 3;
  return CyclotomicInt(p, c);
}

}  // namespace

TEST(Cyclotomic, RootsOfUnitySumToZero) {
  for (long p : {3L, 5L, 7L, 11L, 31L}) {
    CyclotomicInt s(p);
    for (long e = 0; e < p; ++e) s += from_q_power(p, e);
    EXPECT_TRUE(s.is_zero()) << p;
  }
}

TEST(Cyclotomic, RingOperationsMatchComplexEvaluation) {
  std::mt19937 rng(17);
  for (long p : {5L, 7L, 11L}) {
    for (int t = 0; t < 50; ++t) {
      auto a = random_element(rng, p), b = random_element(rng, p);
      EXPECT_LT(std::abs(numeric(a * b) - numeric(a) * numeric(b)), 1e-6);
      EXPECT_LT(std::abs(numeric(a + b) - numeric(a) - numeric(b)), 1e-9);
      const double pi = std::acos(-1.0);
      long e = static_cast<long>(rng() % 50);
      EXPECT_LT(std::abs(numeric(from_q_power(p, e)) - std::polar(1.0, 2 * pi * e / p)), 1e-9);
    }
  }
}

TEST(Cyclotomic, ValuationIsAdditiveAndUltrametric) {
  std::mt19937 rng(2);
  for (long p : {5L, 7L}) {
    EXPECT_EQ(v_h(CyclotomicInt(p, p)), p - 1);
    EXPECT_EQ(v_h(CyclotomicInt::h(p).pow(3)), 3);
    EXPECT_EQ(v_h(CyclotomicInt(p)), kInfinity);
    for (int t = 0; t < 100; ++t) {
      auto a = random_element(rng, p) * CyclotomicInt::h(p).pow(rng() % 4), b = random_element(rng, p);
      if (a.is_zero() || b.is_zero()) continue;
      EXPECT_EQ(v_h(a * b), v_h(a) + v_h(b));
      EXPECT_GE(v_h(a + b), std::min(v_h(a), v_h(b)));
      EXPECT_EQ((a * b).divide(b), a);
    }
  }
}

TEST(Cyclotomic, UnitsAndDivision) {
  for (long p : {5L, 7L, 11L}) {
    EXPECT_EQ(from_q_power(p, 2) * from_q_power(p, p - 2), CyclotomicInt(p, 1));
    EXPECT_THROW(CyclotomicInt(p, 1).divide(CyclotomicInt::h(p)), std::domain_error);
  }
}

TEST(Cyclotomic, TruncationResidues) {
  // 7 + 2h^3 at p = 5
  auto x = CyclotomicInt(5, 7) + CyclotomicInt::h(5).pow(3) * BigInt(2);
  EXPECT_EQ(pi_d(x, 0).value, 2);
  EXPECT_EQ(pi_d(x, 0).modulus, 5);
  EXPECT_EQ(pi_d(x, 3).value, 2);
  EXPECT_EQ(pi_d(x, 4).value, 7);
  EXPECT_EQ(pi_d(x, 4).modulus, 25);
  EXPECT_THROW(pi_d(x, -1), ValidationError);
}

TEST(Cyclotomic, RejectsUnsupportedModulus) {
  EXPECT_THROW(CyclotomicInt(4), ValidationError);
  EXPECT_THROW(CyclotomicInt(5) + CyclotomicInt(7), ValidationError);
}
