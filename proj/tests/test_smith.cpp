#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "qlam/literal.hpp"
#include "qlam/smith.hpp"

using namespace qlam;

namespace {

SparsePoly lit(const std::string& s) { return parse_poly(s); }

/* Oracle: the product of the first k elementary divisors equals the gcd of
   all k x k minors (determinantal divisors), up to a unit.  Laplace
   expansion and subset enumeration are independent of the SNF code path. */
template <class Ring>
typename Ring::Elem minor_det(const Ring& R, const DenseMat<typename Ring::Elem>& A,
                              std::vector<int> rows, const std::vector<int>& cols) {
  if (rows.empty()) return R.one();
  typename Ring::Elem acc = R.zero();
  int r0 = rows.front();
  rows.erase(rows.begin());
  for (size_t c = 0; c < cols.size(); ++c) {
    std::vector<int> rest;
    for (size_t i = 0; i < cols.size(); ++i)
      if (i != c) rest.push_back(cols[i]);
    auto term = R.mul(A.at(r0, cols[c]), minor_det(R, A, rows, rest));
    acc = (c % 2) ? R.sub(acc, term) : R.add(acc, term);
  }
  return acc;
}

template <class Ring>
typename Ring::Elem determinantal_divisor(const Ring& R, const DenseMat<typename Ring::Elem>& A,
                                          int k) {
  typename Ring::Elem g = R.zero();
  for (int rmask = 0; rmask < (1 << A.rows); ++rmask) {
    if (__builtin_popcount(rmask) != k) continue;
    for (int cmask = 0; cmask < (1 << A.cols); ++cmask) {
      if (__builtin_popcount(cmask) != k) continue;
      std::vector<int> rows, cols;
      for (int i = 0; i < A.rows; ++i)
        if (rmask >> i & 1) rows.push_back(i);
      for (int j = 0; j < A.cols; ++j)
        if (cmask >> j & 1) cols.push_back(j);
      g = ring_gcd(R, g, minor_det(R, A, rows, cols));
    }
  }
  return g;
}

template <class Ring>
bool mat_eq(const Ring& R, const DenseMat<typename Ring::Elem>& A,
            const DenseMat<typename Ring::Elem>& B) {
  if (A.rows != B.rows || A.cols != B.cols) return false;
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      if (!R.is_eq(A.at(i, j), B.at(i, j))) return false;
  return true;
}

template <class Ring>
void check_snf(const Ring& R, const DenseMat<typename Ring::Elem>& A) {
  auto s = smith(R, A);
  EXPECT_TRUE(mat_eq(R, mat_mul(R, mat_mul(R, s.U, A), s.V), s.D));
  EXPECT_TRUE(mat_eq(R, mat_mul(R, s.U, s.Uinv), mat_identity(R, A.rows)));
  EXPECT_TRUE(mat_eq(R, mat_mul(R, s.V, s.Vinv), mat_identity(R, A.cols)));
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      if (i != j) EXPECT_TRUE(R.is_zero(s.D.at(i, j)));
  for (int i = 0; i + 1 < s.rank; ++i)
    EXPECT_TRUE(R.is_zero(R.divmod(s.divisors[i + 1], s.divisors[i]).second));
  for (const auto& d : s.divisors) {
    EXPECT_FALSE(R.is_zero(d));
    EXPECT_TRUE(R.is_eq(R.canonicalize(d).second, R.one()));
  }
  // determinantal-divisor oracle
  typename Ring::Elem prod = R.one();
  for (int k = 1; k <= std::min(A.rows, A.cols); ++k) {
    auto delta = determinantal_divisor(R, A, k);
    if (k <= s.rank) {
      prod = R.mul(prod, s.divisors[k - 1]);
      EXPECT_TRUE(R.is_eq(R.canonicalize(prod).first, delta));
    } else {
      EXPECT_TRUE(R.is_zero(delta));
    }
  }
}

TEST(SmithZ, FrozenExample) {
  RingZ R;
  DenseMat<BigInt> A(2, 2, 0);
  A.at(0, 0) = 2;
  A.at(0, 1) = 4;
  A.at(1, 0) = 6;
  A.at(1, 1) = 8;
  auto s = smith(R, A);
  ASSERT_EQ(s.rank, 2);
  EXPECT_EQ(s.divisors[0], BigInt(2));
  EXPECT_EQ(s.divisors[1], BigInt(4));
  check_snf(R, A);
}

TEST(SmithZ, RandomMatrices) {
  RingZ R;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int trial = 0; trial < 12; ++trial) {
    int m = 2 + trial % 3, n = 2 + (trial / 3) % 3;
    DenseMat<BigInt> A(m, n, 0);
    for (auto& e : A.a) e = dist(rng);
    check_snf(R, A);
  }
}

TEST(SmithZ, ZeroAndEmpty) {
  RingZ R;
  DenseMat<BigInt> Z(2, 3, 0);
  auto s = smith(R, Z);
  EXPECT_EQ(s.rank, 0);
  DenseMat<BigInt> E0(0, 3, 0);
  auto s0 = smith(R, E0);
  EXPECT_EQ(s0.rank, 0);
  EXPECT_EQ(s0.V.rows, 3);
}

TEST(SmithQPoly, FrozenExample) {
  RingQPoly R;
  DenseMat<RingQPoly::Elem> A(2, 2, R.zero());
  A.at(0, 0) = to_qq(lit("q - 1"));
  A.at(0, 1) = to_qq(lit("q^2 - 1"));
  A.at(1, 1) = to_qq(lit("q + 1"));
  auto s = smith(R, A);
  ASSERT_EQ(s.rank, 2);
  EXPECT_TRUE(R.is_eq(s.divisors[0], R.one()));
  EXPECT_TRUE(R.is_eq(s.divisors[1], to_qq(lit("q^2 - 1"))));
  check_snf(R, A);
}

TEST(SmithQPoly, RandomMatrices) {
  RingQPoly R;
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> coeff(-3, 3), deg(0, 2);
  for (int trial = 0; trial < 8; ++trial) {
    DenseMat<RingQPoly::Elem> A(3, 3, R.zero());
    for (auto& e : A.a) {
      RingQPoly::Elem v(deg(rng) + 1, Rational(0));
      for (auto& c : v) c = coeff(rng);
      detail::trim_poly(v);
      e = v;
    }
    check_snf(R, A);
  }
}

TEST(SmithFpPoly, FrozenExample) {
  RingFpPoly R(2);
  DenseMat<RingFpPoly::Elem> A(2, 2, R.zero());
  A.at(0, 0) = to_fp(lit("q"), R);
  A.at(0, 1) = to_fp(lit("q"), R);
  A.at(1, 0) = to_fp(lit("q"), R);
  A.at(1, 1) = to_fp(lit("q^2"), R);
  auto s = smith(R, A);
  ASSERT_EQ(s.rank, 2);
  EXPECT_TRUE(R.is_eq(s.divisors[0], to_fp(lit("q"), R)));
  EXPECT_TRUE(R.is_eq(s.divisors[1], to_fp(lit("q^2 + q"), R)));
  check_snf(R, A);
}

TEST(SmithFpPoly, RandomMatrices) {
  for (long long p : {2, 5}) {
    RingFpPoly R(p);
    std::mt19937_64 rng(33 + p);
    std::uniform_int_distribution<long long> coeff(0, p - 1);
    std::uniform_int_distribution<int> deg(0, 2);
    for (int trial = 0; trial < 8; ++trial) {
      DenseMat<RingFpPoly::Elem> A(3, 3, R.zero());
      for (auto& e : A.a) {
        RingFpPoly::Elem v(deg(rng) + 1, 0);
        for (auto& c : v) c = coeff(rng);
        detail::trim_poly(v);
        e = v;
      }
      check_snf(R, A);
    }
  }
}

TEST(SmithEisenstein, UnitsAndDivmod) {
  RingEisenstein R;
  for (const auto& u : R.units()) {
    EXPECT_TRUE(R.is_unit(u));
    EXPECT_TRUE(R.is_eq(R.mul(u, R.unit_inv(u)), R.one()));
  }
  // norm-decreasing remainders on random pairs
  std::mt19937_64 rng(44);
  std::uniform_int_distribution<int> dist(-6, 6);
  for (int trial = 0; trial < 40; ++trial) {
    RingEisenstein::Elem a{dist(rng), dist(rng)}, b{dist(rng), dist(rng)};
    if (R.is_zero(b)) continue;
    auto [q, r] = R.divmod(a, b);
    EXPECT_TRUE(R.is_eq(a, R.add(R.mul(q, b), r)));
    EXPECT_LT(R.norm(r), R.norm(b));
  }
}

TEST(SmithEisenstein, FrozenExample) {
  RingEisenstein R;
  // 3 = -w^2 (1-w)^2, so gcd(1-w, 3) is 1-w and the divisors are
  // associates of (1-w, 3)
  DenseMat<RingEisenstein::Elem> A(2, 2, R.zero());
  A.at(0, 0) = {1, -1};
  A.at(1, 1) = {3, 0};
  auto s = smith(R, A);
  ASSERT_EQ(s.rank, 2);
  EXPECT_TRUE(R.is_eq(s.divisors[0], R.canonicalize({1, -1}).first));
  EXPECT_TRUE(R.is_eq(s.divisors[1], R.canonicalize({3, 0}).first));
  check_snf(R, A);
}

TEST(SmithEisenstein, RandomMatrices) {
  RingEisenstein R;
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (int trial = 0; trial < 8; ++trial) {
    DenseMat<RingEisenstein::Elem> A(3, 3, R.zero());
    for (auto& e : A.a) e = {dist(rng), dist(rng)};
    check_snf(R, A);
  }
}

TEST(Kernel, PrimitiveBasis) {
  RingZ R;
  DenseMat<BigInt> A(1, 2, 0);
  A.at(0, 0) = 1;
  A.at(0, 1) = 1;
  auto K = kernel_basis(R, A);
  ASSERT_EQ(K.cols, 1);
  EXPECT_EQ(A.at(0, 0) * K.at(0, 0) + A.at(0, 1) * K.at(1, 0), BigInt(0));
  EXPECT_EQ(boost::multiprecision::gcd(K.at(0, 0), K.at(1, 0)), BigInt(1));
}

TEST(Homology, TwoTermComplexOverZ) {
  RingZ R;
  // 0 -> Z --2--> Z -> 0
  DenseMat<BigInt> d01(1, 1, 2);
  DenseMat<BigInt> empty_in(1, 0, 0), empty_out(0, 1, 0);
  auto h0 = homology_at(R, d01, empty_in);
  EXPECT_EQ(h0.free_rank, 0);
  EXPECT_TRUE(h0.torsion.empty());
  auto h1 = homology_at(R, empty_out, d01);
  EXPECT_EQ(h1.free_rank, 0);
  ASSERT_EQ(h1.torsion.size(), 1u);
  EXPECT_EQ(h1.torsion[0], BigInt(2));
}

TEST(Homology, RejectsNonComplex) {
  RingZ R;
  DenseMat<BigInt> d(1, 1, 1);
  EXPECT_THROW(homology_at(R, d, d), error);
}

TEST(Homology, AcyclicIdentityComplex) {
  RingQPoly R;
  DenseMat<RingQPoly::Elem> d(1, 1, R.one());
  DenseMat<RingQPoly::Elem> empty_in(1, 0, R.zero()), empty_out(0, 1, R.zero());
  auto h0 = homology_at(R, d, empty_in);
  auto h1 = homology_at(R, empty_out, d);
  EXPECT_EQ(h0.free_rank + static_cast<int>(h0.torsion.size()), 0);
  EXPECT_EQ(h1.free_rank + static_cast<int>(h1.torsion.size()), 0);
}

TEST(Adaptors, ReductionMaps) {
  SparsePoly f = lit("q^3 + 2*q + 3");
  EXPECT_EQ(to_z_q1(f), BigInt(6));
  EXPECT_EQ(to_z_zeta2(f), BigInt(0));
  RingEisenstein R;
  // q^3 -> 1, so (1 + 3) + 2w
  EXPECT_TRUE(R.is_eq(to_zeta3(f), RingEisenstein::Elem{4, 2}));
  RingFpPoly F2(2);
  EXPECT_TRUE(F2.is_eq(to_fp(f, F2), to_fp(lit("q^3 + 1"), F2)));
  EXPECT_THROW(to_qq(lit("x1")), error);
}

}  // namespace
