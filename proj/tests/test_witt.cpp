#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "qlam/literal.hpp"
#include "qlam/witt.hpp"

using namespace qlam;

namespace {

SparsePoly lit(const std::string& s) { return parse_poly(s); }

/* Reference ghost components, written as plain nested loops with repeated
   multiplication so it shares no code with the library implementation. */
std::vector<SparsePoly> ghost_ref(const WittVector& w) {
  std::vector<SparsePoly> g;
  for (size_t i = 0; i < w.a.size(); ++i) {
    SparsePoly s;
    for (size_t j = 0; j <= i; ++j) {
      SparsePoly apow = SparsePoly::constant(1);
      for (long long k = 0; k < ll_pow(w.p, static_cast<unsigned>(i - j)); ++k)
        apow = apow * w.a[j];
      s = s + SparsePoly::constant(big_pow(w.p, static_cast<unsigned>(j))) * apow;
    }
    g.push_back(s);
  }
  return g;
}

/* Length-3 back-solve with the divisions spelled out, independent of the
   library's generic loop. */
WittVector w3_from_ghost_ref(int p, const std::vector<SparsePoly>& g) {
  SparsePoly a0 = g[0];
  SparsePoly a0p = SparsePoly::constant(1), a0pp = SparsePoly::constant(1);
  for (int k = 0; k < p; ++k) a0p = a0p * a0;
  for (int k = 0; k < p * p; ++k) a0pp = a0pp * a0;
  SparsePoly a1 = (g[1] - a0p).divide_scalar_exact(p);
  SparsePoly a1p = SparsePoly::constant(1);
  for (int k = 0; k < p; ++k) a1p = a1p * a1;
  SparsePoly a2 = (g[2] - a0pp - SparsePoly::constant(p) * a1p)
                      .divide_scalar_exact(BigInt(p) * p);
  return WittVector{p, {a0, a1, a2}};
}

std::vector<SparsePoly> componentwise(const std::vector<SparsePoly>& u,
                                      const std::vector<SparsePoly>& v,
                                      bool mul) {
  std::vector<SparsePoly> r;
  for (size_t i = 0; i < u.size(); ++i)
    r.push_back(mul ? u[i] * v[i] : u[i] + v[i]);
  return r;
}

SparsePoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3), deg(0, 2);
  SparsePoly f;
  for (int t = 0; t < 2; ++t) {
    int c = coeff(rng);
    if (c == 0) continue;
    f = f + SparsePoly::monomial(c, {{1, Frac(deg(rng))}});
  }
  return f;
}

WittVector random_witt(int p, int len, std::mt19937_64& rng) {
  WittVector w{p, {}};
  for (int i = 0; i < len; ++i) w.a.push_back(random_poly(rng));
  return w;
}

TEST(Ghost, SymbolicLength2) {
  WittVector w{2, {SparsePoly::variable(1), SparsePoly::variable(2)}};
  auto g = ghost(w);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], lit("x1"));
  EXPECT_EQ(g[1], lit("x1^2 + 2*x2"));
}

TEST(Ghost, TeichmullerShape) {
  SparsePoly a = lit("1 + x1");
  for (int p : {2, 3}) {
    WittVector w = teichmuller(p, 3, a);
    auto g = ghost(w);
    EXPECT_EQ(g[0], a);
    EXPECT_EQ(g[1], a.pow(static_cast<unsigned>(p)));
    EXPECT_EQ(g[2], a.pow(static_cast<unsigned>(p * p)));
  }
}

TEST(Ghost, FrozenIntegerValue) {
  WittVector w{3, {SparsePoly::constant(1), SparsePoly::constant(1)}};
  auto g = ghost(w);
  EXPECT_EQ(g[0], SparsePoly::constant(1));
  EXPECT_EQ(g[1], SparsePoly::constant(4));
}

TEST(Ghost, MatchesReference) {
  std::mt19937_64 rng(2024);
  for (int p : {2, 3})
    for (int trial = 0; trial < 8; ++trial) {
      WittVector w = random_witt(p, 3, rng);
      auto g = ghost(w), gr = ghost_ref(w);
      ASSERT_EQ(g.size(), gr.size());
      for (size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g[i], gr[i]);
    }
}

TEST(FromGhost, RoundTrip) {
  std::mt19937_64 rng(77);
  for (int p : {2, 3})
    for (int trial = 0; trial < 6; ++trial) {
      WittVector w = random_witt(p, 4, rng);
      WittVector back = from_ghost(p, ghost(w));
      EXPECT_EQ(back, w);
    }
}

TEST(FromGhost, RejectsNonIntegralGhost) {
  std::vector<SparsePoly> g{SparsePoly::constant(0), SparsePoly::constant(1)};
  EXPECT_THROW(from_ghost(2, g), non_exact_division);
}

TEST(Arithmetic, FrozenAdd) {
  WittVector one{2, {SparsePoly::constant(1), SparsePoly::constant(0)}};
  WittVector s = witt_add(one, one);
  EXPECT_EQ(s.a[0], SparsePoly::constant(2));
  EXPECT_EQ(s.a[1], SparsePoly::constant(-1));
}

TEST(Arithmetic, AddIdentity) {
  std::mt19937_64 rng(5);
  WittVector w = random_witt(2, 4, rng);
  WittVector z{2, std::vector<SparsePoly>(4)};
  EXPECT_EQ(witt_add(w, z), w);
}

TEST(Arithmetic, TeichmullerTimesTeichmuller) {
  WittVector u = teichmuller(2, 2, SparsePoly::constant(1));
  WittVector v = teichmuller(2, 2, SparsePoly::variable(1));
  EXPECT_EQ(witt_mul(u, v), v);
}

TEST(Arithmetic, GhostIsRingHomomorphism) {
  std::mt19937_64 rng(31337);
  for (int p : {2, 3}) {
    int len = p == 2 ? 4 : 3;
    for (int trial = 0; trial < 5; ++trial) {
      WittVector u = random_witt(p, len, rng), v = random_witt(p, len, rng);
      auto gu = ghost_ref(u), gv = ghost_ref(v);
      auto sum = ghost_ref(witt_add(u, v));
      auto prod = ghost_ref(witt_mul(u, v));
      for (int i = 0; i < len; ++i) {
        EXPECT_EQ(sum[i], gu[i] + gv[i]);
        EXPECT_EQ(prod[i], gu[i] * gv[i]);
      }
    }
  }
}

TEST(Arithmetic, MatchesSymbolicLength3Oracle) {
  for (int p : {2, 3}) {
    WittVector u{p, {lit("x1"), lit("x2"), lit("x3")}};
    WittVector v{p, {lit("x4"), lit("x5"), lit("x6")}};
    auto gu = ghost_ref(u), gv = ghost_ref(v);
    WittVector sum = w3_from_ghost_ref(p, componentwise(gu, gv, false));
    WittVector prod = w3_from_ghost_ref(p, componentwise(gu, gv, true));
    EXPECT_EQ(witt_add(u, v), sum);
    EXPECT_EQ(witt_mul(u, v), prod);
  }
}

TEST(Arithmetic, ClassicalAdditionPolynomial) {
  WittVector u{2, {lit("x1"), lit("x2"), lit("x3")}};
  WittVector v{2, {lit("x4"), lit("x5"), lit("x6")}};
  WittVector s = witt_add(u, v);
  EXPECT_EQ(s.a[1], lit("x2 + x5 - x1*x4"));
}

TEST(Ops, TeichmullerMultiplicative) {
  std::mt19937_64 rng(99);
  for (int p : {2, 3})
    for (int trial = 0; trial < 5; ++trial) {
      SparsePoly a = random_poly(rng), b = random_poly(rng);
      EXPECT_EQ(witt_mul(teichmuller(p, 3, a), teichmuller(p, 3, b)),
                teichmuller(p, 3, a * b));
    }
}

TEST(Ops, VFFrozenExamples) {
  WittVector t1 = teichmuller(2, 1, SparsePoly::constant(1));
  WittVector v = verschiebung(t1);
  ASSERT_EQ(v.a.size(), 2u);
  EXPECT_EQ(v.a[0], SparsePoly::constant(0));
  EXPECT_EQ(v.a[1], SparsePoly::constant(1));
  WittVector f = frobenius(v);
  ASSERT_EQ(f.a.size(), 1u);
  EXPECT_EQ(f.a[0], SparsePoly::constant(2));
}

TEST(Ops, FVIsMultiplicationByP) {
  std::mt19937_64 rng(404);
  for (int p : {2, 3})
    for (int trial = 0; trial < 4; ++trial) {
      WittVector w = random_witt(p, 3, rng);
      WittVector pw = w;
      for (int k = 1; k < p; ++k) pw = witt_add(pw, w);
      EXPECT_EQ(frobenius(verschiebung(w)), pw);
    }
}

TEST(Ops, ProjectionFormula) {
  std::mt19937_64 rng(808);
  for (int p : {2, 3})
    for (int trial = 0; trial < 4; ++trial) {
      SparsePoly a = random_poly(rng);
      WittVector w = random_witt(p, 2, rng);
      WittVector lhs = witt_mul(teichmuller(p, 3, a), verschiebung(w));
      WittVector rhs = verschiebung(
          witt_mul(teichmuller(p, 2, a.pow(static_cast<unsigned>(p))), w));
      EXPECT_EQ(lhs, rhs);
    }
}

TEST(Ops, LengthAndPrimeGuards) {
  WittVector w{2, {SparsePoly::constant(1)}};
  EXPECT_THROW(frobenius(w), error);
  WittVector u{3, {SparsePoly::constant(1)}};
  EXPECT_THROW(witt_add(w, u), error);
  WittVector empty{2, {}};
  EXPECT_THROW(ghost(empty), error);
}

TEST(TeichmullerLimit, FrozenValuationsP2) {
  QuotientSpec spec;
  spec.add_int_modulus(2, 12);
  spec.add_qroot_minus_one(2, 3, 12);
  auto rep = teichmuller_limit_check(2, 0, 3, spec);
  ASSERT_EQ(rep.valuations.size(), 3u);
  EXPECT_EQ(rep.valuations[0], 4);
  EXPECT_EQ(rep.valuations[1], 6);
  EXPECT_EQ(rep.valuations[2], 8);
  EXPECT_TRUE(rep.strictly_increasing);
}

TEST(TeichmullerLimit, FrozenValuationsDeeperRoot) {
  QuotientSpec spec;
  spec.add_int_modulus(2, 12);
  spec.add_qroot_minus_one(2, 3, 12);
  auto rep = teichmuller_limit_check(2, 1, 2, spec);
  ASSERT_EQ(rep.valuations.size(), 2u);
  EXPECT_EQ(rep.valuations[0], 3);
  EXPECT_EQ(rep.valuations[1], 4);
  EXPECT_TRUE(rep.strictly_increasing);
}

TEST(TeichmullerLimit, FrozenValuationsP3) {
  QuotientSpec spec;
  spec.add_int_modulus(3, 10);
  spec.add_qroot_minus_one(3, 2, 12);
  auto rep = teichmuller_limit_check(3, 0, 2, spec);
  ASSERT_EQ(rep.valuations.size(), 2u);
  EXPECT_EQ(rep.valuations[0], 3);
  EXPECT_EQ(rep.valuations[1], 6);
  EXPECT_TRUE(rep.strictly_increasing);
}

TEST(TeichmullerLimit, ShallowSpecRejected) {
  QuotientSpec spec;
  spec.add_int_modulus(2, 12);
  spec.add_qroot_minus_one(2, 1, 12);
  EXPECT_THROW(teichmuller_limit_check(2, 0, 3, spec), error);
}

}  // namespace
