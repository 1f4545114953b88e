#pragma once

#include <vector>

#include "qlam/poly.hpp"
#include "qlam/qanalogue.hpp"

namespace qlam {

namespace detail {

inline BigInt egcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  BigInt x1, y1;
  BigInt g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt x, y;
  BigInt g = egcd(((a % m) + m) % m, m, x, y);
  if (g != 1) throw not_a_unit("no inverse modulo " + m.str());
  return ((x % m) + m) % m;
}

}  // namespace detail

/* Quotient data: an integer modulus p^a plus monic polynomial moduli in a
   root of q.  reduce() is idempotent and commutes with ring operations. */
struct QuotientSpec {
  int p = 0;
  unsigned a = 0;
  struct PolyMod {
    SparsePoly m;     // monic in t = q^(1/scale)
    long long scale;  // p^M
    std::string label;
  };
  std::vector<PolyMod> mods;

  void add_int_modulus(int prime, unsigned exp) {
    if (prime < 2 || exp == 0) throw error("bad integer modulus");
    if (p && p != prime) throw error("conflicting integer moduli");
    p = prime;
    a = exp;
  }

  // (q^(1/p^M) - 1)^b
  void add_qroot_minus_one(int prime, int M, unsigned b) {
    long long scale = ll_pow(prime, M);
    SparsePoly root = SparsePoly::monomial(1, {{0, Frac(1, scale)}});
    PolyMod pm;
    pm.m = (root - SparsePoly::constant(1)).pow(b);
    pm.scale = scale;
    pm.label = "(q^(1/" + std::to_string(scale) + ")-1)^" + std::to_string(b);
    mods.push_back(std::move(pm));
  }

  // [p]_{q^(1/p^M)}
  void add_phi_p(int prime, int M) {
    long long scale = ll_pow(prime, M);
    PolyMod pm;
    pm.m = q_int(prime, scale);
    pm.scale = scale;
    pm.label = "[" + std::to_string(prime) + "]_q^(1/" + std::to_string(scale) + ")";
    mods.push_back(std::move(pm));
  }

  BigInt int_modulus() const { return p ? big_pow(p, a) : BigInt(0); }

  SparsePoly reduce(SparsePoly f) const {
    for (int round = 0; round < 4; ++round) {
      SparsePoly before = f;
      for (const auto& pm : mods) f = poly_rem(f, pm);
      if (p) f = coeff_mod(f, int_modulus());
      if (f == before) break;
    }
    return f;
  }

 private:
  /* Remainder of f by a monic polynomial in t = q^(1/scale); both are viewed
     at the common refinement of their q-exponent denominators. */
  static SparsePoly poly_rem(SparsePoly f, const PolyMod& pm) {
    long long scale = pm.scale;
    for (const auto& t : f.terms()) {
      Frac e = t.first.get(0);
      long long d = e.den;
      if (scale % d != 0) {
        // refine: common denominator must stay a prime power; Ring::join
        // already guarantees a single prime, so lcm is max
        scale = std::max(scale, d * (scale / std::gcd(scale, d)));
      }
    }
    long long mdeg = 0;
    for (const auto& t : pm.m.terms()) {
      Frac e = t.first.get(0);
      mdeg = std::max(mdeg, e.num * (scale / e.den));
    }
    if (mdeg == 0) throw error("constant polynomial modulus");
    while (true) {
      long long top = -1;
      for (const auto& t : f.terms()) {
        Frac e = t.first.get(0);
        if (e.num < 0) throw error("reduce: negative q-exponent");
        top = std::max(top, e.num * (scale / e.den));
      }
      if (top < mdeg) break;
      SparsePoly c = f.coeff_of(0, Frac(top, scale));
      SparsePoly shift = SparsePoly::monomial(1, {{0, Frac(top - mdeg, scale)}});
      f = f - c * shift * pm.m;
    }
    return f;
  }

  static SparsePoly coeff_mod(const SparsePoly& f, const BigInt& m) {
    return f.map_coeffs([&m](const BigInt& c) { return ((c % m) + m) % m; });
  }
};

/* Newton iteration g <- g(2 - fg) for the inverse of f modulo the spec.
   The seed inverts the image of f under q -> 1 modulo p^a. */
inline SparsePoly truncated_inverse(const SparsePoly& f,
                                    const QuotientSpec& spec) {
  BigInt c = f.evaluate_all_ones();
  SparsePoly g;
  if (spec.p) {
    BigInt m = spec.int_modulus();
    if (boost::multiprecision::gcd(((c % m) + m) % m, BigInt(spec.p)) != 1)
      throw not_a_unit("constant term " + c.str() + " is not a unit modulo " +
                       std::to_string(spec.p));
    g = SparsePoly::constant(detail::mod_inverse(c, m));
  } else {
    if (c != 1 && c != -1)
      throw not_a_unit("constant term " + c.str() + " is not a unit");
    g = SparsePoly::constant(c);
  }
  SparsePoly one = SparsePoly::constant(1);
  SparsePoly two = SparsePoly::constant(2);
  for (int it = 0; it < 64; ++it) {
    SparsePoly next = spec.reduce(g * (two - f * g));
    bool done = spec.reduce(f * next - one).is_zero();
    if (next == g && !done) throw not_a_unit("Newton iteration stalled");
    g = next;
    if (done) return g;
  }
  throw not_a_unit("Newton iteration did not converge");
}

}  // namespace qlam
