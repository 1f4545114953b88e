#pragma once

#include <map>
#include <string>
#include <utility>

#include "qlam/lambda.hpp"

namespace qlam {

/* Levels 0..2 of the lambda-cosimplicial ring on one variable:
     U0 = Z[q][y0],
     U1 = Z[q][y0]{lambda^k(z01)},   z01 = (y1 - y0)/(q - 1),
     U2 = Z[q][y0]{lambda^i(z01) lambda^j(z12)},   z12 = (y2 - y1)/(q - 1),
   with y0, y1, y2 stored as variables 1, 2, 3. Every membership claim is
   certified by exact triangular reduction against the stated basis. */

// lambda^r((y_b - y_a)/(q-1)) in product form, for arbitrary variable slots.
inline PolyPair step_lambda(int r, int a, int b) {
  if (r < 0) throw error("step_lambda: negative index");
  SparsePoly ya = SparsePoly::variable(a), yb = SparsePoly::variable(b);
  SparsePoly qv = SparsePoly::variable(0);
  SparsePoly num = SparsePoly::constant(1);
  SparsePoly qj = SparsePoly::constant(1);
  for (int j = 0; j < r; ++j) {
    num = num * (yb - qj * ya);
    qj = qj * qv;
  }
  SparsePoly den = (qv - SparsePoly::constant(1)).pow(r) * q_factorial(r);
  return {num, den};
}

// Basis element lambda^{r1}(z01) lambda^{r2}(z12) of U2 over Z[q, y0].
inline PolyPair u2_basis(int r1, int r2) {
  return step_lambda(r1, 1, 2) * step_lambda(r2, 2, 3);
}

namespace detail {

// Substitution y_src := y_dst (exponents merge; distinct from rename, which
// requires the target variable to be absent).
inline SparsePoly subst_var(const SparsePoly& f, int src, int dst) {
  SparsePoly out;
  for (const auto& term : f.terms()) {
    ExponentVec ev = term.first;
    Frac s = ev.get(src);
    if (!(s == Frac(0))) {
      ev.set(dst, ev.get(dst) + s);
      ev.set(src, Frac(0));
    }
    out = out + SparsePoly::monomial(term.second, ev.e);
  }
  return out;
}

}  // namespace detail

/* Expansion of an element of Z[q][y0, y1, y2, (q-1)^{-1}] in the U2 basis.
   Reduction peels the graded-lex leading monomial in (y2, y1); the matching
   basis element is unique because [y2^{r2} y1^{r1}] u2_basis(r1, r2) is
   exactly 1/((q-1)^{r1+r2} [r1]_q! [r2]_q!). Throws when any coefficient
   fails to land in Z[q, y0], i.e. when the input is outside the span. */
inline std::map<std::pair<int, int>, SparsePoly> u2_reduce(PolyPair E) {
  std::map<std::pair<int, int>, SparsePoly> out;
  SparsePoly qm1 = SparsePoly::variable(0) - SparsePoly::constant(1);
  for (int guard = 0; !E.num.is_zero(); ++guard) {
    if (guard > 20000) throw error("u2_reduce: reduction did not terminate");
    Frac d3 = E.num.degree_in(3);
    if (!d3.is_integer() || d3.num < 0)
      throw error("u2_reduce: bad exponent in y2");
    int r2 = (int)d3.num;
    SparsePoly top3 = E.num.coeff_of(3, Frac(r2));
    Frac d2 = top3.degree_in(2);
    if (!d2.is_integer() || d2.num < 0)
      throw error("u2_reduce: bad exponent in y1");
    int r1 = (int)d2.num;
    SparsePoly cn = top3.coeff_of(2, Frac(r1));
    SparsePoly target = cn * qm1.pow(r1 + r2) * q_factorial(r1) * q_factorial(r2);
    auto c = target.exact_divide(E.den);
    if (!c) throw error("u2_reduce: coefficient not in Z[q, y0]");
    if (c->degree_in(2).num > 0 || c->degree_in(3).num > 0)
      throw error("u2_reduce: coefficient depends on y1 or y2");
    auto key = std::make_pair(r1, r2);
    auto it = out.find(key);
    if (it == out.end()) out.emplace(key, *c);
    else it->second = it->second + *c;
    E = E - PolyPair::of(*c) * u2_basis(r1, r2);
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

struct CosimplicialReport {
  int lambda_bound = 0;
  int u1_products = 0;       // lambda products closed in U1
  int u2_products = 0;       // cross-level products closed in U2
  int cofaces = 0;           // coface images expanded in the target basis
  int codegeneracies = 0;    // codegeneracy images landing back in the basis

  std::string str() const {
    return "cosimplicial identities up to lambda-degree " +
           std::to_string(lambda_bound) + ": " + std::to_string(u1_products) +
           " U1 products, " + std::to_string(u2_products) + " U2 products, " +
           std::to_string(cofaces) + " coface images, " +
           std::to_string(codegeneracies) + " codegeneracy images";
  }
};

/* Certifies, up to lambda-degree L:
   - U1 is closed under products (basis_expand certificates),
   - U2 is closed under products within each lambda block,
   - the three cofaces U1 -> U2 land in the U2 basis; the middle one
     expands lambda^k(z02) by the addition formula sum_{i+j=k} of
     lambda^i(z01) lambda^j(z12),
   - the codegeneracies kill every lambda^k with k >= 1 (z maps to 0). */
inline CosimplicialReport cosimplicial_check(int L) {
  if (L < 1) throw error("cosimplicial_check: bound must be >= 1");
  CosimplicialReport rep;
  rep.lambda_bound = L;

  // products inside U1: certified integral coefficients
  for (int i = 1; i <= L; ++i)
    for (int j = i; i + j <= L; ++j) {
      auto coeffs = basis_expand(i, j);
      for (const auto& [k, c] : coeffs) {
        if (k < (i > j ? i : j) || k > i + j)
          throw error("cosimplicial_check: U1 expansion out of range");
        if (c.degree_in(2).num > 0)
          throw error("cosimplicial_check: U1 coefficient depends on y1");
      }
      ++rep.u1_products;
    }

  // products inside U2 acting on the second lambda block: reduce
  // lambda^i(z12) lambda^j(z12) and compare with the U1 expansion
  // transported along y0 -> y1 (variable 1 -> 2).
  for (int i = 1; i <= L; ++i)
    for (int j = i; i + j <= L; ++j) {
      auto red = u2_reduce(step_lambda(i, 2, 3) * step_lambda(j, 2, 3));
      auto expect = basis_expand(i, j);
      for (const auto& [key, c] : red)
        if (expect.find(key.second) == expect.end())
          throw error("cosimplicial_check: unexpected U2 term");
      // exactness: the reduction must rebuild the product on the nose
      PolyPair rebuilt = PolyPair::zero();
      for (const auto& [key, c] : red)
        rebuilt = rebuilt + PolyPair::of(c) * u2_basis(key.first, key.second);
      if (!PolyPair::cross_eq(rebuilt, step_lambda(i, 2, 3) * step_lambda(j, 2, 3)))
        throw error("cosimplicial_check: U2 reduction does not rebuild");
      ++rep.u2_products;
    }

  // cofaces on lambda^k(z01); lambda^0 = 1 reduces to the (0,0) basis element
  for (int k = 0; k <= L; ++k) {
    // d0: (y0, y1) -> (y1, y2), so lambda^k(z01) -> lambda^k(z12)
    auto r0 = u2_reduce(step_lambda(k, 2, 3));
    if (r0.size() != 1 || !(r0.begin()->first == std::make_pair(0, k)) ||
        !r0.begin()->second.is_one())
      throw error("cosimplicial_check: d0 image not a basis element");
    ++rep.cofaces;

    // d1: (y0, y1) -> (y0, y2); the addition formula gives coefficient 1
    // on every (i, k-i)
    auto r1 = u2_reduce(step_lambda(k, 1, 3));
    if ((int)r1.size() != k + 1)
      throw error("cosimplicial_check: d1 image has wrong support");
    for (const auto& [key, c] : r1) {
      if (key.first + key.second != k || !c.is_one())
        throw error("cosimplicial_check: d1 addition formula failed");
    }
    ++rep.cofaces;

    // d2: (y0, y1) -> (y0, y1), plain inclusion
    auto r2 = u2_reduce(step_lambda(k, 1, 2));
    if (r2.size() != 1 || !(r2.begin()->first == std::make_pair(k, 0)) ||
        !r2.begin()->second.is_one())
      throw error("cosimplicial_check: d2 image not a basis element");
    ++rep.cofaces;
  }

  // codegeneracies: identifying adjacent variables sends z to 0, so every
  // lambda^k with k >= 1 must vanish and lambda^0 must survive as 1
  for (int k = 1; k <= L; ++k) {
    SparsePoly s0_u1 = detail::subst_var(step_lambda(k, 1, 2).num, 2, 1);
    if (!s0_u1.is_zero())
      throw error("cosimplicial_check: s0 on U1 did not kill lambda^k");
    ++rep.codegeneracies;
  }
  for (int r1 = 0; r1 <= L; ++r1)
    for (int r2 = 0; r1 + r2 <= L; ++r2) {
      if (r1 + r2 == 0) continue;
      PolyPair b = u2_basis(r1, r2);
      // s0 identifies y0, y1 (then y2 shifts down to slot 2)
      SparsePoly s0 = detail::subst_var(b.num, 2, 1);
      bool s0_zero = s0.is_zero();
      if (r1 >= 1 && !s0_zero)
        throw error("cosimplicial_check: s0 on U2 did not kill z01 block");
      if (r1 == 0) {
        SparsePoly expect = detail::subst_var(step_lambda(r2, 2, 3).num, 2, 1);
        if (!(s0 == expect))
          throw error("cosimplicial_check: s0 on U2 mangled z12 block");
      }
      // s1 identifies y1, y2
      SparsePoly s1 = detail::subst_var(b.num, 3, 2);
      if (r2 >= 1 && !s1.is_zero())
        throw error("cosimplicial_check: s1 on U2 did not kill z12 block");
      if (r2 == 0 && !(s1 == step_lambda(r1, 1, 2).num))
        throw error("cosimplicial_check: s1 on U2 mangled z01 block");
      ++rep.codegeneracies;
    }

  return rep;
}

}  // namespace qlam
