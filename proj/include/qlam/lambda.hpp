#pragma once

#include <map>
#include <vector>

#include "qlam/poly.hpp"
#include "qlam/qanalogue.hpp"

namespace qlam {

/* Localized elements as explicit (numerator, denominator) pairs; equality is
   cross-multiplication, never fraction-field arithmetic. */
struct PolyPair {
  SparsePoly num;
  SparsePoly den = SparsePoly::constant(1);

  static PolyPair of(const SparsePoly& f) { return {f, SparsePoly::constant(1)}; }
  static PolyPair zero() { return of({}); }

  void normalize() {
    if (num.is_zero()) {
      den = SparsePoly::constant(1);
      return;
    }
    BigInt g = boost::multiprecision::gcd(num.content(), den.content());
    if (g > 1) {
      num = num.divide_scalar_exact(g);
      den = den.divide_scalar_exact(g);
    }
  }

  friend PolyPair operator*(const PolyPair& a, const PolyPair& b) {
    PolyPair r{a.num * b.num, a.den * b.den};
    r.normalize();
    return r;
  }
  friend PolyPair operator+(const PolyPair& a, const PolyPair& b) {
    PolyPair r{a.num * b.den + b.num * a.den, a.den * b.den};
    r.normalize();
    return r;
  }
  friend PolyPair operator-(const PolyPair& a, const PolyPair& b) {
    return a + (-b);
  }
  PolyPair operator-() const { return {-num, den}; }

  static bool cross_eq(const PolyPair& a, const PolyPair& b) {
    return a.num * b.den == b.num * a.den;
  }
};

inline SparsePoly adams(long long n, const SparsePoly& f) { return f.adams(n); }

/* lambda^k via the Newton recursion
   k lambda^k(f) = sum_{i=1..k} (-1)^{i-1} Psi^i(f) lambda^{k-i}(f),
   with every division by k certified exact. */
inline std::vector<SparsePoly> lambda_all(int k, const SparsePoly& f) {
  if (k < 0) throw error("lambda_op: negative k");
  std::vector<SparsePoly> lam(k + 1);
  lam[0] = SparsePoly::constant(1);
  std::vector<SparsePoly> psi(k + 1);
  for (int i = 1; i <= k; ++i) psi[i] = f.adams(i);
  for (int j = 1; j <= k; ++j) {
    SparsePoly acc;
    for (int i = 1; i <= j; ++i) {
      SparsePoly t = psi[i] * lam[j - i];
      acc = (i % 2) ? acc + t : acc - t;
    }
    lam[j] = acc.divide_scalar_exact(j);
  }
  return lam;
}

inline SparsePoly lambda_op(int k, const SparsePoly& f) {
  return lambda_all(k, f)[k];
}

/* Closed product form of lambda^k((y-x)/(q-1)) with x = x1, y = x2:
   prod_{j<k}(y - q^j x) over (q-1)^k [k]_q!. */
inline PolyPair diffq_lambda_closed(int k) {
  if (k < 0) throw error("diffq_lambda: negative k");
  SparsePoly x = SparsePoly::variable(1), y = SparsePoly::variable(2);
  SparsePoly qv = SparsePoly::variable(0);
  SparsePoly num = SparsePoly::constant(1);
  SparsePoly qj = SparsePoly::constant(1);
  for (int j = 0; j < k; ++j) {
    num = num * (y - qj * x);
    qj = qj * qv;
  }
  SparsePoly den =
      (qv - SparsePoly::constant(1)).pow(k) * q_factorial(k);
  return {num, den};
}

struct DiffQLambdaForms {
  PolyPair product;
  PolyPair sum;
};

/* Both closed forms of lambda^k((y-x)/(q-1)); the sum form is assembled
   termwise as q^{j(j-1)/2} (-x)^j y^{k-j} / ((q-1)^k [j]_q! [k-j]_q!). */
inline DiffQLambdaForms diffq_lambda(int k) {
  DiffQLambdaForms out;
  out.product = diffq_lambda_closed(k);
  SparsePoly x = SparsePoly::variable(1), y = SparsePoly::variable(2);
  SparsePoly qm1k = (SparsePoly::variable(0) - SparsePoly::constant(1)).pow(k);
  PolyPair acc = PolyPair::zero();
  for (int j = 0; j <= k; ++j) {
    SparsePoly n = SparsePoly::monomial(1, {{0, Frac(static_cast<long long>(j) * (j - 1) / 2)}}) *
                   x.pow(j) * y.pow(k - j);
    if (j % 2) n = -n;
    PolyPair term{n, qm1k * q_factorial(j) * q_factorial(k - j)};
    acc = acc + term;
  }
  out.sum = acc;
  return out;
}

/* Expansion of lambda^i(z) lambda^j(z) in the basis {lambda^k(z)}; the
   coefficients are certified to lie in Z[q,x] by exact division during a
   triangular reduction against the leading y-powers of the closed forms. */
inline std::map<int, SparsePoly> basis_expand(int i, int j) {
  if (i < 0 || j < 0) throw error("basis_expand: negative index");
  PolyPair E = diffq_lambda_closed(i) * diffq_lambda_closed(j);
  std::map<int, SparsePoly> out;
  SparsePoly qm1 = SparsePoly::variable(0) - SparsePoly::constant(1);
  while (!E.num.is_zero()) {
    Frac d = E.num.degree_in(2);
    if (!d.is_integer() || d.num < 0)
      throw error("basis_expand: unexpected y-degree");
    int k = static_cast<int>(d.num);
    SparsePoly cn = E.num.coeff_of(2, d);
    SparsePoly target = cn * qm1.pow(k) * q_factorial(k);
    auto c = target.exact_divide(E.den);
    if (!c || c->degree_in(2) > Frac(0))
      throw non_exact_division("basis_expand: coefficient not in Z[q,x]");
    out[k] = *c;
    E = E - PolyPair::of(*c) * diffq_lambda_closed(k);
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

/* (q-1)^k lambda^k(a/(q-1)) as a pair D_k, via the recursion
   [k]_q D_k = sum_{i=1..k} (q-1)^{i-1} lambda^i(a) D_{k-i}, D_0 = 1. */
inline PolyPair q_divided_power(int k, const SparsePoly& a) {
  if (k < 0) throw error("q_divided_power: negative k");
  std::vector<SparsePoly> lam = lambda_all(k, a);
  SparsePoly qm1 = SparsePoly::variable(0) - SparsePoly::constant(1);
  std::vector<PolyPair> D(k + 1);
  D[0] = PolyPair::of(SparsePoly::constant(1));
  for (int m = 1; m <= k; ++m) {
    PolyPair acc = PolyPair::zero();
    for (int i = 1; i <= m; ++i)
      acc = acc + PolyPair::of(qm1.pow(i - 1) * lam[i]) * D[m - i];
    acc.den = acc.den * q_int(m);
    acc.normalize();
    D[m] = acc;
  }
  return D[k];
}

}  // namespace qlam
