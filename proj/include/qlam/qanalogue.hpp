#pragma once

#include "qlam/poly.hpp"

namespace qlam {

/* [n] in the variable q^(1/r): 1 + q^(1/r) + ... + q^((n-1)/r).
   r must be 1 or a prime power (it fixes the ring's exponent denominators). */
inline SparsePoly q_int(long long n, long long r = 1) {
  if (n < 0) throw error("q_int: negative index");
  if (r < 1) throw error("q_int: bad root");
  SparsePoly f;
  for (long long i = 0; i < n; ++i)
    f = f + SparsePoly::monomial(1, {{0, Frac(i, r)}});
  if (n > 0 && r > 1) {
    // pin the ring even when every exponent happens to be integral
    auto [p, k] = detail::den_prime_power(r);
    Ring ring;
    ring.prime = p;
    ring.depth = k;
    f = f + SparsePoly(ring);
  }
  return f;
}

inline SparsePoly q_factorial(int n) {
  if (n < 0) throw error("q_factorial: negative index");
  SparsePoly f = SparsePoly::constant(1);
  for (int i = 2; i <= n; ++i) f = f * q_int(i);
  return f;
}

/* Gaussian binomial via remainder-free division of q-factorials. */
inline SparsePoly q_binomial(int n, int k) {
  if (n < 0 || k < 0) throw error("q_binomial: negative argument");
  if (k > n) return {};
  auto quo = q_factorial(n).exact_divide(q_factorial(k) * q_factorial(n - k));
  if (!quo)
    throw non_exact_division("q_binomial: factorial quotient not exact");
  return *quo;
}

}  // namespace qlam
