#pragma once

#include <string>
#include <vector>

#include "qlam/poly.hpp"
#include "qlam/qanalogue.hpp"
#include "qlam/quotient.hpp"

namespace qlam {

/* p-typical Witt vector of finite length over a torsion-free coefficient
   ring.  All arithmetic goes through ghost components and back-solving; the
   divisions by p^i certify integrality of every result. */
struct WittVector {
  int p = 2;
  std::vector<SparsePoly> a;

  friend bool operator==(const WittVector&, const WittVector&) = default;
};

namespace detail {

inline void check_witt(const WittVector& w) {
  if (w.p < 2) throw error("witt: prime must be at least 2");
  if (w.a.empty()) throw error("witt: length must be positive");
}

inline void check_pair(const WittVector& u, const WittVector& v) {
  check_witt(u);
  check_witt(v);
  if (u.p != v.p) throw error("witt: mismatched primes");
  if (u.a.size() != v.a.size()) throw error("witt: mismatched lengths");
}

}  // namespace detail

// ghost components w_i = sum_{j<=i} p^j a_j^{p^{i-j}}
inline std::vector<SparsePoly> ghost(const WittVector& w) {
  detail::check_witt(w);
  std::vector<SparsePoly> g(w.a.size());
  for (size_t i = 0; i < w.a.size(); ++i) {
    SparsePoly s;
    for (size_t j = 0; j <= i; ++j)
      s = s + SparsePoly::constant(big_pow(w.p, static_cast<unsigned>(j))) *
                  w.a[j].pow(static_cast<unsigned>(ll_pow(w.p, static_cast<unsigned>(i - j))));
    g[i] = s;
  }
  return g;
}

/* Inverts the ghost map over a torsion-free base; every division by p^i must
   be remainder-free, otherwise the input was not in the image. */
inline WittVector from_ghost(int p, const std::vector<SparsePoly>& g) {
  if (p < 2 || g.empty()) throw error("witt: bad ghost data");
  WittVector w{p, {}};
  w.a.reserve(g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    SparsePoly rest;
    for (size_t j = 0; j < i; ++j)
      rest = rest + SparsePoly::constant(big_pow(p, static_cast<unsigned>(j))) *
                        w.a[j].pow(static_cast<unsigned>(ll_pow(p, static_cast<unsigned>(i - j))));
    w.a.push_back((g[i] - rest).divide_scalar_exact(big_pow(p, static_cast<unsigned>(i))));
  }
  return w;
}

inline WittVector witt_add(const WittVector& u, const WittVector& v) {
  detail::check_pair(u, v);
  auto gu = ghost(u), gv = ghost(v);
  for (size_t i = 0; i < gu.size(); ++i) gu[i] = gu[i] + gv[i];
  return from_ghost(u.p, gu);
}

inline WittVector witt_mul(const WittVector& u, const WittVector& v) {
  detail::check_pair(u, v);
  auto gu = ghost(u), gv = ghost(v);
  for (size_t i = 0; i < gu.size(); ++i) gu[i] = gu[i] * gv[i];
  return from_ghost(u.p, gu);
}

inline WittVector teichmuller(int p, int len, const SparsePoly& a) {
  if (len < 1) throw error("witt: length must be positive");
  WittVector w{p, std::vector<SparsePoly>(static_cast<size_t>(len))};
  w.a[0] = a;
  return w;
}

inline WittVector verschiebung(const WittVector& w) {
  detail::check_witt(w);
  WittVector v{w.p, {}};
  v.a.reserve(w.a.size() + 1);
  v.a.push_back(SparsePoly{});
  v.a.insert(v.a.end(), w.a.begin(), w.a.end());
  return v;
}

// determined by ghost(Fw)_i = ghost(w)_{i+1}; shortens length by one
inline WittVector frobenius(const WittVector& w) {
  detail::check_witt(w);
  if (w.a.size() < 2) throw error("witt: frobenius needs length at least 2");
  auto g = ghost(w);
  return from_ghost(w.p, {g.begin() + 1, g.end()});
}

/* Cauchy property of s_r = (q^{1/p^{n+r}} - 1)^{p^r}: each difference
   s_{r+1} - s_r is measured in the ideal (p, q^{1/p^M} - 1), where M comes
   from the deepest root modulus of the quotient spec. */
struct TeichmullerLimitReport {
  int p = 0;
  int n = 0;
  int r_max = 0;
  int M = 0;
  std::vector<int> valuations;
  bool strictly_increasing = false;

  std::string str() const {
    std::string s = "teichmuller limit p=" + std::to_string(p) +
                    " n=" + std::to_string(n) + " M=" + std::to_string(M) +
                    " valuations=";
    for (size_t i = 0; i < valuations.size(); ++i)
      s += (i ? "," : "") + std::to_string(valuations[i]);
    s += strictly_increasing ? " strictly-increasing" : " NOT-increasing";
    return s;
  }
};

inline TeichmullerLimitReport teichmuller_limit_check(int p, int n, int r_max,
                                                      const QuotientSpec& spec) {
  if (r_max < 1) throw error("teichmuller_limit_check: r_max must be positive");
  if (spec.p != p || spec.mods.empty())
    throw error("teichmuller_limit_check: spec must truncate p-adically and q-adically");
  long long scale = 0;
  long long trunc_deg = 0;
  for (const auto& pm : spec.mods)
    if (pm.scale > scale) {
      scale = pm.scale;
      Frac d = pm.m.degree_in(0) * Frac(pm.scale);
      if (!d.is_integer()) throw error("teichmuller_limit_check: bad modulus");
      trunc_deg = d.num;
    }
  int M = 0;
  for (long long s = scale; s > 1; s /= p) {
    if (s % p) throw error("teichmuller_limit_check: modulus scale is not a p-power");
    ++M;
  }
  if (M < n + r_max)
    throw error("teichmuller_limit_check: spec root depth M must be at least n + r_max");

  auto s_r = [&](int r) {
    SparsePoly root = SparsePoly::monomial(
        1, {{0, Frac(1, ll_pow(p, static_cast<unsigned>(n + r)))}});
    return (root - SparsePoly::constant(1)).pow(static_cast<unsigned>(ll_pow(p, static_cast<unsigned>(r))));
  };

  int cap = std::min<long long>(spec.a, trunc_deg);
  TeichmullerLimitReport rep{p, n, r_max, M, {}, true};
  SparsePoly prev = s_r(0);
  for (int r = 0; r < r_max; ++r) {
    SparsePoly next = s_r(r + 1);
    SparsePoly d = spec.reduce(next - prev);
    prev = next;

    // dense coefficients in t = q^{1/p^M}
    std::vector<BigInt> c;
    for (const auto& term : d.terms()) {
      Frac e = term.first.get(0) * Frac(scale);
      if (!e.is_integer() || e.num < 0)
        throw error("teichmuller_limit_check: non-integral t-exponent");
      if (static_cast<size_t>(e.num) >= c.size()) c.resize(e.num + 1);
      c[e.num] = term.second;
    }
    // rewrite in the basis (t-1)^j: b_j = sum_i C(i,j) c_i
    size_t D = c.size();
    int val = cap;
    std::vector<BigInt> binom(D, 0);
    for (size_t j = 0; j < D; ++j) {
      // binom[i] = C(i,j) built incrementally per column
      BigInt b_j = 0;
      for (size_t i = 0; i < D; ++i) {
        if (i == j)
          binom[i] = 1;
        else if (i > j)
          binom[i] = binom[i - 1] * i / (i - j);
        else
          binom[i] = 0;
        if (!c[i].is_zero() && i >= j) b_j += binom[i] * c[i];
      }
      if (!b_j.is_zero())
        val = std::min(val, static_cast<int>(j) + padic_val(b_j, p));
    }
    if (val >= cap)
      throw error("teichmuller_limit_check: truncation too shallow to certify valuation");
    if (!rep.valuations.empty() && val <= rep.valuations.back())
      rep.strictly_increasing = false;
    rep.valuations.push_back(val);
  }
  return rep;
}

}  // namespace qlam
