#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qlam/literal.hpp"
#include "qlam/poly.hpp"

namespace qlam {

using Rational = boost::multiprecision::cpp_rational;

template <class E>
struct DenseMat {
  int rows = 0, cols = 0;
  std::vector<E> a;

  DenseMat() = default;
  DenseMat(int r, int c, const E& fill) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

  E& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const E& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

/* Euclidean coefficient rings share one interface: exact divmod with strictly
   norm-decreasing remainder, unit handling, and a canonical associate so
   elementary divisors come out deterministic. */

struct RingZ {
  using Elem = BigInt;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const { return v; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool is_eq(const Elem& a, const Elem& b) const { return a == b; }
  BigInt norm(const Elem& a) const { return a < 0 ? -a : a; }
  bool is_unit(const Elem& a) const { return a == 1 || a == -1; }

  // nearest-integer quotient keeps |r| <= |b|/2
  std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) const {
    BigInt q = a / b, r = a - q * b;
    if (2 * norm(r) > norm(b)) {
      q += (r < 0) == (b < 0) ? 1 : -1;
      r = a - q * b;
    }
    return {q, r};
  }
  std::pair<Elem, Elem> canonicalize(const Elem& a) const {
    if (a < 0) return {-a, -1};
    return {a, 1};
  }
  Elem unit_inv(const Elem& u) const { return u; }
  std::string str(const Elem& a) const { return a.str(); }
};

namespace detail {

template <class C>
void trim_poly(std::vector<C>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

}  // namespace detail

// Q[q], dense coefficient vectors, ascending powers
struct RingQPoly {
  using Elem = std::vector<Rational>;

  Elem zero() const { return {}; }
  Elem one() const { return {Rational(1)}; }
  Elem from_int(long long v) const {
    Elem e{Rational(v)};
    detail::trim_poly(e);
    return e;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    detail::trim_poly(r);
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r = a;
    for (auto& c : r) c = -c;
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem mul(const Elem& a, const Elem& b) const {
    if (a.empty() || b.empty()) return {};
    Elem r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    detail::trim_poly(r);
    return r;
  }
  bool is_zero(const Elem& a) const { return a.empty(); }
  bool is_eq(const Elem& a, const Elem& b) const { return a == b; }
  BigInt norm(const Elem& a) const { return static_cast<long long>(a.size()); }
  bool is_unit(const Elem& a) const { return a.size() == 1; }

  std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) const {
    Elem r = a, q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
    while (r.size() >= b.size() && !r.empty()) {
      Rational c = r.back() / b.back();
      size_t shift = r.size() - b.size();
      q[shift] = c;
      for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
      detail::trim_poly(r);
    }
    detail::trim_poly(q);
    return {q, r};
  }
  std::pair<Elem, Elem> canonicalize(const Elem& a) const {
    if (a.empty()) return {a, one()};
    Rational lead = a.back();
    Elem c = a;
    for (auto& x : c) x /= lead;
    return {c, Elem{lead}};
  }
  Elem unit_inv(const Elem& u) const { return {1 / u[0]}; }

  std::string str(const Elem& a) const;
};

// F_p[q], dense coefficient vectors with entries in [0, p)
struct RingFpPoly {
  long long p;

  explicit RingFpPoly(long long prime) : p(prime) {}

  using Elem = std::vector<long long>;

  long long mod(long long v) const {
    v %= p;
    return v < 0 ? v + p : v;
  }
  long long inv_mod(long long v) const {
    long long t = 0, nt = 1, r = p, nr = mod(v);
    while (nr) {
      long long quo = r / nr;
      long long tmp = t - quo * nt;
      t = nt;
      nt = tmp;
      tmp = r - quo * nr;
      r = nr;
      nr = tmp;
    }
    if (r != 1) throw not_a_unit("not invertible modulo p");
    return mod(t);
  }

  Elem zero() const { return {}; }
  Elem one() const { return {1}; }
  Elem from_int(long long v) const {
    Elem e{mod(v)};
    detail::trim_poly(e);
    return e;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = mod(r[i] + a[i]);
    for (size_t i = 0; i < b.size(); ++i) r[i] = mod(r[i] + b[i]);
    detail::trim_poly(r);
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r = a;
    for (auto& c : r) c = mod(-c);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem mul(const Elem& a, const Elem& b) const {
    if (a.empty() || b.empty()) return {};
    Elem r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + a[i] * b[j]);
    detail::trim_poly(r);
    return r;
  }
  bool is_zero(const Elem& a) const { return a.empty(); }
  bool is_eq(const Elem& a, const Elem& b) const { return a == b; }
  BigInt norm(const Elem& a) const { return static_cast<long long>(a.size()); }
  bool is_unit(const Elem& a) const { return a.size() == 1; }

  std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) const {
    Elem r = a, q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
    long long binv = inv_mod(b.back());
    while (r.size() >= b.size() && !r.empty()) {
      long long c = mod(r.back() * binv);
      size_t shift = r.size() - b.size();
      q[shift] = c;
      for (size_t i = 0; i < b.size(); ++i) r[shift + i] = mod(r[shift + i] - c * b[i]);
      detail::trim_poly(r);
    }
    detail::trim_poly(q);
    return {q, r};
  }
  std::pair<Elem, Elem> canonicalize(const Elem& a) const {
    if (a.empty()) return {a, one()};
    long long lead = a.back(), linv = inv_mod(lead);
    Elem c = a;
    for (auto& x : c) x = mod(x * linv);
    return {c, Elem{lead}};
  }
  Elem unit_inv(const Elem& u) const { return {inv_mod(u[0])}; }

  std::string str(const Elem& a) const;
};

/* Z[w] with w^2 + w + 1 = 0 (w a primitive cube root of unity), stored as
   x + y*w; norm-Euclidean via nearest-lattice-point rounding. */
struct RingEisenstein {
  using Elem = std::pair<BigInt, BigInt>;

  Elem zero() const { return {0, 0}; }
  Elem one() const { return {1, 0}; }
  Elem from_int(long long v) const { return {v, 0}; }
  Elem add(const Elem& a, const Elem& b) const { return {a.first + b.first, a.second + b.second}; }
  Elem sub(const Elem& a, const Elem& b) const { return {a.first - b.first, a.second - b.second}; }
  Elem neg(const Elem& a) const { return {-a.first, -a.second}; }
  Elem mul(const Elem& a, const Elem& b) const {
    return {a.first * b.first - a.second * b.second,
            a.first * b.second + a.second * b.first - a.second * b.second};
  }
  bool is_zero(const Elem& a) const { return a.first.is_zero() && a.second.is_zero(); }
  bool is_eq(const Elem& a, const Elem& b) const { return a == b; }
  BigInt norm(const Elem& a) const {
    return a.first * a.first - a.first * a.second + a.second * a.second;
  }
  bool is_unit(const Elem& a) const { return norm(a) == 1; }

  static BigInt round_nearest(const BigInt& num, const BigInt& den) {
    // den > 0
    BigInt shifted = 2 * num;
    if (shifted >= 0)
      shifted += den;
    else
      shifted -= den;
    return shifted / (2 * den);
  }
  std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) const {
    Elem conj_b{b.first - b.second, -b.second};
    Elem z = mul(a, conj_b);
    BigInt nb = norm(b);
    Elem q{round_nearest(z.first, nb), round_nearest(z.second, nb)};
    Elem r = sub(a, mul(q, b));
    return {q, r};
  }
  std::vector<Elem> units() const {
    return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {-1, -1}, {1, 1}};
  }
  std::pair<Elem, Elem> canonicalize(const Elem& a) const {
    if (is_zero(a)) return {a, one()};
    Elem best = a, bu{1, 0};
    for (const auto& u : units()) {
      Elem c = mul(a, u);
      if (c.first > best.first || (c.first == best.first && c.second > best.second)) {
        best = c;
        bu = u;
      }
    }
    return {best, unit_inv(bu)};
  }
  Elem unit_inv(const Elem& u) const {
    for (const auto& v : units())
      if (is_eq(mul(u, v), one())) return v;
    throw not_a_unit("not a unit in Z[w]");
  }
  std::string str(const Elem& a) const {
    return "(" + a.first.str() + (a.second >= 0 ? "+" : "") + a.second.str() + "*w)";
  }
};

template <class Ring>
typename Ring::Elem ring_gcd(const Ring& R, typename Ring::Elem a, typename Ring::Elem b) {
  while (!R.is_zero(b)) {
    auto r = R.divmod(a, b).second;
    a = b;
    b = r;
  }
  return R.canonicalize(a).first;
}

template <class Ring>
DenseMat<typename Ring::Elem> mat_identity(const Ring& R, int n) {
  DenseMat<typename Ring::Elem> I(n, n, R.zero());
  for (int i = 0; i < n; ++i) I.at(i, i) = R.one();
  return I;
}

template <class Ring>
DenseMat<typename Ring::Elem> mat_mul(const Ring& R, const DenseMat<typename Ring::Elem>& A,
                                      const DenseMat<typename Ring::Elem>& B) {
  DenseMat<typename Ring::Elem> C(A.rows, B.cols, R.zero());
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      if (R.is_zero(A.at(i, k))) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = R.add(C.at(i, j), R.mul(A.at(i, k), B.at(k, j)));
    }
  return C;
}

/* Smith normal form U A V = D over a Euclidean ring, with both transforms and
   their inverses accumulated.  Diagonal entries are canonical associates and
   satisfy the divisibility chain. */
template <class Ring>
struct SmithResult {
  using E = typename Ring::Elem;
  DenseMat<E> D, U, Uinv, V, Vinv;
  std::vector<E> divisors;  // nonzero diagonal entries, canonical
  int rank = 0;
};

template <class Ring>
SmithResult<Ring> smith(const Ring& R, DenseMat<typename Ring::Elem> A) {
  using E = typename Ring::Elem;
  const int m = A.rows, n = A.cols;
  SmithResult<Ring> res;
  res.U = mat_identity(R, m);
  res.Uinv = mat_identity(R, m);
  res.V = mat_identity(R, n);
  res.Vinv = mat_identity(R, n);

  auto row_swap = [&](int i, int k) {
    for (int j = 0; j < n; ++j) std::swap(A.at(i, j), A.at(k, j));
    for (int j = 0; j < m; ++j) std::swap(res.U.at(i, j), res.U.at(k, j));
    for (int j = 0; j < m; ++j) std::swap(res.Uinv.at(j, i), res.Uinv.at(j, k));
  };
  auto col_swap = [&](int i, int k) {
    for (int j = 0; j < m; ++j) std::swap(A.at(j, i), A.at(j, k));
    for (int j = 0; j < n; ++j) std::swap(res.V.at(j, i), res.V.at(j, k));
    for (int j = 0; j < n; ++j) std::swap(res.Vinv.at(i, j), res.Vinv.at(k, j));
  };
  // row_i += c * row_k
  auto row_addmul = [&](int i, int k, const E& c) {
    for (int j = 0; j < n; ++j) A.at(i, j) = R.add(A.at(i, j), R.mul(c, A.at(k, j)));
    for (int j = 0; j < m; ++j) res.U.at(i, j) = R.add(res.U.at(i, j), R.mul(c, res.U.at(k, j)));
    for (int j = 0; j < m; ++j)
      res.Uinv.at(j, k) = R.sub(res.Uinv.at(j, k), R.mul(c, res.Uinv.at(j, i)));
  };
  // col_i += c * col_k
  auto col_addmul = [&](int i, int k, const E& c) {
    for (int j = 0; j < m; ++j) A.at(j, i) = R.add(A.at(j, i), R.mul(c, A.at(j, k)));
    for (int j = 0; j < n; ++j) res.V.at(j, i) = R.add(res.V.at(j, i), R.mul(c, res.V.at(j, k)));
    for (int j = 0; j < n; ++j)
      res.Vinv.at(k, j) = R.sub(res.Vinv.at(k, j), R.mul(c, res.Vinv.at(i, j)));
  };
  auto row_scale_unit = [&](int i, const E& u) {
    for (int j = 0; j < n; ++j) A.at(i, j) = R.mul(u, A.at(i, j));
    for (int j = 0; j < m; ++j) res.U.at(i, j) = R.mul(u, res.U.at(i, j));
    E ui = R.unit_inv(u);
    for (int j = 0; j < m; ++j) res.Uinv.at(j, i) = R.mul(res.Uinv.at(j, i), ui);
  };

  int t = 0;
  for (; t < std::min(m, n); ++t) {
    bool finished = false;
    while (true) {
      int pi = -1, pj = -1;
      BigInt best = 0;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j)
          if (!R.is_zero(A.at(i, j))) {
            BigInt nm = R.norm(A.at(i, j));
            if (pi < 0 || nm < best) {
              best = nm;
              pi = i;
              pj = j;
            }
          }
      if (pi < 0) {
        finished = true;  // trailing block is zero
        break;
      }
      if (pi != t) row_swap(t, pi);
      if (pj != t) col_swap(t, pj);

      bool clean = true;
      for (int i = t + 1; i < m; ++i)
        if (!R.is_zero(A.at(i, t))) {
          row_addmul(i, t, R.neg(R.divmod(A.at(i, t), A.at(t, t)).first));
          if (!R.is_zero(A.at(i, t))) clean = false;
        }
      for (int j = t + 1; j < n; ++j)
        if (!R.is_zero(A.at(t, j))) {
          col_addmul(j, t, R.neg(R.divmod(A.at(t, j), A.at(t, t)).first));
          if (!R.is_zero(A.at(t, j))) clean = false;
        }
      if (!clean) continue;

      bool div_ok = true;
      for (int i = t + 1; i < m && div_ok; ++i)
        for (int j = t + 1; j < n && div_ok; ++j)
          if (!R.is_zero(R.divmod(A.at(i, j), A.at(t, t)).second)) {
            row_addmul(t, i, R.one());
            div_ok = false;
          }
      if (div_ok) break;
    }
    if (finished) break;
    auto [canon, u] = R.canonicalize(A.at(t, t));
    if (!R.is_eq(u, R.one())) row_scale_unit(t, R.unit_inv(u));
  }

  res.rank = t;
  res.D = std::move(A);
  for (int i = 0; i < res.rank; ++i) res.divisors.push_back(res.D.at(i, i));
  return res;
}

// columns of V beyond the rank span ker(A) exactly (torsion-free base)
template <class Ring>
DenseMat<typename Ring::Elem> kernel_basis(const Ring& R, const DenseMat<typename Ring::Elem>& A) {
  auto s = smith(R, A);
  int k = A.cols - s.rank;
  DenseMat<typename Ring::Elem> K(A.cols, k, R.zero());
  for (int i = 0; i < A.cols; ++i)
    for (int j = 0; j < k; ++j) K.at(i, j) = s.V.at(i, s.rank + j);
  return K;
}

/* H^j of ... -> C^{j-1} --d_in--> C^j --d_out--> C^{j+1} -> ... as
   R^free + sum R/(e_i); torsion keeps only non-unit divisors. */
template <class Ring>
struct HomologySummand {
  std::vector<typename Ring::Elem> torsion;
  int free_rank = 0;
};

template <class Ring>
HomologySummand<Ring> homology_at(const Ring& R, const DenseMat<typename Ring::Elem>& d_out,
                                  const DenseMat<typename Ring::Elem>& d_in) {
  using E = typename Ring::Elem;
  const int n = d_out.cols;
  if (d_in.cols > 0 && d_in.rows != n) throw error("homology_at: dimension mismatch");
  if (d_in.cols > 0 && d_out.rows > 0) {
    DenseMat<E> comp = mat_mul(R, d_out, d_in);
    for (const auto& e : comp.a)
      if (!R.is_zero(e)) throw error("homology_at: maps do not compose to zero");
  }

  auto s_out = smith(R, d_out);
  int k = n - s_out.rank;
  HomologySummand<Ring> H;
  if (k == 0) return H;
  if (d_in.cols == 0) {
    H.free_rank = k;
    return H;
  }
  // image coordinates relative to the kernel columns of V
  DenseMat<E> X(k, d_in.cols, R.zero());
  DenseMat<E> full = mat_mul(R, s_out.Vinv, d_in);
  for (int i = 0; i < s_out.rank; ++i)
    for (int j = 0; j < d_in.cols; ++j)
      if (!R.is_zero(full.at(i, j)))
        throw error("homology_at: image does not lie in the kernel (not a complex)");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < d_in.cols; ++j) X.at(i, j) = full.at(s_out.rank + i, j);

  auto s_x = smith(R, X);
  H.free_rank = k - s_x.rank;
  for (const auto& e : s_x.divisors)
    if (!R.is_unit(e)) H.torsion.push_back(e);
  return H;
}

/* SparsePoly adaptors: complexes carry entries in Z[q] with integer
   q-exponents; each coefficient choice reduces them into its element type. */

inline std::vector<std::pair<long long, BigInt>> q_coeff_list(const SparsePoly& f) {
  std::vector<std::pair<long long, BigInt>> out;
  for (const auto& term : f.terms()) {
    for (const auto& pe : term.first.e)
      if (pe.first != 0) throw error("coefficient entry is not univariate in q");
    Frac e = term.first.get(0);
    if (!e.is_integer() || e.num < 0) throw error("coefficient entry has fractional q-exponent");
    out.push_back({e.num, term.second});
  }
  return out;
}

inline RingQPoly::Elem to_qq(const SparsePoly& f) {
  RingQPoly::Elem v;
  for (const auto& [e, c] : q_coeff_list(f)) {
    if (static_cast<size_t>(e) >= v.size()) v.resize(e + 1, Rational(0));
    v[e] += Rational(c);
  }
  detail::trim_poly(v);
  return v;
}

inline RingFpPoly::Elem to_fp(const SparsePoly& f, const RingFpPoly& R) {
  RingFpPoly::Elem v;
  for (const auto& [e, c] : q_coeff_list(f)) {
    if (static_cast<size_t>(e) >= v.size()) v.resize(e + 1, 0);
    v[e] = R.mod(v[e] + static_cast<long long>(c % R.p));
  }
  detail::trim_poly(v);
  return v;
}

inline BigInt to_z_q1(const SparsePoly& f) {
  BigInt s = 0;
  for (const auto& [e, c] : q_coeff_list(f)) s += c;
  return s;
}

// q -> -1 identifies Z[q]/[2]_q with Z
inline BigInt to_z_zeta2(const SparsePoly& f) {
  BigInt s = 0;
  for (const auto& [e, c] : q_coeff_list(f)) s += (e % 2 ? -c : c);
  return s;
}

// q -> w identifies Z[q]/[3]_q with Z[w]
inline RingEisenstein::Elem to_zeta3(const SparsePoly& f) {
  RingEisenstein::Elem z{0, 0};
  for (const auto& [e, c] : q_coeff_list(f)) {
    switch (e % 3) {
      case 0: z.first += c; break;
      case 1: z.second += c; break;
      case 2:  // w^2 = -1 - w
        z.first -= c;
        z.second -= c;
        break;
    }
  }
  return z;
}

inline std::string RingQPoly::str(const Elem& a) const {
  if (a.empty()) return "0";
  BigInt lcm_den = 1;
  for (const auto& c : a)
    lcm_den = lcm_den / boost::multiprecision::gcd(lcm_den, denominator(c)) * denominator(c);
  std::vector<BigInt> num(a.size());
  BigInt g = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    num[i] = numerator(a[i]) * (lcm_den / denominator(a[i]));
    g = boost::multiprecision::gcd(g, num[i]);
  }
  if (num.back() < 0) g = -g;
  SparsePoly p;
  for (size_t i = 0; i < a.size(); ++i)
    if (!num[i].is_zero())
      p = p + SparsePoly::monomial(num[i] / g, {{0, Frac(static_cast<long long>(i))}});
  return p.str();
}

inline std::string RingFpPoly::str(const Elem& a) const {
  if (a.empty()) return "0";
  SparsePoly f;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i])
      f = f + SparsePoly::monomial(a[i], {{0, Frac(static_cast<long long>(i))}});
  return f.str();
}

}  // namespace qlam
