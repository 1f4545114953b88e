#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "qlam/poly.hpp"
#include "qlam/qanalogue.hpp"

namespace qlam {

/* Basis form x^alpha dx^I in dlog-free normal form: alpha holds the monomial
   exponents on vars 1..d, mask holds I as a bitmask (bit i-1 for dx_i). */
struct Form {
  ExponentVec alpha;
  unsigned mask = 0;

  friend bool operator==(const Form&, const Form&) = default;
};

inline int form_degree(const Form& f) { return __builtin_popcount(f.mask); }

inline ExponentVec form_weight(const Form& f, int d) {
  ExponentVec w = f.alpha;
  for (int i = 1; i <= d; ++i)
    if (f.mask >> (i - 1) & 1) w.set(i, w.get(i) + Frac(1));
  return w;
}

using SparseCol = std::vector<std::pair<int, SparsePoly>>;
using SparseMat = std::vector<SparseCol>;  // indexed by source column

enum class ComplexKind { q_omega, twisted };

/* Bounded q-de Rham complex: bases per degree 0..d, differential stored as
   sparse columns.  The twisted kind carries (q-1) * nabla_q. */
struct CochainComplex {
  int d = 1;
  ComplexKind kind = ComplexKind::q_omega;
  std::vector<std::vector<Form>> basis;
  std::vector<SparseMat> diff;  // diff[j] : C^j -> C^{j+1}

  int dim(int degree) const {
    if (degree < 0 || degree > d) return 0;
    return static_cast<int>(basis[degree].size());
  }
};

namespace detail {

struct FormLess {
  int d;
  bool operator()(const Form& a, const Form& b) const {
    int c = cmp_gradedlex(form_weight(a, d), form_weight(b, d));
    if (c) return c < 0;
    return a.mask < b.mask;
  }
};

inline std::pair<unsigned, std::vector<std::pair<int, Frac>>> form_key(const Form& f) {
  return {f.mask, f.alpha.e};
}

}  // namespace detail

/* One-form nabla_q(f) as dx_1..dx_d coefficients; on a monomial the i-th
   coefficient is [alpha_i]_q x^{alpha - e_i}, exact by construction. */
inline std::vector<SparsePoly> nabla_q(const SparsePoly& f, int d) {
  std::vector<SparsePoly> out(static_cast<size_t>(d));
  for (const auto& term : f.terms()) {
    for (int i = 1; i <= d; ++i) {
      Frac a = term.first.get(i);
      if (a.num == 0) continue;
      if (!a.is_integer() || a.num < 0) throw error("nabla_q: exponent not a nonnegative integer");
      ExponentVec ev = term.first;
      ev.set(i, a - Frac(1));
      out[i - 1] = out[i - 1] + SparsePoly::monomial(term.second, ev.e) * q_int(a.num);
    }
  }
  return out;
}

/* Differential of a single basis form under the one-variable rule tensored
   with the usual Koszul sign: d(x^a dx^I) =
   sum_{i not in I} (-1)^{#{j in I : j < i}} [a_i]_q x^{a - e_i} dx^{I+i}. */
inline std::vector<std::pair<Form, SparsePoly>> qdiff_form(const Form& f, int d,
                                                           ComplexKind kind) {
  std::vector<std::pair<Form, SparsePoly>> out;
  SparsePoly qm1 = SparsePoly::variable(0) - SparsePoly::constant(1);
  for (int i = 1; i <= d; ++i) {
    if (f.mask >> (i - 1) & 1) continue;
    Frac a = f.alpha.get(i);
    if (a.num == 0) continue;
    if (!a.is_integer() || a.num < 0) throw error("qdiff: exponent not a nonnegative integer");
    int sign_count = 0;
    for (int j = 1; j < i; ++j)
      if (f.mask >> (j - 1) & 1) ++sign_count;
    Form g;
    g.alpha = f.alpha;
    g.alpha.set(i, a - Frac(1));
    g.mask = f.mask | (1u << (i - 1));
    SparsePoly c = q_int(a.num);
    if (kind == ComplexKind::twisted) c = c * qm1;
    if (sign_count % 2) c = -c;
    out.push_back({g, c});
  }
  return out;
}

namespace detail {

inline CochainComplex assemble_complex(int d, ComplexKind kind,
                                       std::vector<std::vector<Form>> bases) {
  CochainComplex C;
  C.d = d;
  C.kind = kind;
  for (auto& b : bases) std::sort(b.begin(), b.end(), FormLess{d});
  C.basis = std::move(bases);

  std::vector<std::map<std::pair<unsigned, std::vector<std::pair<int, Frac>>>, int>> index(
      static_cast<size_t>(d) + 1);
  for (int j = 0; j <= d; ++j)
    for (size_t i = 0; i < C.basis[j].size(); ++i) index[j][form_key(C.basis[j][i])] = static_cast<int>(i);

  C.diff.resize(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    C.diff[j].resize(C.basis[j].size());
    for (size_t col = 0; col < C.basis[j].size(); ++col)
      for (auto& [g, c] : qdiff_form(C.basis[j][col], d, kind)) {
        auto it = index[j + 1].find(form_key(g));
        if (it == index[j + 1].end()) throw error("complex basis not closed under the differential");
        C.diff[j][col].push_back({it->second, std::move(c)});
      }
  }

  // D^2 = 0, verified exactly at build time
  for (int j = 0; j + 1 < d; ++j) {
    std::vector<std::map<int, SparsePoly>> comp(C.basis[j].size());
    for (size_t col = 0; col < C.diff[j].size(); ++col)
      for (const auto& [mid, c1] : C.diff[j][col])
        for (const auto& [row, c2] : C.diff[j + 1][mid]) {
          auto& acc = comp[col][row];
          acc = acc + c2 * c1;
        }
    for (const auto& m : comp)
      for (const auto& [row, v] : m)
        if (!v.is_zero()) throw error("complex differential does not square to zero");
  }
  return C;
}

}  // namespace detail

/* Weight-w piece: forms x^{w - 1_I} dx^I over I subseteq supp(w).  Direct
   sums of these over w <= bound reassemble the bounded complex exactly. */
inline CochainComplex build_weight_piece(int d, const std::vector<Frac>& w, ComplexKind kind) {
  if (static_cast<int>(w.size()) != d) throw error("weight length must match variable count");
  std::vector<int> supp;
  for (int i = 1; i <= d; ++i) {
    if (w[i - 1] < Frac(0)) throw error("weights must be nonnegative");
    if (w[i - 1].num != 0) supp.push_back(i);
  }
  std::vector<std::vector<Form>> bases(static_cast<size_t>(d) + 1);
  for (unsigned sub = 0; sub < (1u << supp.size()); ++sub) {
    Form f;
    for (int i = 1; i <= d; ++i) f.alpha.set(i, w[i - 1]);
    for (size_t b = 0; b < supp.size(); ++b)
      if (sub >> b & 1) {
        f.mask |= 1u << (supp[b] - 1);
        f.alpha.set(supp[b], w[supp[b] - 1] - Frac(1));
      }
    bases[form_degree(f)].push_back(f);
  }
  return detail::assemble_complex(d, kind, std::move(bases));
}

// all integer weights with every coordinate <= bound
inline CochainComplex build_complex(int d, int weight_bound, ComplexKind kind) {
  if (d < 1 || d > kMaxVar) throw error("variable count out of range");
  if (weight_bound < 0) throw error("weight bound must be nonnegative");
  std::vector<std::vector<Form>> bases(static_cast<size_t>(d) + 1);
  std::vector<int> w(static_cast<size_t>(d), 0);
  while (true) {
    std::vector<int> supp;
    for (int i = 1; i <= d; ++i)
      if (w[i - 1]) supp.push_back(i);
    for (unsigned sub = 0; sub < (1u << supp.size()); ++sub) {
      Form f;
      for (int i = 1; i <= d; ++i) f.alpha.set(i, Frac(w[i - 1]));
      for (size_t b = 0; b < supp.size(); ++b)
        if (sub >> b & 1) {
          f.mask |= 1u << (supp[b] - 1);
          f.alpha.set(supp[b], Frac(w[supp[b] - 1] - 1));
        }
      bases[form_degree(f)].push_back(f);
    }
    int i = 0;
    while (i < d && w[i] == weight_bound) w[i++] = 0;
    if (i == d) break;
    ++w[i];
  }
  return detail::assemble_complex(d, kind, std::move(bases));
}

// distinct weights present in a complex, in deterministic order
inline std::vector<std::vector<Frac>> complex_weights(const CochainComplex& C) {
  std::vector<ExponentVec> seen;
  for (int j = 0; j <= C.d; ++j)
    for (const auto& f : C.basis[j]) seen.push_back(form_weight(f, C.d));
  std::sort(seen.begin(), seen.end(),
            [](const ExponentVec& a, const ExponentVec& b) { return cmp_gradedlex(a, b) < 0; });
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  std::vector<std::vector<Frac>> out;
  for (const auto& ev : seen) {
    std::vector<Frac> w(static_cast<size_t>(C.d), Frac(0));
    for (int i = 1; i <= C.d; ++i) w[i - 1] = ev.get(i);
    out.push_back(std::move(w));
  }
  return out;
}

/* eta_f: divides every differential entry by f, with an exact-division
   certificate per entry; inverse to multiplying the differentials by f. */
inline CochainComplex decalage(const CochainComplex& C, const SparsePoly& f) {
  CochainComplex out = C;
  for (size_t j = 0; j < C.diff.size(); ++j)
    for (size_t col = 0; col < C.diff[j].size(); ++col)
      for (size_t k = 0; k < C.diff[j][col].size(); ++k) {
        auto q = C.diff[j][col][k].second.exact_divide(f);
        if (!q)
          throw non_exact_division("decalage: entry in degree " + std::to_string(j) +
                                   " not divisible by the filtration element");
        out.diff[j][col][k].second = *q;
      }
  return out;
}

inline bool same_differentials(const CochainComplex& A, const CochainComplex& B) {
  if (A.d != B.d || A.basis != B.basis) return false;
  if (A.diff.size() != B.diff.size()) return false;
  for (size_t j = 0; j < A.diff.size(); ++j) {
    if (A.diff[j].size() != B.diff[j].size()) return false;
    for (size_t col = 0; col < A.diff[j].size(); ++col) {
      auto a = A.diff[j][col], b = B.diff[j][col];
      auto cmp = [](const std::pair<int, SparsePoly>& x, const std::pair<int, SparsePoly>& y) {
        return x.first < y.first;
      };
      std::sort(a.begin(), a.end(), cmp);
      std::sort(b.begin(), b.end(), cmp);
      if (a.size() != b.size()) return false;
      for (size_t k = 0; k < a.size(); ++k)
        if (a[k].first != b[k].first || a[k].second != b[k].second) return false;
    }
  }
  return true;
}

inline CochainComplex scale_differentials(const CochainComplex& C, const SparsePoly& f) {
  CochainComplex out = C;
  for (auto& mat : out.diff)
    for (auto& col : mat)
      for (auto& e : col) e.second = e.second * f;
  return out;
}

/* Tensor of complexes in disjoint variables (B's variables shifted past A's):
   basis pairs with the sign d(a ox b) = da ox b + (-1)^{|a|} a ox db. */
inline CochainComplex tensor_complex(const CochainComplex& A, const CochainComplex& B) {
  int d = A.d + B.d;
  if (d > kMaxVar) throw error("tensor: too many variables");
  std::vector<std::vector<Form>> bases(static_cast<size_t>(d) + 1);
  for (int ja = 0; ja <= A.d; ++ja)
    for (const auto& fa : A.basis[ja])
      for (int jb = 0; jb <= B.d; ++jb)
        for (const auto& fb : B.basis[jb]) {
          Form f;
          f.alpha = fa.alpha;
          for (int i = 1; i <= B.d; ++i) f.alpha.set(A.d + i, fb.alpha.get(i));
          f.mask = fa.mask | (fb.mask << A.d);
          bases[ja + jb].push_back(f);
        }
  return detail::assemble_complex(d, A.kind, std::move(bases));
}

// q-Taylor identity y^n = sum_k binom(n,k)_q x^{n-k} prod_{j<k}(y - q^j x);
// returns the difference, zero iff the identity holds
inline SparsePoly q_taylor_defect(int n) {
  if (n < 0) throw error("q_taylor: negative degree");
  SparsePoly x = SparsePoly::variable(1), y = SparsePoly::variable(2);
  SparsePoly qv = SparsePoly::variable(0);
  SparsePoly sum;
  for (int k = 0; k <= n; ++k) {
    SparsePoly prod = SparsePoly::constant(1);
    SparsePoly qj = SparsePoly::constant(1);
    for (int j = 0; j < k; ++j) {
      prod = prod * (y - qj * x);
      qj = qj * qv;
    }
    sum = sum + q_binomial(n, k) * x.pow(static_cast<unsigned>(n - k)) * prod;
  }
  return y.pow(static_cast<unsigned>(n)) - sum;
}

}  // namespace qlam
