#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qlam/cohomology.hpp"
#include "qlam/complex.hpp"

namespace qlam {

/* Lifted Cartier/Frobenius structure on the local model Z[q][x_1..x_d] with
   Psi^p(x_i) = x_i^p: the chain map a dx^I -> Psi^p(a) x^{(p-1) 1_I} dx^I on
   the twisted complex, semilinear over q -> q^p, and its induced bijection on
   per-weight cohomology classes mod [p]_q. */

// basis-form image: x^a dx^I -> x^{pa + (p-1) 1_I} dx^I; weights scale by p
inline Form frobenius_form(int p, const Form& f, int d) {
  Form g;
  g.mask = f.mask;
  for (int i = 1; i <= d; ++i) {
    Frac a = f.alpha.get(i) * Frac(p);
    if (f.mask >> (i - 1) & 1) a = a + Frac(p - 1);
    g.alpha.set(i, a);
  }
  return g;
}

namespace detail {

inline std::map<std::pair<unsigned, std::vector<std::pair<int, Frac>>>, int>
form_index(const std::vector<Form>& basis) {
  std::map<std::pair<unsigned, std::vector<std::pair<int, Frac>>>, int> idx;
  for (size_t i = 0; i < basis.size(); ++i) idx[form_key(basis[i])] = (int)i;
  return idx;
}

inline int max_weight_coordinate(const CochainComplex& C) {
  long long best = 0;
  for (const auto& w : complex_weights(C))
    for (const auto& wi : w) {
      if (!wi.is_integer() || wi.num < 0)
        throw error("frobenius_chain_map: weights must be nonnegative integers");
      best = std::max(best, wi.num);
    }
  return (int)best;
}

}  // namespace detail

struct FrobeniusChainMap {
  int p = 2;
  CochainComplex source;  // twisted, weight box [0, B]
  CochainComplex target;  // twisted, weight box [0, pB]
  std::vector<std::vector<int>> image_index;  // per degree: source idx -> target idx

  // semilinear application: coefficients pick up Psi^p, basis forms map along
  // image_index
  std::vector<SparsePoly> apply(int degree,
                                const std::vector<SparsePoly>& coeffs) const {
    if (degree < 0 || degree > source.d) throw error("apply: bad degree");
    if ((int)coeffs.size() != source.dim(degree))
      throw error("apply: coefficient vector has wrong length");
    std::vector<SparsePoly> out((size_t)target.dim(degree));
    for (int c = 0; c < source.dim(degree); ++c)
      if (!coeffs[c].is_zero())
        out[image_index[degree][c]] =
            out[image_index[degree][c]] + coeffs[c].adams(p);
    return out;
  }
};

/* Builds the map and proves the chain law D' o phi = phi o D exactly on
   every basis column (phi applied semilinearly on the left); any mismatch
   aborts, since it would mean the convention is wrong, not the input. */
inline FrobeniusChainMap frobenius_chain_map(int p, const CochainComplex& C) {
  if (p < 2) throw error("frobenius_chain_map: p must be at least 2");
  if (C.kind != ComplexKind::twisted)
    throw error("frobenius_chain_map: expected the twisted complex");
  FrobeniusChainMap F;
  F.p = p;
  F.source = C;
  int B = detail::max_weight_coordinate(C);
  F.target = build_complex(C.d, p * B, ComplexKind::twisted);

  for (int j = 0; j <= C.d; ++j) {
    auto idx = detail::form_index(F.target.basis[j]);
    std::vector<int> row;
    for (const auto& f : C.basis[j]) {
      auto it = idx.find(detail::form_key(frobenius_form(p, f, C.d)));
      if (it == idx.end()) throw error("frobenius_chain_map: image form missing");
      row.push_back(it->second);
    }
    F.image_index.push_back(std::move(row));
  }

  for (int j = 0; j < C.d; ++j) {
    for (int c = 0; c < C.dim(j); ++c) {
      std::map<int, SparsePoly> lhs;
      for (const auto& [mid, coef] : C.diff[j][c]) {
        int r = F.image_index[j + 1][mid];
        auto it = lhs.find(r);
        if (it == lhs.end()) lhs.emplace(r, coef.adams(p));
        else it->second = it->second + coef.adams(p);
      }
      std::map<int, SparsePoly> rhs;
      for (const auto& [row, coef] : F.target.diff[j][F.image_index[j][c]])
        rhs.emplace(row, coef);
      if (lhs != rhs)
        throw error("frobenius_chain_map: chain law failed in degree " +
                    std::to_string(j));
    }
  }
  return F;
}

/* Degree-j component of the inverse Cartier map: the basis of the classical
   Omega^j (weight box [0, bound]) with each form's image in q-Omega^j, where
   the coefficient is 1 and the identification is taken mod [p]_q. */
struct CartierInverse {
  int p = 2;
  int d = 1;
  int j = 0;
  int weight_bound = 0;
  std::vector<std::pair<Form, Form>> images;
};

inline CartierInverse cartier_inverse(int p, int d, int j, int weight_bound) {
  if (p != 2 && p != 3)
    throw error("cartier_inverse: p must be 2 or 3 (Euclidean Z[zeta_p])");
  if (d < 1 || d > kMaxVar) throw error("cartier_inverse: bad dimension");
  if (j < 0 || j > d) throw error("cartier_inverse: degree out of range");
  if (weight_bound < 0) throw error("cartier_inverse: negative weight bound");
  CartierInverse out{p, d, j, weight_bound, {}};
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    if (__builtin_popcount(mask) != j) continue;
    std::vector<int> a((size_t)d, 0);
    while (true) {
      bool ok = true;
      for (int i = 1; i <= d; ++i) {
        int w = a[i - 1] + ((mask >> (i - 1)) & 1);
        if (w > weight_bound) ok = false;
      }
      if (ok) {
        Form f;
        for (int i = 1; i <= d; ++i) f.alpha.set(i, Frac(a[i - 1]));
        f.mask = mask;
        out.images.push_back({f, frobenius_form(p, f, d)});
      }
      int i = 0;
      while (i < d && a[i] == weight_bound) a[i++] = 0;
      if (i == d) break;
      ++a[i];
    }
  }
  std::sort(out.images.begin(), out.images.end(),
            [&](const auto& x, const auto& y) {
              return detail::FormLess{d}(x.first, y.first);
            });
  return out;
}

struct CartierReportEntry {
  int degree = 0;
  std::vector<Frac> weight;
  int H_rank = 0;
  bool hit_by_cartier = false;
};

struct CartierReport {
  int p = 2;
  int d = 1;
  int weight_bound = 0;
  bool bijection = true;  // every nonzero class hit, ranks match, no torsion
  int excluded = 0;       // classes whose preimage weight leaves the box
  std::vector<CartierReportEntry> entries;

  std::string to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
      nlohmann::ordered_json je;
      je["p"] = p;
      je["d"] = d;
      je["degree"] = e.degree;
      nlohmann::ordered_json jw = nlohmann::ordered_json::array();
      for (const auto& w : e.weight) jw.push_back(w.str());
      je["weight"] = jw;
      je["H_rank"] = e.H_rank;
      je["hit_by_cartier"] = e.hit_by_cartier;
      arr.push_back(je);
    }
    return arr.dump(2);
  }
};

/* Per-weight cohomology of q-Omega/[p]_q (coefficients in Z[zeta_p] via
   q -> zeta_p) against the image of the classical basis under the inverse
   Cartier map: certifies rank equality in every window weight and degree.
   Torsion in any group would break the basis-class bijection and clears the
   flag. */
inline CartierReport cartier_quasi_iso_check(int p, int d, int weight_bound) {
  if (p != 2 && p != 3)
    throw error("cartier_quasi_iso_check: p must be 2 or 3");
  if (d < 1 || d > 2) throw error("cartier_quasi_iso_check: d must be 1 or 2");
  if (weight_bound < 0) throw error("cartier_quasi_iso_check: negative bound");
  CartierReport rep;
  rep.p = p;
  rep.d = d;
  rep.weight_bound = weight_bound;

  std::vector<int> w((size_t)d, 0);
  while (true) {
    std::vector<Frac> wf;
    for (int i = 0; i < d; ++i) wf.push_back(Frac(w[i]));
    auto piece = build_weight_piece(d, wf, ComplexKind::q_omega);
    auto h = cohomology(piece, CoeffRing::zzeta(p), wf);

    // preimage form count per degree: weight w/p must be integral and the
    // differentiated variables need positive weight there
    bool divisible = true;
    for (int i = 0; i < d; ++i)
      if (w[i] % p) divisible = false;
    std::vector<int> preimage((size_t)d + 1, 0);
    if (divisible) {
      int s = 0;
      for (int i = 0; i < d; ++i)
        if (w[i] > 0) ++s;  // w_i/p >= 1 exactly when w_i > 0 here
      for (unsigned mask = 0; mask < (1u << s); ++mask)
        ++preimage[__builtin_popcount(mask)];
      for (int i = 0; i < d; ++i)
        if (w[i] / p > weight_bound) {  // unreachable in this box; counted anyway
          ++rep.excluded;
          divisible = false;
        }
    }

    for (int j = 0; j <= d; ++j) {
      int rank = 0;
      bool torsion = false;
      for (const auto& e : h.entries)
        if (e.degree == j)
          for (const auto& s : e.divisors) {
            if (s == "0") ++rank;
            else torsion = true;
          }
      int pre = divisible ? preimage[j] : 0;
      if (torsion || pre != rank) rep.bijection = false;
      rep.entries.push_back({j, wf, rank, rank > 0 && pre == rank});
    }

    int i = 0;
    while (i < d && w[i] == weight_bound) w[i++] = 0;
    if (i == d) break;
    ++w[i];
  }
  return rep;
}

}  // namespace qlam
