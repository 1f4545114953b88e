#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qlam/complex.hpp"
#include "qlam/smith.hpp"

namespace qlam {

// Coefficient rings for cohomology. Every choice is a Euclidean domain (or,
// for Zpa, handled through universal coefficients over Z), so Smith normal
// form applies and module structure is exact.
struct CoeffRing {
  enum class Kind { Qq, Fp, Z_q1, Zzeta, Zpa };

  Kind kind = Kind::Qq;
  int p = 0;       // prime for Fp / Zzeta / Zpa
  unsigned a = 1;  // exponent for Zpa

  static CoeffRing qq() { return {Kind::Qq, 0, 1}; }
  static CoeffRing fp(int p) {
    require_prime(p);
    return {Kind::Fp, p, 1};
  }
  static CoeffRing z_q1() { return {Kind::Z_q1, 0, 1}; }
  static CoeffRing zzeta(int p) {
    require_prime(p);
    // Z[zeta_p] is Euclidean only for small p; the supported cases are
    // p = 2 (the ring is Z) and p = 3 (the Eisenstein integers).
    if (p != 2 && p != 3)
      throw error("Z[zeta_p] is only supported for p in {2,3}");
    return {Kind::Zzeta, p, 1};
  }
  static CoeffRing zpa(int p, unsigned a) {
    require_prime(p);
    if (a == 0) throw error("Z/p^a requires a >= 1");
    return {Kind::Zpa, p, a};
  }

  std::string name() const {
    switch (kind) {
      case Kind::Qq: return "Q[q]";
      case Kind::Fp: return "F_" + std::to_string(p) + "[q]";
      case Kind::Z_q1: return "Z (q->1)";
      case Kind::Zzeta: return "Z[zeta_" + std::to_string(p) + "]";
      case Kind::Zpa:
        return "Z/" + std::to_string(p) + "^" + std::to_string(a);
    }
    return "?";
  }

 private:
  static void require_prime(int p) {
    if (p < 2) throw error("coefficient prime must be >= 2");
    for (int d = 2; (long long)d * d <= p; ++d)
      if (p % d == 0) throw error("coefficient modulus must be prime");
  }
};

// One cohomology group, presented by its invariant factors. A divisor "0"
// denotes a free summand; every other divisor is a canonical non-unit.
struct CohomologyEntry {
  int degree = 0;
  std::vector<Frac> weight;  // empty for a complex without a single weight
  std::vector<std::string> divisors;
  std::string coeff_ring;
};

struct CohomologyReport {
  std::vector<CohomologyEntry> entries;

  std::string to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
      nlohmann::ordered_json je;
      je["degree"] = e.degree;
      nlohmann::ordered_json jw = nlohmann::ordered_json::array();
      for (const auto& w : e.weight) jw.push_back(w.str());
      je["weight"] = jw;
      je["divisors"] = e.divisors;
      je["coeff_ring"] = e.coeff_ring;
      arr.push_back(je);
    }
    return arr.dump(2);
  }
};

// A cochain complex given purely by matrices, with no form basis attached.
// Degrees run 0..dims.size()-1; diff[j] maps degree j to degree j+1.
struct GenericComplex {
  std::vector<int> dims;
  std::vector<SparseMat> diff;
};

namespace detail {

inline void check_generic(const GenericComplex& G) {
  if (G.dims.empty()) throw error("empty complex");
  if (G.diff.size() + 1 != G.dims.size())
    throw error("complex needs one differential per adjacent degree pair");
  for (size_t j = 0; j < G.diff.size(); ++j) {
    if ((int)G.diff[j].size() != G.dims[j])
      throw error("differential has wrong column count");
    for (const auto& col : G.diff[j])
      for (const auto& ent : col)
        if (ent.first < 0 || ent.first >= G.dims[j + 1])
          throw error("differential entry out of range");
  }
}

inline GenericComplex as_generic(const CochainComplex& C) {
  GenericComplex G;
  for (int j = 0; j <= C.d; ++j) G.dims.push_back(C.dim(j));
  G.diff = C.diff;
  return G;
}

// Dense matrix of the degree-j differential under an entrywise conversion.
// j = -1 and j = top produce the empty edge maps.
template <class Ring, class Conv>
DenseMat<typename Ring::Elem> dense_diff(const Ring& R, const GenericComplex& G,
                                         int j, Conv conv) {
  int top = (int)G.dims.size() - 1;
  int rows = (j + 1 >= 0 && j + 1 <= top) ? G.dims[j + 1] : 0;
  int cols = (j >= 0 && j <= top) ? G.dims[j] : 0;
  if (j < 0 || j >= top) return DenseMat<typename Ring::Elem>(rows, cols, R.zero());
  DenseMat<typename Ring::Elem> M(rows, cols, R.zero());
  for (int c = 0; c < cols; ++c)
    for (const auto& ent : G.diff[j][c]) M.at(ent.first, c) = conv(ent.second);
  return M;
}

template <class Ring, class Conv>
std::vector<HomologySummand<Ring>> homology_all(const Ring& R,
                                                const GenericComplex& G,
                                                Conv conv) {
  std::vector<HomologySummand<Ring>> out;
  int top = (int)G.dims.size() - 1;
  for (int j = 0; j <= top; ++j) {
    auto d_out = dense_diff(R, G, j, conv);
    auto d_in = dense_diff(R, G, j - 1, conv);
    out.push_back(homology_at(R, d_out, d_in));
  }
  return out;
}

template <class Ring>
std::vector<std::string> divisor_strings(const Ring& R,
                                         const HomologySummand<Ring>& H) {
  std::vector<std::string> out;
  for (const auto& t : H.torsion) out.push_back(R.str(t));
  for (int i = 0; i < H.free_rank; ++i) out.push_back("0");
  return out;
}

// H^j(C (x) Z/p^a) from the integral invariant factors, by universal
// coefficients: H^j (x) Z/p^a plus Tor(H^{j+1}, Z/p^a).
inline std::vector<std::string> zpa_divisors(
    const HomologySummand<RingZ>& Hj, const HomologySummand<RingZ>* Hnext,
    const BigInt& m) {
  std::vector<BigInt> parts;
  for (const auto& t : Hj.torsion) parts.push_back(boost::multiprecision::gcd(t, m));
  for (int i = 0; i < Hj.free_rank; ++i) parts.push_back(m);
  if (Hnext)
    for (const auto& t : Hnext->torsion)
      parts.push_back(boost::multiprecision::gcd(t, m));
  std::sort(parts.begin(), parts.end());
  std::vector<std::string> out;
  for (const auto& v : parts) {
    if (v == 1) continue;        // trivial summand
    if (v == m) out.push_back("0");  // full ring Z/p^a
    else out.push_back(v.str());
  }
  // canonical order: torsion divisors ascending, then free summands
  std::stable_partition(out.begin(), out.end(),
                        [](const std::string& s) { return s != "0"; });
  return out;
}

}  // namespace detail

// Invariant-factor presentation of H^* over the requested coefficients.
// The weight tag is attached when the complex carries exactly one weight.
inline CohomologyReport cohomology(const GenericComplex& G,
                                   const CoeffRing& coeff,
                                   const std::vector<Frac>& weight = {}) {
  detail::check_generic(G);
  CohomologyReport rep;
  int top = (int)G.dims.size() - 1;
  auto emit = [&](int j, std::vector<std::string> divisors) {
    rep.entries.push_back({j, weight, std::move(divisors), coeff.name()});
  };
  switch (coeff.kind) {
    case CoeffRing::Kind::Qq: {
      RingQPoly R;
      auto hs = detail::homology_all(R, G, to_qq);
      for (int j = 0; j <= top; ++j) emit(j, detail::divisor_strings(R, hs[j]));
      break;
    }
    case CoeffRing::Kind::Fp: {
      RingFpPoly R(coeff.p);
      auto hs = detail::homology_all(
          R, G, [&](const SparsePoly& f) { return to_fp(f, R); });
      for (int j = 0; j <= top; ++j) emit(j, detail::divisor_strings(R, hs[j]));
      break;
    }
    case CoeffRing::Kind::Z_q1: {
      RingZ R;
      auto hs = detail::homology_all(R, G, to_z_q1);
      for (int j = 0; j <= top; ++j) emit(j, detail::divisor_strings(R, hs[j]));
      break;
    }
    case CoeffRing::Kind::Zzeta: {
      if (coeff.p == 2) {
        RingZ R;
        auto hs = detail::homology_all(R, G, to_z_zeta2);
        for (int j = 0; j <= top; ++j)
          emit(j, detail::divisor_strings(R, hs[j]));
      } else {
        RingEisenstein R;
        auto hs = detail::homology_all(R, G, to_zeta3);
        for (int j = 0; j <= top; ++j)
          emit(j, detail::divisor_strings(R, hs[j]));
      }
      break;
    }
    case CoeffRing::Kind::Zpa: {
      RingZ R;
      auto hs = detail::homology_all(R, G, to_z_q1);
      BigInt m = big_pow(BigInt(coeff.p), coeff.a);
      for (int j = 0; j <= top; ++j)
        emit(j, detail::zpa_divisors(hs[j], j < top ? &hs[j + 1] : nullptr, m));
      break;
    }
  }
  return rep;
}

inline CohomologyReport cohomology(const CochainComplex& C,
                                   const CoeffRing& coeff,
                                   const std::vector<Frac>& weight = {}) {
  return cohomology(detail::as_generic(C), coeff, weight);
}

// Per-weight cohomology of a bounded complex: each weight piece is extracted
// and resolved separately. Entries are ordered by weight, then degree.
inline CohomologyReport cohomology_by_weight(int d, int weight_bound,
                                             ComplexKind kind,
                                             const CoeffRing& coeff) {
  CohomologyReport rep;
  auto C = build_complex(d, weight_bound, kind);
  for (const auto& w : complex_weights(C)) {
    auto piece = build_weight_piece(d, w, kind);
    auto sub = cohomology(piece, coeff, w);
    for (auto& e : sub.entries) rep.entries.push_back(std::move(e));
  }
  return rep;
}

// Exact Z[q]-module presentation of a weight piece. Only weights supported
// in at most one variable stay within Euclidean territory (the piece is then
// concentrated in one matrix over Z[q], and that matrix is 1x1); richer
// weights would need Smith form over the non-Euclidean Z[q] and are refused.
struct IntegralPresentation {
  int degree = 0;
  std::vector<std::string> relations;  // each quotient Z[q]/(r)
  int free_rank = 0;
};

inline std::vector<IntegralPresentation> integral_weight_presentation(
    int d, const std::vector<Frac>& w) {
  if ((int)w.size() != d) throw error("weight length must match dimension");
  int support = 0;
  long long n = 0;
  for (const auto& wi : w) {
    if (!wi.is_integer() || wi.num < 0)
      throw error("integral presentation needs nonnegative integer weight");
    if (wi.num > 0) {
      ++support;
      n = wi.num;
    }
  }
  if (support > 1)
    throw error(
        "integral Z[q] presentation is limited to weights supported in one "
        "variable; use a Euclidean coefficient ring instead");
  std::vector<IntegralPresentation> out;
  if (support == 0) {
    out.push_back({0, {}, 1});  // single basis form, zero differential
    return out;
  }
  // piece: Z[q] --[n]_q--> Z[q] in degrees 0, 1; [n]_q is a nonzerodivisor
  out.push_back({0, {}, 0});
  out.push_back({1, {q_int(n).str()}, 0});
  return out;
}

}  // namespace qlam
