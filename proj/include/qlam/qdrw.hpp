#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qlam/lambda.hpp"
#include "qlam/qanalogue.hpp"
#include "qlam/quotient.hpp"
#include "qlam/smith.hpp"

namespace qlam {

inline SparsePoly q_power(const Frac& alpha) {
  return SparsePoly::monomial(1, {{0, alpha}});
}

// [alpha]_q = (q^alpha - 1)/(q - 1) held as an exact fraction; for alpha =
// m/p^n this equals [m]_{q^(1/p^n)} / [p^n]_{q^(1/p^n)}
inline PolyPair frac_q_int(const Frac& alpha) {
  if (alpha < Frac(0)) throw error("frac_q_int: negative exponent");
  return {q_power(alpha) - SparsePoly::constant(1),
          SparsePoly::variable(0) - SparsePoly::constant(1)};
}

// one term c(q) * x^alpha with fractional alpha
struct FracMonomial {
  SparsePoly coeff;
  Frac exponent;
};

// one term c * x^alpha dlog x, coefficient kept as an exact fraction
struct DlogTerm {
  PolyPair coeff;
  Frac exponent;
};

// Jackson differential in dlog coordinates: x^a maps to [a]_q x^a dlog x,
// extended additively; weight-0 terms are constants and drop out
inline std::vector<DlogTerm> frac_nabla(const std::vector<FracMonomial>& f) {
  std::vector<DlogTerm> out;
  for (const auto& t : f) {
    if (t.exponent < Frac(0)) throw error("frac_nabla: negative exponent");
    if (t.coeff.is_zero() || t.exponent == Frac(0)) continue;
    PolyPair c = PolyPair::of(t.coeff) * frac_q_int(t.exponent);
    auto it = std::find_if(out.begin(), out.end(), [&](const DlogTerm& d) {
      return d.exponent == t.exponent;
    });
    if (it == out.end())
      out.push_back({c, t.exponent});
    else
      it->coeff = it->coeff + c;
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const DlogTerm& d) { return d.coeff.num.is_zero(); }),
            out.end());
  std::sort(out.begin(), out.end(),
            [](const DlogTerm& a, const DlogTerm& b) { return a.exponent < b.exponent; });
  return out;
}

struct LatticeGenerator {
  Frac weight;        // m/p^n in lowest terms
  SparsePoly scalar;  // multiplier on x^weight; [p^n]_{q^(1/p^n)} at level 0
  SparsePoly element; // scalar * x^weight
};

/* Two-term integral lattice: level 0 holds the largest scalar multiples of
   x^{m/p^n} whose Jackson derivative stays in Z[q^(1/p^N)], level 1 holds
   x^{m/p^n} dlog x for positive weights only (coefficients vanish at x = 0).
   diff is aligned with level0 and gives the coefficient on the level-1
   generator of equal weight. */
struct LatticeComplex {
  int p = 2;
  int N = 0;
  Frac weight_bound;
  std::vector<LatticeGenerator> level0;
  std::vector<LatticeGenerator> level1;
  std::vector<SparsePoly> diff;
  bool maximality_certified = false;

  std::string dump_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (int level = 0; level <= 1; ++level)
      for (const auto& g : level == 0 ? level0 : level1) {
        nlohmann::ordered_json o;
        o["p"] = p;
        o["N"] = N;
        o["weight"] = g.weight.str();
        o["level"] = level;
        o["basis"] = {g.element.str()};
        arr.push_back(std::move(o));
      }
    return arr.dump(2);
  }
};

namespace detail {

inline void require_small_prime(int p, const char* who) {
  for (int c = 2; c < p; ++c)
    if (p % c == 0) throw error(std::string(who) + ": p must be prime");
  if (p < 2) throw error(std::string(who) + ": p must be prime");
}

// weights m/p^n in lowest terms up to the bound, n <= N, ascending
inline std::vector<std::pair<long long, int>> lattice_weights(int p, int N,
                                                              const Frac& bound) {
  std::vector<std::pair<long long, int>> mw;
  for (long long m = 0; Frac(m) <= bound; ++m) mw.push_back({m, 0});
  for (int n = 1; n <= N; ++n) {
    long long pn = ll_pow(p, n);
    for (long long m = 1; Frac(m, pn) <= bound; ++m)
      if (m % p) mw.push_back({m, n});
  }
  std::sort(mw.begin(), mw.end(), [&](const auto& a, const auto& b) {
    return Frac(a.first, ll_pow(p, a.second)) < Frac(b.first, ll_pow(p, b.second));
  });
  return mw;
}

}  // namespace detail

/* The construction proves its own claims: each level-0 image is divided
   exactly (integrality), the quotient is pinned to [m]_{q^(1/p^n)}
   (telescoping), and maximality comes from gcd([p^n]_q, [m]_q) = 1 in Q[q]
   plus monicity, which makes [p^n]_t divide any scalar with integral image. */
inline LatticeComplex build_lattice(int p, int N, const Frac& weight_bound) {
  detail::require_small_prime(p, "build_lattice");
  if (N < 0 || N > 6) throw error("build_lattice: depth out of range");
  if (weight_bound < Frac(0)) throw error("build_lattice: negative bound");
  LatticeComplex L;
  L.p = p;
  L.N = N;
  L.weight_bound = weight_bound;

  RingQPoly RQ;
  for (auto [m, n] : detail::lattice_weights(p, N, weight_bound)) {
    long long pn = ll_pow(p, n);
    Frac w(m, pn);
    SparsePoly scalar = n == 0 ? SparsePoly::constant(1) : q_int(pn, pn);
    SparsePoly x_w = SparsePoly::monomial(1, {{1, w}});
    LatticeGenerator gen{w, scalar, scalar * x_w};
    L.level0.push_back(gen);
    if (m > 0) L.level1.push_back({w, SparsePoly::constant(1), x_w});

    if (m == 0) {
      L.diff.push_back({});
      continue;
    }
    auto img = frac_nabla({{scalar, w}});
    if (img.size() != 1 || img[0].exponent != w)
      throw error("build_lattice: unexpected derivative support");
    auto c = img[0].coeff.num.exact_divide(img[0].coeff.den);
    if (!c) throw error("build_lattice: level-0 image not integral at weight " + w.str());
    if (*c != q_int(m, pn))
      throw error("build_lattice: telescoping failed at weight " + w.str());
    L.diff.push_back(*c);

    if (n > 0) {
      auto g = ring_gcd(RQ, to_qq(q_int(pn)), to_qq(q_int(m)));
      if (RQ.is_zero(g) || !RQ.is_unit(g))
        throw error("build_lattice: maximality certificate failed at " + w.str());
      if (scalar.content() != 1 || scalar.terms().back().second != 1)
        throw error("build_lattice: scalar is not primitive monic");
    }
  }
  L.maximality_certified = true;
  return L;
}

struct SpecializedWeight {
  Frac weight;
  BigInt scalar;                // q -> 1 image of the level-0 multiplier, p^n
  BigInt diff;                  // q -> 1 differential entry, m
  std::vector<std::string> H0;  // "0" marks a free summand
  std::vector<std::string> H1;
};

struct SpecializedComplex {
  int p = 0;
  int N = 0;
  std::vector<SpecializedWeight> weights;
};

/* q^(1/p^N) -> 1. Each weight piece becomes Z --m--> Z (or Z --> 0 at weight
   zero); presentations are read off its Smith normal form. */
inline SpecializedComplex specialize_q1(const LatticeComplex& L) {
  SpecializedComplex out{L.p, L.N, {}};
  RingZ Z;
  for (size_t i = 0; i < L.level0.size(); ++i) {
    SpecializedWeight sw;
    sw.weight = L.level0[i].weight;
    sw.scalar = L.level0[i].scalar.evaluate_all_ones();
    sw.diff = L.diff[i].evaluate_all_ones();
    if (sw.weight == Frac(0)) {
      sw.H0 = {"0"};
    } else {
      DenseMat<BigInt> M(1, 1, sw.diff);
      auto S = smith(Z, M);
      for (const auto& d : S.divisors)
        if (!Z.is_unit(d)) sw.H1.push_back(d.str());
    }
    out.weights.push_back(std::move(sw));
  }
  return out;
}

/* V_n(a) = [n]_{q^(1/n)} * Psi^(1/n)(a) for a p-power n; Psi^n V_n is then
   multiplication by [n]_q, which is n at q = 1. */
inline SparsePoly verschiebung_q(long long n, const SparsePoly& a, int max_depth) {
  if (n < 1) throw error("verschiebung_q: index must be positive");
  if (n == 1) return a;
  try {
    detail::den_prime_power(n);
  } catch (const error&) {
    throw error("verschiebung_q: index must be a prime power");
  }
  return q_int(n, n) * a.adams_root(n, max_depth);
}

struct HomotopyReport {
  int p = 0;
  int N = 0;
  Frac alpha;         // normalized to lowest terms m/p^n
  long long m = 0;    // numerator
  int level = 0;      // n
  SparsePoly inverse; // truncated inverse of [m]_{q^(1/p^n)}
  bool identity_holds = false;
  std::string modulus;

  std::string str() const {
    return "q-integration homotopy at weight " + alpha.str() + " mod " + modulus +
           ": dh+hd " + (identity_holds ? "= id" : "!= id");
  }
};

/* Contracting homotopy h(x^a dlog x) = [a]_q^{-1} x^a on the weight-a lattice
   piece, realized through [m/p^n]_q^{-1} = [m]_{q^(1/p^n)}^{-1} [p^n]_{q^(1/p^n)}.
   In the lattice basis (a0 = [p^n]_t x^a, a1 = x^a dlog x) both compositions
   h(d a0) and d(h a1) multiply by [m]_t * inverse, so the homotopy identity
   reduces to that product being 1 modulo the quotient spec. */
inline HomotopyReport q_integration_homotopy(int p, int N, const Frac& alpha,
                                             const QuotientSpec& spec) {
  detail::require_small_prime(p, "q_integration_homotopy");
  if (N < 0) throw error("q_integration_homotopy: negative depth");
  if (alpha.num <= 0) throw error("q_integration_homotopy: weight must be positive");
  auto [dp, n] = detail::den_prime_power(alpha.den);
  if (dp && dp != p)
    throw error("q_integration_homotopy: weight denominator is prime to p");
  if (n > N)
    throw depth_exceeded("q_integration_homotopy: weight needs depth " +
                         std::to_string(n) + " but N = " + std::to_string(N));
  HomotopyReport rep;
  rep.p = p;
  rep.N = N;
  rep.alpha = alpha;
  rep.m = alpha.num;
  rep.level = n;
  std::string label = spec.p ? std::to_string(spec.p) + "^" + std::to_string(spec.a) : "";
  for (const auto& pm : spec.mods) label += (label.empty() ? "" : ", ") + pm.label;
  rep.modulus = "(" + label + ")";

  SparsePoly qm = q_int(rep.m, alpha.den);
  rep.inverse = truncated_inverse(qm, spec);  // not_a_unit when p | m at level 0
  rep.identity_holds =
      spec.reduce(qm * rep.inverse - SparsePoly::constant(1)).is_zero();
  return rep;
}

}  // namespace qlam
