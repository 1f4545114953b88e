#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qlam/cartier.hpp"
#include "qlam/cohomology.hpp"
#include "qlam/lambda.hpp"
#include "qlam/literal.hpp"
#include "qlam/qdrw.hpp"
#include "qlam/witt.hpp"

namespace qlam {

struct CheckResult {
  std::string suite;
  std::string name;
  std::string certifies;  // the identity or property this check pins down
  bool pass = true;
  std::string counterexample;
};

struct SuiteResult {
  std::vector<CheckResult> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckResult* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
  void append(const SuiteResult& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }

  std::string to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json o;
      o["suite"] = c.suite;
      o["check"] = c.name;
      o["certifies"] = c.certifies;
      o["pass"] = c.pass;
      if (!c.pass) o["counterexample"] = c.counterexample;
      arr.push_back(std::move(o));
    }
    return arr.dump(2);
  }
};

namespace detail {

// runs body() looking for the first counterexample; body returns a non-empty
// description on failure and sets nothing on success
template <class F>
CheckResult run_check(const std::string& suite, const std::string& name,
                      const std::string& certifies, F&& body) {
  CheckResult c{suite, name, certifies, true, ""};
  try {
    std::string bad = body();
    if (!bad.empty()) {
      c.pass = false;
      c.counterexample = bad;
    }
  } catch (const std::exception& e) {
    c.pass = false;
    c.counterexample = e.what();
  }
  return c;
}

}  // namespace detail

inline SuiteResult suite_lambda(int max_n, int max_k) {
  SuiteResult r;
  r.checks.push_back(detail::run_check(
      "lambda", "q-integer-images",
      "lambda^k([n]_q) = q^(k(k-1)/2)*binom(n,k)_q", [&]() -> std::string {
        for (int n = 0; n <= max_n; ++n)
          for (int k = 0; k <= max_k; ++k) {
            SparsePoly want =
                SparsePoly::monomial(
                    1, {{0, Frac(static_cast<long long>(k) * (k - 1) / 2)}}) *
                q_binomial(n, k);
            if (lambda_op(k, q_int(n)) != want)
              return "n=" + std::to_string(n) + " k=" + std::to_string(k);
          }
        return "";
      }));
  r.checks.push_back(detail::run_check(
      "lambda", "negated-q-integer-images",
      "lambda^k(-[n]_q) = (-1)^k*binom(n+k-1,k)_q", [&]() -> std::string {
        for (int n = 1; n <= max_n; ++n)
          for (int k = 0; k <= max_k; ++k) {
            SparsePoly want = q_binomial(n + k - 1, k);
            if (k % 2) want = -want;
            if (lambda_op(k, -q_int(n)) != want)
              return "n=" + std::to_string(n) + " k=" + std::to_string(k);
          }
        return "";
      }));
  r.checks.push_back(detail::run_check(
      "lambda", "divided-power-closed-forms",
      "product and sum forms of lambda^k((y-x)/(q-1)) agree by cross-multiplication",
      [&]() -> std::string {
        for (int k = 0; k <= max_k; ++k) {
          DiffQLambdaForms f = diffq_lambda(k);
          if (!PolyPair::cross_eq(f.product, f.sum)) return "k=" + std::to_string(k);
        }
        return "";
      }));
  r.checks.push_back(detail::run_check(
      "lambda", "newton-recursion",
      "the [k]_q-recursion from Adams operations reproduces the closed form",
      [&]() -> std::string {
        SparsePoly a = SparsePoly::variable(2) - SparsePoly::variable(1);
        SparsePoly qm1 = SparsePoly::variable(0) - SparsePoly::constant(1);
        for (int k = 0; k <= max_k; ++k) {
          PolyPair dk = q_divided_power(k, a);
          PolyPair scaled{dk.num, dk.den * qm1.pow(static_cast<unsigned>(k))};
          if (!PolyPair::cross_eq(scaled, diffq_lambda_closed(k)))
            return "k=" + std::to_string(k);
        }
        return "";
      }));
  return r;
}

inline SuiteResult suite_basis(int max_total) {
  SuiteResult r;
  r.checks.push_back(detail::run_check(
      "basis", "integral-coefficients",
      "lambda^i(z)lambda^j(z) expands over {lambda^k(z)} with coefficients in Z[q,x]",
      [&]() -> std::string {
        for (int i = 0; i + 0 <= max_total; ++i)
          for (int j = 0; i + j <= max_total; ++j) {
            try {
              basis_expand(i, j);
            } catch (const std::exception& e) {
              return "i=" + std::to_string(i) + " j=" + std::to_string(j) + ": " +
                     e.what();
            }
          }
        return "";
      }));
  r.checks.push_back(detail::run_check(
      "basis", "expansion-rebuilds-product",
      "the expansion re-assembles to the product of closed forms",
      [&]() -> std::string {
        for (int i = 0; i + 0 <= max_total; ++i)
          for (int j = 0; i + j <= max_total; ++j) {
            PolyPair lhs = PolyPair::zero();
            for (const auto& kv : basis_expand(i, j))
              lhs = lhs + PolyPair::of(kv.second) * diffq_lambda_closed(kv.first);
            PolyPair rhs = diffq_lambda_closed(i) * diffq_lambda_closed(j);
            if (!PolyPair::cross_eq(lhs, rhs))
              return "i=" + std::to_string(i) + " j=" + std::to_string(j);
          }
        return "";
      }));
  return r;
}

inline SuiteResult suite_taylor(int max_n) {
  SuiteResult r;
  r.checks.push_back(detail::run_check(
      "taylor", "q-taylor-identity",
      "y^n = sum_k binom(n,k)_q x^(n-k) prod_{j<k}(y - q^j x)",
      [&]() -> std::string {
        for (int n = 0; n <= max_n; ++n)
          if (!q_taylor_defect(n).is_zero()) return "n=" + std::to_string(n);
        return "";
      }));
  return r;
}

inline SuiteResult suite_witt(int max_len) {
  SuiteResult r;
  auto sample = [](int p, int len, int salt) {
    WittVector w{p, {}};
    for (int i = 0; i < len; ++i)
      w.a.push_back(parse_poly("x1") * SparsePoly::constant(salt + i) +
                    SparsePoly::constant(salt * (i + 1) + 1));
    return w;
  };
  r.checks.push_back(detail::run_check(
      "witt", "ghost-ring-homomorphism",
      "ghost(u+v) and ghost(u*v) are componentwise sum and product",
      [&]() -> std::string {
        for (int p : {2, 3})
          for (int len = 1; len <= max_len; ++len) {
            WittVector u = sample(p, len, 2), v = sample(p, len, 5);
            auto gu = ghost(u), gv = ghost(v);
            auto gs = ghost(witt_add(u, v)), gp = ghost(witt_mul(u, v));
            for (int i = 0; i < len; ++i) {
              if (gs[i] != gu[i] + gv[i])
                return "add p=" + std::to_string(p) + " i=" + std::to_string(i);
              if (gp[i] != gu[i] * gv[i])
                return "mul p=" + std::to_string(p) + " i=" + std::to_string(i);
            }
          }
        return "";
      }));
  r.checks.push_back(detail::run_check(
      "witt", "frobenius-verschiebung",
      "FV = p (p-fold Witt addition) on sample vectors", [&]() -> std::string {
        for (int p : {2, 3}) {
          int len = std::min(max_len, 3);
          WittVector w = sample(p, len, 3);
          WittVector pw = w;
          for (int k = 1; k < p; ++k) pw = witt_add(pw, w);
          if (!(frobenius(verschiebung(w)) == pw)) return "p=" + std::to_string(p);
        }
        return "";
      }));
  r.checks.push_back(detail::run_check(
      "witt", "teichmuller-multiplicative",
      "[a][b] = [ab] for the multiplicative section", [&]() -> std::string {
        for (int p : {2, 3}) {
          SparsePoly a = parse_poly("x1 + 1"), b = parse_poly("2*x1");
          int len = std::min(max_len, 3);
          if (!(witt_mul(teichmuller(p, len, a), teichmuller(p, len, b)) ==
                teichmuller(p, len, a * b)))
            return "p=" + std::to_string(p);
        }
        return "";
      }));
  r.checks.push_back(detail::run_check(
      "witt", "teichmuller-limit-cauchy",
      "(q^(1/p^(r+1))-1)^(p^(r+1)) - (q^(1/p^r)-1)^(p^r) gains valuation in r",
      [&]() -> std::string {
        QuotientSpec spec;
        spec.add_int_modulus(2, 12);
        spec.add_qroot_minus_one(2, 3, 12);
        auto rep = teichmuller_limit_check(2, 0, 3, spec);
        if (!rep.strictly_increasing) return rep.str();
        return "";
      }));
  return r;
}

inline SuiteResult suite_decalage(int max_d, int max_weight) {
  SuiteResult r;
  SparsePoly qm1 = SparsePoly::variable(0) - SparsePoly::constant(1);
  r.checks.push_back(detail::run_check(
      "decalage", "eta-of-twisted-is-q-omega",
      "decalage of the (q-1)-twisted complex is matrix-identical to the q-de Rham complex",
      [&]() -> std::string {
        for (int d = 1; d <= max_d; ++d) {
          auto tw = build_complex(d, max_weight, ComplexKind::twisted);
          auto qo = build_complex(d, max_weight, ComplexKind::q_omega);
          if (!same_differentials(decalage(tw, qm1), qo)) return "d=" + std::to_string(d);
        }
        return "";
      }));
  r.checks.push_back(detail::run_check(
      "decalage", "classical-reduction",
      "mod q-1 the q-de Rham differential has integer entries n and the twisted one vanishes",
      [&]() -> std::string {
        for (int d = 1; d <= max_d; ++d) {
          auto tw = build_complex(d, max_weight, ComplexKind::twisted);
          auto qo = build_complex(d, max_weight, ComplexKind::q_omega);
          for (int j = 0; j < d; ++j)
            for (int c = 0; c < qo.dim(j); ++c) {
              for (const auto& [row, f] : tw.diff[j][c]) {
                (void)row;
                if (!f.exact_divide(qm1))
                  return "twisted d=" + std::to_string(d) + " degree " + std::to_string(j);
              }
              for (const auto& [row, f] : qo.diff[j][c]) {
                const Form& src = qo.basis[j][c];
                const Form& dst = qo.basis[j + 1][row];
                unsigned nb = dst.mask ^ src.mask;
                if (__builtin_popcount(nb) != 1)
                  return "entry off the Koszul pattern at d=" + std::to_string(d);
                BigInt v = f.evaluate_all_ones();  // the entry at q = 1
                BigInt want = src.alpha.get(__builtin_ctz(nb) + 1).num;
                if (v != want && v != -want)
                  return "q-omega d=" + std::to_string(d) + " degree " + std::to_string(j);
              }
            }
        }
        return "";
      }));
  r.checks.push_back(detail::run_check(
      "decalage", "weight-torsion",
      "per weight n the q -> 1 cohomology of the line has H^1 = Z/n",
      [&]() -> std::string {
        auto rep = cohomology_by_weight(1, max_weight, ComplexKind::q_omega,
                                        CoeffRing::z_q1());
        for (const auto& e : rep.entries) {
          if (e.degree != 1) continue;
          long long n = e.weight[0].num;
          std::vector<std::string> want;
          if (n > 1) want.push_back(BigInt(n).str());
          if (e.divisors != want) return "weight " + std::to_string(n);
        }
        return "";
      }));
  return r;
}

inline SuiteResult suite_cartier(int p, int max_weight) {
  SuiteResult r;
  r.checks.push_back(detail::run_check(
      "cartier", "frobenius-chain-law",
      "x^a dx_I -> x^(pa + (p-1)1_I) dx_I with Psi^p on coefficients commutes with d",
      [&]() -> std::string {
        auto F = frobenius_chain_map(
            p, build_complex(1, std::min(max_weight, 8), ComplexKind::twisted));
        for (int j = 0; j <= 1; ++j)
          for (size_t c = 0; c < F.source.basis[j].size(); ++c) {
            ExponentVec w = form_weight(F.source.basis[j][c], 1);
            ExponentVec pw =
                form_weight(F.target.basis[j][(size_t)F.image_index[j][(int)c]], 1);
            if (pw.get(1) != w.get(1) * Frac(p))
              return "degree " + std::to_string(j) + " index " + std::to_string(c);
          }
        return "";
      }));
  r.checks.push_back(detail::run_check(
      "cartier", "inverse-cartier-bijection",
      "classical j-forms biject with nonzero H^j(q-Omega/[p]_q) classes per weight",
      [&]() -> std::string {
        auto rep = cartier_quasi_iso_check(p, 1, max_weight);
        if (rep.bijection) return "";
        for (const auto& e : rep.entries)
          if (e.H_rank > 0 && !e.hit_by_cartier)
            return "weight " + e.weight[0].str() + " degree " + std::to_string(e.degree);
        return "bijection flag false";
      }));
  return r;
}

inline SuiteResult suite_qdrw(int p, int N, int max_weight, const QuotientSpec& spec) {
  SuiteResult r;
  r.checks.push_back(detail::run_check(
      "qdrw", "lattice-integrality",
      "every stated level-0 generator has integral Jackson derivative and maximal scalar",
      [&]() -> std::string {
        auto L = build_lattice(p, N, Frac(max_weight));
        if (!L.maximality_certified) return "certificate missing";
        return "";
      }));
  r.checks.push_back(detail::run_check(
      "qdrw", "q-to-one-torsion",
      "weight m/p^n piece of the q -> 1 complex has H^1 of order m",
      [&]() -> std::string {
        auto S = specialize_q1(build_lattice(p, N, Frac(max_weight)));
        for (const auto& w : S.weights) {
          std::vector<std::string> want;
          if (w.weight.num > 1) want.push_back(BigInt(w.weight.num).str());
          if (w.weight != Frac(0) && w.H1 != want) return "weight " + w.weight.str();
        }
        return "";
      }));
  r.checks.push_back(detail::run_check(
      "qdrw", "contracting-homotopy",
      "dh + hd = id on nonzero-weight pieces modulo the truncation",
      [&]() -> std::string {
        std::vector<Frac> weights =
            p == 2 ? std::vector<Frac>{Frac(1), Frac(1, 2), Frac(3, 4), Frac(3, 2),
                                       Frac(5, 4)}
                   : std::vector<Frac>{Frac(1), Frac(1, 3), Frac(2, 9), Frac(4, 3),
                                       Frac(5, 9)};
        for (const auto& a : weights) {
          if (a.den > ll_pow(p, N)) continue;
          auto rep = q_integration_homotopy(p, N, a, spec);
          if (!rep.identity_holds) return "weight " + a.str();
        }
        return "";
      }));
  return r;
}

}  // namespace qlam
