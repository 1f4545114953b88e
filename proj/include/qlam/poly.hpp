#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qlam/base.hpp"

namespace qlam {

/* Variable ids: 0 is q, 1..9 are x1..x9. */
constexpr int kMaxVar = 9;

struct ExponentVec {
  // sorted by variable id, nonzero exponents only
  std::vector<std::pair<int, Frac>> e;

  Frac get(int var) const {
    for (const auto& p : e)
      if (p.first == var) return p.second;
    return Frac(0);
  }

  void set(int var, Frac v) {
    auto it = std::lower_bound(
        e.begin(), e.end(), var,
        [](const std::pair<int, Frac>& a, int b) { return a.first < b; });
    if (it != e.end() && it->first == var) {
      if (v.num == 0)
        e.erase(it);
      else
        it->second = v;
    } else if (v.num != 0) {
      e.insert(it, {var, v});
    }
  }

  Frac total() const {
    Frac t(0);
    for (const auto& p : e) t = t + p.second;
    return t;
  }

  bool empty() const { return e.empty(); }
  int max_var() const { return e.empty() ? -1 : e.back().first; }

  friend ExponentVec operator+(const ExponentVec& a, const ExponentVec& b) {
    ExponentVec r = a;
    for (const auto& p : b.e) r.set(p.first, r.get(p.first) + p.second);
    return r;
  }
  friend ExponentVec operator-(const ExponentVec& a, const ExponentVec& b) {
    ExponentVec r = a;
    for (const auto& p : b.e) r.set(p.first, r.get(p.first) - p.second);
    return r;
  }
  ExponentVec scaled(Frac s) const {
    ExponentVec r;
    if (s.num == 0) return r;
    for (const auto& p : e) r.e.push_back({p.first, p.second * s});
    return r;
  }
  bool dominates(const ExponentVec& b) const {  // componentwise >=
    for (const auto& p : b.e)
      if (get(p.first) < p.second) return false;
    return true;
  }
  bool nonnegative() const {
    for (const auto& p : e)
      if (p.second < Frac(0)) return false;
    return true;
  }
  friend bool operator==(const ExponentVec& a, const ExponentVec& b) {
    return a.e == b.e;
  }
};

/* Graded-lex term order, q before x1 < x2 < ... */
inline int cmp_gradedlex(const ExponentVec& a, const ExponentVec& b) {
  Frac ta = a.total(), tb = b.total();
  if (ta < tb) return -1;
  if (tb < ta) return 1;
  for (int v = 0; v <= kMaxVar; ++v) {
    Frac ea = a.get(v), eb = b.get(v);
    if (ea < eb) return -1;
    if (eb < ea) return 1;
  }
  return 0;
}

struct TermLess {
  bool operator()(const ExponentVec& a, const ExponentVec& b) const {
    return cmp_gradedlex(a, b) < 0;
  }
};

/* Ambient ring descriptor: number of x-variables, and the prime p with depth N
   bounding exponent denominators to p^N (prime == 0: integer exponents). */
struct Ring {
  int nvars = 0;
  int prime = 0;
  int depth = 0;

  static Ring join(const Ring& a, const Ring& b) {
    Ring r;
    r.nvars = std::max(a.nvars, b.nvars);
    if (a.prime && b.prime && a.prime != b.prime)
      throw error("ring join: incompatible exponent primes " +
                  std::to_string(a.prime) + " vs " + std::to_string(b.prime));
    r.prime = a.prime ? a.prime : b.prime;
    r.depth = std::max(a.depth, b.depth);
    return r;
  }
};

namespace detail {
// denominator must be a prime power; returns {p, k}
inline std::pair<int, int> den_prime_power(long long den) {
  if (den == 1) return {0, 0};
  int p = 0;
  for (int c = 2; static_cast<long long>(c) * c <= den; ++c)
    if (den % c == 0) {
      p = c;
      break;
    }
  if (p == 0) p = static_cast<int>(den);
  int k = 0;
  long long d = den;
  while (d % p == 0) {
    d /= p;
    ++k;
  }
  if (d != 1) throw error("exponent denominator is not a prime power");
  return {p, k};
}
}  // namespace detail

class SparsePoly {
 public:
  using Term = std::pair<ExponentVec, BigInt>;

  SparsePoly() = default;
  explicit SparsePoly(const Ring& r) : ring_(r) {}

  static SparsePoly constant(BigInt c, Ring r = {}) {
    SparsePoly f(r);
    if (c != 0) f.terms_.push_back({ExponentVec{}, std::move(c)});
    return f;
  }

  static SparsePoly monomial(BigInt c,
                             const std::vector<std::pair<int, Frac>>& vars,
                             Ring r = {}) {
    ExponentVec ev;
    for (const auto& v : vars) {
      if (v.first < 0 || v.first > kMaxVar)
        throw error("variable id out of range");
      ev.set(v.first, ev.get(v.first) + v.second);
    }
    for (const auto& p : ev.e) {
      auto [dp, dk] = detail::den_prime_power(p.second.den);
      if (dp) {
        Ring add;
        add.prime = dp;
        add.depth = dk;
        r = Ring::join(r, add);
      }
      if (p.first > 0) r.nvars = std::max(r.nvars, p.first);
    }
    SparsePoly f(r);
    if (c != 0) f.terms_.push_back({std::move(ev), std::move(c)});
    return f;
  }

  static SparsePoly variable(int var, Ring r = {}) {
    return monomial(1, {{var, Frac(1)}}, r);
  }

  const std::vector<Term>& terms() const { return terms_; }
  const Ring& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_[0].first.empty() && terms_[0].second == 1;
  }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
  }
  BigInt constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw error("constant_value on non-constant");
    return terms_[0].second;
  }
  size_t term_count() const { return terms_.size(); }

  const Term& leading() const {
    if (terms_.empty()) throw error("leading term of zero");
    return terms_.back();
  }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r(Ring::join(a.ring_, b.ring_));
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size()) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size()) {
        r.terms_.push_back(b.terms_[j++]);
      } else {
        int c = cmp_gradedlex(a.terms_[i].first, b.terms_[j].first);
        if (c < 0) {
          r.terms_.push_back(a.terms_[i++]);
        } else if (c > 0) {
          r.terms_.push_back(b.terms_[j++]);
        } else {
          BigInt s = a.terms_[i].second + b.terms_[j].second;
          if (s != 0) r.terms_.push_back({a.terms_[i].first, std::move(s)});
          ++i;
          ++j;
        }
      }
    }
    return r;
  }

  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
    return a + (-b);
  }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r(Ring::join(a.ring_, b.ring_));
    if (a.is_zero() || b.is_zero()) return r;
    std::map<ExponentVec, BigInt, TermLess> acc;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        ExponentVec ev = ta.first + tb.first;
        acc[std::move(ev)] += ta.second * tb.second;
      }
    r.terms_.reserve(acc.size());
    for (auto& kv : acc)
      if (kv.second != 0) r.terms_.push_back({kv.first, std::move(kv.second)});
    return r;
  }

  friend SparsePoly operator*(const BigInt& c, const SparsePoly& a) {
    SparsePoly r = a;
    if (c == 0) {
      r.terms_.clear();
      return r;
    }
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }
  friend SparsePoly operator*(const SparsePoly& a, const BigInt& c) {
    return c * a;
  }

  SparsePoly pow(unsigned e) const {
    SparsePoly r = constant(1, ring_);
    SparsePoly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      if (e >>= 1) b = b * b;
    }
    return r;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const SparsePoly& a, const SparsePoly& b) {
    return !(a == b);
  }

  /* Greedy leading-term exact division; nullopt when not exactly divisible. */
  std::optional<SparsePoly> exact_divide(const SparsePoly& g) const {
    if (g.is_zero()) throw error("exact_divide by zero");
    SparsePoly rem = *this;
    SparsePoly quo(Ring::join(ring_, g.ring_));
    const Term& lg = g.leading();
    while (!rem.is_zero()) {
      const Term& lr = rem.leading();
      if (!lr.first.dominates(lg.first)) return std::nullopt;
      if (lr.second % lg.second != 0) return std::nullopt;
      SparsePoly m = monomial(lr.second / lg.second, {}, quo.ring_);
      m.terms_[0].first = lr.first - lg.first;
      if (m.terms_[0].first.e.size() && !m.terms_[0].first.nonnegative())
        return std::nullopt;
      quo = quo + m;
      rem = rem - m * g;
    }
    return quo;
  }

  SparsePoly divide_scalar_exact(const BigInt& k) const {
    if (k == 0) throw error("division by zero scalar");
    SparsePoly r = *this;
    for (auto& t : r.terms_) {
      if (t.second % k != 0)
        throw non_exact_division("coefficient not divisible by scalar");
      t.second /= k;
    }
    return r;
  }

  BigInt content() const {
    BigInt g = 0;
    for (const auto& t : terms_) g = boost::multiprecision::gcd(g, t.second);
    return g;
  }

  /* Adams substitution v -> v^n on every variable simultaneously. */
  SparsePoly adams(long long n) const {
    if (n < 1) throw error("adams exponent must be positive");
    SparsePoly r(ring_);
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.first = t.first.scaled(Frac(n));
    r.resort();
    return r;
  }

  /* v -> v^(1/root) on every variable; denominators capped at prime^max_depth. */
  SparsePoly adams_root(long long root, int max_depth) const {
    if (root < 1) throw error("adams_root: bad root");
    auto [p, k] = detail::den_prime_power(root);
    if (ring_.prime && p && ring_.prime != p)
      throw depth_exceeded("root prime " + std::to_string(p) +
                           " incompatible with ring prime " +
                           std::to_string(ring_.prime));
    SparsePoly r(ring_);
    if (p) r.ring_.prime = p;
    r.terms_ = terms_;
    int seen = 0;
    for (auto& t : r.terms_) {
      t.first = t.first.scaled(Frac(1, root));
      for (const auto& pe : t.first.e) {
        auto [dp, dk] = detail::den_prime_power(pe.second.den);
        if (dp && r.ring_.prime && dp != r.ring_.prime)
          throw depth_exceeded("exponent denominator prime mismatch");
        seen = std::max(seen, dk);
      }
    }
    if (seen > max_depth)
      throw depth_exceeded("exponent depth " + std::to_string(seen) +
                           " exceeds cap " + std::to_string(max_depth));
    r.ring_.depth = std::max(r.ring_.depth, seen);
    r.resort();
    return r;
  }

  /* Substitute var -> var^n, leaving other variables alone. */
  SparsePoly var_power(int var, long long n) const {
    SparsePoly r(ring_);
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.first.set(var, t.first.get(var) * Frac(n));
    r.resort();
    return r;
  }

  /* Substitute an integer value for a variable (integral exponents only). */
  SparsePoly evaluate(int var, const BigInt& v) const {
    SparsePoly r(ring_);
    std::map<ExponentVec, BigInt, TermLess> acc;
    for (const auto& t : terms_) {
      Frac e = t.first.get(var);
      if (!e.is_integer() || e.num < 0)
        throw error("evaluate: non-integral exponent");
      ExponentVec ev = t.first;
      ev.set(var, Frac(0));
      acc[ev] += t.second * big_pow(v, static_cast<unsigned>(e.num));
    }
    for (auto& kv : acc)
      if (kv.second != 0) r.terms_.push_back({kv.first, std::move(kv.second)});
    return r;
  }

  BigInt evaluate_all_ones() const {
    BigInt s = 0;
    for (const auto& t : terms_) s += t.second;
    return s;
  }

  template <class F>
  SparsePoly map_coeffs(F&& f) const {
    SparsePoly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      BigInt c = f(t.second);
      if (c != 0) r.terms_.push_back({t.first, std::move(c)});
    }
    return r;
  }

  Frac degree_in(int var) const {
    Frac d(-1);
    for (const auto& t : terms_) d = std::max(d, t.first.get(var));
    return d;
  }

  SparsePoly coeff_of(int var, Frac e) const {
    SparsePoly r(ring_);
    for (const auto& t : terms_)
      if (t.first.get(var) == e) {
        ExponentVec ev = t.first;
        ev.set(var, Frac(0));
        r.terms_.push_back({std::move(ev), t.second});
      }
    r.resort();
    return r;
  }

  /* Rename variable a to variable b (b must not occur). */
  SparsePoly rename(int a, int b) const {
    SparsePoly r(ring_);
    r.ring_.nvars = std::max(r.ring_.nvars, b);
    r.terms_ = terms_;
    for (auto& t : r.terms_) {
      Frac e = t.first.get(a);
      if (e.num == 0) continue;
      if (t.first.get(b).num != 0) throw error("rename: target occupied");
      t.first.set(a, Frac(0));
      t.first.set(b, e);
    }
    r.resort();
    return r;
  }

  std::string str() const;  // canonical literal (literal.hpp)

 private:
  void resort() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) {
                return cmp_gradedlex(a.first, b.first) < 0;
              });
    // merge equal keys (renames/evals may collide)
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : out)
      if (t.second != 0) terms_.push_back(std::move(t));
  }

  Ring ring_;
  std::vector<Term> terms_;
};

}  // namespace qlam
