#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qlam {

using BigInt = boost::multiprecision::cpp_int;

struct error : std::runtime_error {
  explicit error(const std::string& m) : std::runtime_error(m) {}
};
struct not_a_unit : error {
  explicit not_a_unit(const std::string& m) : error(m) {}
};
struct non_exact_division : error {
  explicit non_exact_division(const std::string& m) : error(m) {}
};
struct depth_exceeded : error {
  explicit depth_exceeded(const std::string& m) : error(m) {}
};
struct parse_error : error {
  explicit parse_error(const std::string& m) : error(m) {}
};

inline BigInt big_pow(BigInt b, unsigned e) {
  BigInt r = 1;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline long long ll_pow(long long b, unsigned e) {
  long long r = 1;
  while (e--) r *= b;
  return r;
}

// p-adic valuation; v==0 is reported as -1 (infinite)
inline int padic_val(BigInt v, const BigInt& p) {
  if (v == 0) return -1;
  int k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

/* Exact rational with small components; exponents only, never coefficients. */
struct Frac {
  long long num{0};
  long long den{1};

  Frac() = default;
  Frac(long long n) : num(n), den(1) {}  // NOLINT: implicit by design
  Frac(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw error("Frac: zero denominator");
    if (den < 0) {
      den = -den;
      num = -num;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  bool is_integer() const { return den == 1; }
  friend Frac operator+(Frac a, Frac b) {
    return Frac(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Frac operator-(Frac a, Frac b) {
    return Frac(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Frac operator*(Frac a, Frac b) { return Frac(a.num * b.num, a.den * b.den); }
  friend Frac operator/(Frac a, Frac b) {
    if (b.num == 0) throw error("Frac: division by zero");
    return Frac(a.num * b.den, a.den * b.num);
  }
  Frac operator-() const { return Frac(-num, den); }
  friend bool operator==(const Frac& a, const Frac& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }
  friend bool operator<(const Frac& a, const Frac& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Frac& a, const Frac& b) { return a < b || a == b; }
  friend bool operator>(const Frac& a, const Frac& b) { return b < a; }
  friend bool operator>=(const Frac& a, const Frac& b) { return b <= a; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace qlam
