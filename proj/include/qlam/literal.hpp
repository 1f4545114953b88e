#pragma once

#include <cctype>
#include <sstream>
#include <string>

#include "qlam/poly.hpp"

namespace qlam {

namespace detail {

inline void append_exponent(std::ostream& os, const Frac& e) {
  if (e == Frac(1)) return;
  if (e.is_integer())
    os << "^" << e.num;
  else
    os << "^(" << e.num << "/" << e.den << ")";
}

inline void append_term(std::ostream& os, const ExponentVec& ev,
                        const BigInt& mag) {
  bool printed = false;
  if (mag != 1 || ev.empty()) {
    os << mag;
    printed = true;
  }
  for (const auto& p : ev.e) {
    if (printed) os << "*";
    if (p.first == 0)
      os << "q";
    else
      os << "x" << p.first;
    append_exponent(os, p.second);
    printed = true;
  }
}

}  // namespace detail

inline std::string SparsePoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    BigInt mag = t.second;
    if (first) {
      if (mag < 0) {
        os << "-";
        mag = -mag;
      }
      first = false;
    } else {
      if (mag < 0) {
        os << " - ";
        mag = -mag;
      } else {
        os << " + ";
      }
    }
    detail::append_term(os, t.first, mag);
  }
  return os.str();
}

/* Recursive-descent parser for the polynomial literal grammar:
   poly   := ['-'] term (('+'|'-') term)*
   term   := factor ('*' factor)*
   factor := INT | var ['^' exp]
   var    := 'q' | 'x'DIGIT
   exp    := INT | '(' INT '/' INT ')'                                  */
class LiteralParser {
 public:
  explicit LiteralParser(const std::string& s) : s_(s) {}

  SparsePoly parse() {
    skip();
    if (eof()) throw parse_error("empty polynomial literal");
    SparsePoly acc;
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    acc = acc + parse_term(sign);
    skip();
    while (!eof()) {
      char c = peek();
      if (c == '+')
        sign = 1;
      else if (c == '-')
        sign = -1;
      else
        throw parse_error(err("expected '+' or '-'"));
      ++pos_;
      acc = acc + parse_term(sign);
      skip();
    }
    return acc;
  }

 private:
  SparsePoly parse_term(int sign) {
    BigInt coeff = sign;
    std::vector<std::pair<int, Frac>> vars;
    bool any = false;
    while (true) {
      skip();
      if (eof()) break;
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= parse_int();
        any = true;
      } else if (c == 'q' || c == 'x') {
        int var = parse_var();
        Frac e(1);
        skip();
        if (!eof() && peek() == '^') {
          ++pos_;
          e = parse_exponent();
        }
        vars.push_back({var, e});
        any = true;
      } else {
        throw parse_error(err("expected coefficient or variable"));
      }
      skip();
      if (!eof() && peek() == '*') {
        ++pos_;
        skip();
        if (eof()) throw parse_error("dangling '*'");
        continue;
      }
      break;
    }
    if (!any) throw parse_error(err("expected term"));
    return SparsePoly::monomial(coeff, vars);
  }

  int parse_var() {
    char c = s_[pos_++];
    if (c == 'q') return 0;
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw parse_error(err("expected digit after 'x'"));
    int id = s_[pos_++] - '0';
    if (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
      throw parse_error(err("variable index out of range"));
    if (id < 1) throw parse_error(err("variable index out of range"));
    return id;
  }

  Frac parse_exponent() {
    skip();
    if (eof()) throw parse_error("missing exponent");
    if (peek() == '(') {
      ++pos_;
      long long n = parse_ll();
      skip();
      if (eof() || peek() != '/') throw parse_error(err("expected '/'"));
      ++pos_;
      long long d = parse_ll();
      skip();
      if (eof() || peek() != ')') throw parse_error(err("expected ')'"));
      ++pos_;
      if (d == 0) throw parse_error("zero exponent denominator");
      return Frac(n, d);
    }
    return Frac(parse_ll());
  }

  BigInt parse_int() {
    skip();
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw parse_error(err("expected integer"));
    BigInt v = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
      v = v * 10 + (s_[pos_++] - '0');
    return v;
  }

  long long parse_ll() {
    skip();
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw parse_error(err("expected integer"));
    long long v = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
      v = v * 10 + (s_[pos_++] - '0');
    return v;
  }

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  std::string err(const std::string& what) const {
    return what + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"";
  }

  const std::string& s_;
  size_t pos_ = 0;
};

inline SparsePoly parse_poly(const std::string& s) {
  try {
    return LiteralParser(s).parse();
  } catch (const parse_error&) {
    throw;
  } catch (const error& e) {
    throw parse_error(e.what());
  }
}

}  // namespace qlam
