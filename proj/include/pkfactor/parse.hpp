#ifndef PKFACTOR_PARSE_HPP
#define PKFACTOR_PARSE_HPP

// Text and coefficient-list forms of polynomials.  Accepts ^, *, implicit
// products, parentheses, unary minus and arbitrarily large integer
// literals (folded into the modulus while scanning); whitespace is
// ignored.  Expressions may use x alone or x and y, y being the outer
// variable with x-polynomial coefficients.

#include <cctype>
#include <string>
#include <vector>

#include "pkfactor/ring.hpp"

namespace pkfactor {

struct parse_error : error {
  using error::error;
};

namespace detail {

// dense bivariate value: c[j] is the x-polynomial coefficient of y^j
struct XY {
  u128 modulus;
  std::vector<DensePoly> c;

  explicit XY(u128 m) : modulus(m) {}

  static XY constant(u128 m, u128 v) {
    XY r(m);
    r.c.push_back(DensePoly::constant(m, v));
    r.trim();
    return r;
  }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
};

inline XY xy_add(const XY& a, const XY& b) {
  XY r(a.modulus);
  r.c.resize(std::max(a.c.size(), b.c.size()), DensePoly(a.modulus));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    DensePoly lhs = i < a.c.size() ? a.c[i] : DensePoly(a.modulus);
    DensePoly rhs = i < b.c.size() ? b.c[i] : DensePoly(a.modulus);
    r.c[i] = add(lhs, rhs);
  }
  r.trim();
  return r;
}

inline XY xy_neg(const XY& a) {
  XY r(a.modulus);
  r.c.reserve(a.c.size());
  for (const auto& ci : a.c) r.c.push_back(neg(ci));
  return r;
}

inline XY xy_mul(const XY& a, const XY& b) {
  XY r(a.modulus);
  if (a.c.empty() || b.c.empty()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, DensePoly(a.modulus));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = add(r.c[i + j], mul(a.c[i], b.c[j]));
  r.trim();
  return r;
}

inline constexpr unsigned kMaxParseDegree = 512;

class PolyParser {
 public:
  PolyParser(const std::string& text, u128 modulus, bool allow_y)
      : s_(text), m_(modulus), allow_y_(allow_y) {}

  XY parse() {
    XY v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw parse_error("parse error at position " + std::to_string(pos_) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  XY expr() {
    XY acc(m_);
    bool negate = eat('-');
    acc = term();
    if (negate) acc = xy_neg(acc);
    while (true) {
      if (eat('+')) {
        acc = xy_add(acc, term());
      } else if (eat('-')) {
        acc = xy_add(acc, xy_neg(term()));
      } else {
        break;
      }
    }
    return acc;
  }

  XY term() {
    XY acc = power();
    while (true) {
      char c = peek();
      if (c == '*') {
        eat('*');
        acc = xy_mul(acc, power());
      } else if (c == '(' || c == 'x' || c == 'y' ||
                 std::isdigit(static_cast<unsigned char>(c))) {
        acc = xy_mul(acc, power());  // implicit product, e.g. "3x"
      } else {
        break;
      }
    }
    return acc;
  }

  XY power() {
    XY base = atom();
    if (eat('^')) {
      unsigned e = small_uint();
      XY acc = XY::constant(m_, 1);
      for (unsigned i = 0; i < e; ++i) {
        acc = xy_mul(acc, base);
        if (acc.c.size() > kMaxParseDegree) fail("degree too large");
      }
      return acc;
    }
    return base;
  }

  XY atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      XY v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 'x') {
      ++pos_;
      XY v(m_);
      v.c.push_back(DensePoly::x_power(m_, 1));
      v.trim();
      return v;
    }
    if (c == 'y') {
      if (!allow_y_) fail("variable y is not allowed here");
      ++pos_;
      XY v(m_);
      v.c.push_back(DensePoly(m_));
      v.c.push_back(DensePoly::constant(m_, 1));
      v.trim();
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return XY::constant(m_, big_literal());
    fail(std::string("unexpected character '") + c + "'");
  }

  // decimal literal folded modulo m while scanning, so any length works
  u128 big_literal() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected a number");
    u128 acc = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      acc = addmod(mulmod(acc, 10, m_), u128(s_[pos_] - '0') % m_, m_);
      ++pos_;
    }
    return acc;
  }

  unsigned small_uint() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected an exponent");
    unsigned long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + unsigned(s_[pos_] - '0');
      if (v > kMaxParseDegree) fail("exponent too large");
      ++pos_;
    }
    return unsigned(v);
  }

  const std::string& s_;
  u128 m_;
  bool allow_y_;
  std::size_t pos_ = 0;
};

inline std::vector<std::string> split_list(const std::string& body) {
  std::vector<std::string> items;
  std::string cur;
  for (char c : body) {
    if (c == ',') {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  items.push_back(cur);
  return items;
}

inline u128 parse_scalar(const std::string& text, u128 m) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool negate = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negate = text[i] == '-';
    ++i;
  }
  u128 acc = 0;
  bool any = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw parse_error("bad integer in coefficient list");
    acc = addmod(mulmod(acc, 10, m), u128(c - '0') % m, m);
    any = true;
  }
  if (!any) throw parse_error("empty coefficient in list");
  return negate ? submod(0, acc, m) : acc;
}

}  // namespace detail

// "x^3+12*x^2+3*x+36" or "[36,3,12,1]" (ascending) -> univariate in x.
inline DensePoly parse_poly(const std::string& text, u128 modulus) {
  std::size_t b = text.find_first_not_of(" \t");
  if (b != std::string::npos && text[b] == '[') {
    std::size_t e = text.rfind(']');
    if (e == std::string::npos || e < b) throw parse_error("unterminated coefficient list");
    DensePoly r(modulus);
    for (const auto& item : detail::split_list(text.substr(b + 1, e - b - 1)))
      r.coeffs.push_back(detail::parse_scalar(item, modulus));
    r.trim();
    return r;
  }
  detail::PolyParser parser(text, modulus, false);
  detail::XY v = parser.parse();
  if (v.c.empty()) return DensePoly(modulus);
  return v.c[0];
}

// Polynomial in y with x-polynomial coefficients; returns the y^i
// coefficients, ascending.
inline std::vector<DensePoly> parse_poly_in_y(const std::string& text, u128 modulus) {
  detail::PolyParser parser(text, modulus, true);
  detail::XY v = parser.parse();
  return std::move(v.c);
}

}  // namespace pkfactor

#endif  // PKFACTOR_PARSE_HPP
