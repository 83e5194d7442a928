#pragma once

// Text form of rational functions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary | juxtaposed unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ['+' | '-'] integer | '(' ['+' | '-'] integer ')'
//   primary := number | variable | '(' expr ')'
//   number  := digits ['.' digits]
//
// Juxtaposition is multiplication ("2x", "3(x+1)"). Decimal literals are
// read exactly ("0.25" is 1/4).

#include <cctype>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "padicdm/laurent.hpp"

namespace padicdm {

namespace detail {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, std::string_view var) : s_(text), var_(var) {}

  RationalFunction parse() {
    RationalFunction f = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("cannot parse \"" + std::string(s_) + "\" at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  bool starts_primary() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == '.' ||
           s_.substr(pos_, var_.size()) == var_;
  }

  RationalFunction expr() {
    RationalFunction acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RationalFunction term() {
    RationalFunction acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        RationalFunction d = unary();
        if (d.is_zero()) fail("division by zero");
        acc = acc / d;
      } else if (starts_primary()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  RationalFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (!accept('^')) return base;
    bool paren = accept('(');
    long sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    long e = sign * std::stol(std::string(s_.substr(start, pos_ - start)));
    if (paren && !accept(')')) fail("expected ')'");
    return pow(base, e);
  }

  RationalFunction pow(const RationalFunction& b, long e) {
    if (e < 0) {
      if (b.is_zero()) fail("zero raised to a negative power");
      return pow(RationalFunction(b.den(), b.num()), -e);
    }
    RationalFunction r(1);
    RationalFunction base = b;
    for (; e > 0; e >>= 1) {
      if (e & 1) r = r * base;
      if (e > 1) base = base * base;
    }
    return r;
  }

  RationalFunction primary() {
    skip_ws();
    if (accept('(')) {
      RationalFunction f = expr();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) return number();
    if (!var_.empty() && s_.substr(pos_, var_.size()) == var_) {
      pos_ += var_.size();
      return RationalFunction(LaurentPoly::monomial(Rational(1), 1));
    }
    fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input");
  }

  RationalFunction number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string whole(s_.substr(start, pos_ - start));
    std::string frac;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      frac = std::string(s_.substr(fs, pos_ - fs));
    }
    if (whole.empty() && frac.empty()) fail("malformed number");
    Integer num(whole.empty() ? "0" : whole);
    Integer den(1);
    if (!frac.empty()) {
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      num = num * den + Integer(frac);
    }
    return RationalFunction(make_rational(num, den));
  }

  std::string_view s_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RationalFunction parse_rational_function(std::string_view text, std::string_view var = "x") {
  if (var.empty()) throw InvalidInput("variable name must not be empty");
  return detail::ExpressionParser(text, var).parse();
}

inline std::string to_string(const LaurentPoly& f, std::string_view var = "x") {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest power first reads naturally
  auto terms = f.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << var;
    if (e != 1) os << "^" << (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  }
  return os.str();
}

inline std::string to_string(const RationalFunction& f, std::string_view var = "x") {
  if (f.den() == LaurentPoly(1)) return to_string(f.num(), var);
  return "(" + to_string(f.num(), var) + ")/(" + to_string(f.den(), var) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& f) { return os << to_string(f); }
inline std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << to_string(f); }

}  // namespace padicdm
