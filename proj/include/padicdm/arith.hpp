#pragma once

// Exact p-adic valuation arithmetic. Every absolute value in the library is
// carried as its base-p logarithm, an exact rational, so that all the
// piecewise-linear geometry in log coordinates stays exact.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include "padicdm/errors.hpp"

namespace padicdm {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw InvalidInput("zero denominator in rational literal");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidInput("zero denominator in rational literal");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

class Prime {
 public:
  explicit Prime(long p) : p_(p) {
    if (p < 2) throw InvalidInput("prime must be at least 2, got " + std::to_string(p));
    for (long d = 2; d * d <= p; ++d) {
      if (p % d == 0) throw InvalidInput(std::to_string(p) + " is not prime");
    }
  }

  long value() const noexcept { return p_; }
  operator long() const noexcept { return p_; }

  // log_p of Dwork's pi = p^(-1/(p-1)).
  Rational log_pi() const { return make_rational(-1, p_ - 1); }

  friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }

 private:
  long p_;
};

// v_p of a nonzero integer.
inline long valuation(const Integer& a, long p) {
  if (a == 0) throw DomainError("valuation of zero");
  if (p == 2) return static_cast<long>(mpz_scan1(a.get_mpz_t(), 0));
  Integer rest;
  Integer prime(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), prime.get_mpz_t()));
}

// v_p of a nonzero rational.
inline long valuation(const Rational& a, long p) {
  if (a == 0) throw DomainError("valuation of zero");
  return valuation(a.get_num(), p) - valuation(a.get_den(), p);
}

// Base-p logarithm of a p-adic absolute value: an exact rational, or bottom
// for the absolute value of zero. Bottom is below every finite value.
class LogMagnitude {
 public:
  LogMagnitude() = default;  // bottom
  LogMagnitude(Rational v) : value_(std::move(v)) {}  // NOLINT: implicit by design of the algebra
  LogMagnitude(long v) : value_(Rational(v)) {}       // NOLINT

  static LogMagnitude bottom() { return LogMagnitude(); }

  bool is_bottom() const noexcept { return !value_.has_value(); }

  const Rational& value() const {
    if (!value_) throw DomainError("bottom log-magnitude has no finite value");
    return *value_;
  }

  double to_double() const {
    return value_ ? value_->get_d() : -std::numeric_limits<double>::infinity();
  }

  // Multiplication of absolute values.
  friend LogMagnitude operator+(const LogMagnitude& a, const LogMagnitude& b) {
    if (a.is_bottom() || b.is_bottom()) return bottom();
    return LogMagnitude(Rational(*a.value_ + *b.value_));
  }
  // Division by a finite absolute value.
  friend LogMagnitude operator-(const LogMagnitude& a, const Rational& b) {
    if (a.is_bottom()) return bottom();
    return LogMagnitude(Rational(*a.value_ - b));
  }
  friend LogMagnitude operator+(const LogMagnitude& a, const Rational& b) {
    if (a.is_bottom()) return bottom();
    return LogMagnitude(Rational(*a.value_ + b));
  }

  // |a|^k for a positive rational exponent k.
  LogMagnitude pow(const Rational& k) const {
    if (k <= 0) throw DomainError("log-magnitude power needs a positive exponent");
    if (is_bottom()) return bottom();
    return LogMagnitude(Rational(*value_ * k));
  }

  friend bool operator==(const LogMagnitude& a, const LogMagnitude& b) {
    if (a.is_bottom() || b.is_bottom()) return a.is_bottom() && b.is_bottom();
    return *a.value_ == *b.value_;
  }
  friend bool operator!=(const LogMagnitude& a, const LogMagnitude& b) { return !(a == b); }
  friend bool operator<(const LogMagnitude& a, const LogMagnitude& b) {
    if (b.is_bottom()) return false;
    if (a.is_bottom()) return true;
    return *a.value_ < *b.value_;
  }
  friend bool operator<=(const LogMagnitude& a, const LogMagnitude& b) { return !(b < a); }
  friend bool operator>(const LogMagnitude& a, const LogMagnitude& b) { return b < a; }
  friend bool operator>=(const LogMagnitude& a, const LogMagnitude& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const LogMagnitude& a) {
    return a.is_bottom() ? os << "bottom" : os << a.value_->get_str();
  }

  std::string str() const { return is_bottom() ? "bottom" : value_->get_str(); }

 private:
  std::optional<Rational> value_;
};

inline LogMagnitude max(const LogMagnitude& a, const LogMagnitude& b) { return a < b ? b : a; }

// log_p |a|_p.
inline LogMagnitude vp(const Rational& a, long p) {
  if (a == 0) return LogMagnitude::bottom();
  return LogMagnitude(-valuation(a, p));
}

inline Rational log_pi(const Prime& p) { return p.log_pi(); }

inline long digit_sum(std::uint64_t n, long p) {
  long s = 0;
  for (; n > 0; n /= static_cast<std::uint64_t>(p)) s += static_cast<long>(n % static_cast<std::uint64_t>(p));
  return s;
}

// log_p |n!|_p = -(n - s_p(n)) / (p - 1)   (Legendre).
inline Rational log_factorial(std::uint64_t n, long p) {
  return make_rational(-(static_cast<long>(n) - digit_sum(n, p)), p - 1);
}

// An open interval (lo, hi) of log-radii rho = log_p r.
struct Interval {
  Rational lo;
  Rational hi;

  Interval(Rational a, Rational b) : lo(std::move(a)), hi(std::move(b)) {
    if (!(lo < hi)) throw InvalidInput("interval must satisfy lo < hi, got (" + lo.get_str() + ", " + hi.get_str() + ")");
  }

  bool contains(const Rational& rho) const { return lo < rho && rho < hi; }
  bool contains_closed(const Rational& rho) const { return lo <= rho && rho <= hi; }
  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }

  // The i-th of n equispaced interior points, i in [0, n).
  Rational grid_point(std::size_t i, std::size_t n) const {
    return lo + (hi - lo) * Rational(static_cast<long>(i + 1), static_cast<long>(n + 1));
  }

  Interval scaled(const Rational& k) const {
    if (k <= 0) throw DomainError("interval scale must be positive");
    return Interval(lo * k, hi * k);
  }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

inline Rational rational_pow(long base, long e) {
  Integer b(base);
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? make_rational(Integer(1), r) : Rational(r);
}

}  // namespace padicdm
