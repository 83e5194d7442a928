#pragma once

// Laurent polynomials with exact coefficients, rational functions built from
// them, and their Gauss norms |f|_r = sup_n |a_n| r^n in log coordinates.

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "padicdm/arith.hpp"
#include "padicdm/newton.hpp"

namespace padicdm {

// A finite Laurent polynomial sum_n a_n x^n. Stored densely between the
// lowest and highest nonzero exponent; both ends are always nonzero, and the
// zero polynomial has no coefficients at all.
template <class C>
class Laurent {
 public:
  using coefficient_type = C;

  Laurent() = default;
  explicit Laurent(long c) : Laurent(C(c), 0) {}
  explicit Laurent(C c, long exponent = 0) : low_(exponent) {
    if (c != 0) coeffs_.push_back(std::move(c));
  }

  static Laurent monomial(C c, long exponent) { return Laurent(std::move(c), exponent); }

  static Laurent from_terms(const std::map<long, C>& terms) {
    Laurent f;
    if (terms.empty()) return f;
    f.low_ = terms.begin()->first;
    f.coeffs_.assign(static_cast<std::size_t>(terms.rbegin()->first - f.low_ + 1), C(0));
    for (const auto& [e, c] : terms) f.coeffs_[static_cast<std::size_t>(e - f.low_)] = c;
    f.trim();
    return f;
  }

  // Build from a dense coefficient vector starting at exponent `low`.
  static Laurent from_dense(long low, std::vector<C> coeffs) {
    Laurent f;
    f.low_ = low;
    f.coeffs_ = std::move(coeffs);
    f.trim();
    return f;
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  long low() const noexcept { return low_; }
  long high() const noexcept { return low_ + static_cast<long>(coeffs_.size()) - 1; }
  std::size_t span() const noexcept { return coeffs_.size(); }
  const std::vector<C>& dense() const noexcept { return coeffs_; }

  C coeff(long e) const {
    if (is_zero() || e < low_ || e > high()) return C(0);
    return coeffs_[static_cast<std::size_t>(e - low_)];
  }
  const C& leading() const { return coeffs_.back(); }
  const C& trailing() const { return coeffs_.front(); }

  template <class F>
  void for_each_term(F&& f) const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) f(low_ + static_cast<long>(i), coeffs_[i]);
    }
  }

  std::map<long, C> terms() const {
    std::map<long, C> out;
    for_each_term([&](long e, const C& c) { out.emplace(e, c); });
    return out;
  }

  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& c : coeffs_) n += (c != 0);
    return n;
  }

  Laurent& operator+=(const Laurent& g) { return accumulate(g, 1); }
  Laurent& operator-=(const Laurent& g) { return accumulate(g, -1); }

  Laurent& operator*=(const C& s) {
    if (s == 0) {
      coeffs_.clear();
      low_ = 0;
      return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(Laurent a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Laurent operator*(Laurent a, const C& s) { return a *= s; }
  friend Laurent operator*(const C& s, Laurent a) { return a *= s; }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent out;
    if (a.is_zero() || b.is_zero()) return out;
    out.low_ = a.low_ + b.low_;
    out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (b.coeffs_[j] == 0) continue;
        out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    out.trim();
    return out;
  }
  Laurent& operator*=(const Laurent& g) { return *this = *this * g; }

  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.coeffs_.size() == b.coeffs_.size() && (a.is_zero() || a.low_ == b.low_) && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  // d/dx, termwise a_n x^n -> n a_n x^(n-1).
  Laurent derivative() const {
    Laurent out;
    if (is_zero()) return out;
    out.low_ = low_ - 1;
    out.coeffs_.resize(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i] * (low_ + static_cast<long>(i));
    out.trim();
    return out;
  }

  // f(x^k), k >= 1.
  Laurent substitute_power(long k) const {
    if (k < 1) throw DomainError("substitute_power needs k >= 1");
    Laurent out;
    if (is_zero()) return out;
    out.low_ = low_ * k;
    out.coeffs_.assign((coeffs_.size() - 1) * static_cast<std::size_t>(k) + 1, C(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i * static_cast<std::size_t>(k)] = coeffs_[i];
    return out;
  }

  // x^k f(x).
  Laurent shifted(long k) const {
    Laurent out = *this;
    if (!out.is_zero()) out.low_ += k;
    return out;
  }

  // Points (n, v_p(a_n)) for nonzero a_n.
  std::vector<ValuationPoint> valuation_points(long p) const {
    std::vector<ValuationPoint> pts;
    pts.reserve(coeffs_.size());
    for_each_term([&](long e, const C& c) { pts.push_back({e, valuation(c, p)}); });
    return pts;
  }

  // Total size of the coefficients in bits; feeds the memory guard.
  std::size_t bit_size() const {
    std::size_t bits = 0;
    for (const auto& c : coeffs_) bits += coefficient_bits(c);
    return bits;
  }

 private:
  static std::size_t coefficient_bits(const Integer& c) { return mpz_sizeinbase(c.get_mpz_t(), 2); }
  static std::size_t coefficient_bits(const Rational& c) {
    return mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2);
  }

  Laurent& accumulate(const Laurent& g, int sign) {
    if (g.is_zero()) return *this;
    if (is_zero()) {
      *this = g;
      if (sign < 0)
        for (auto& c : coeffs_) c = -c;
      return *this;
    }
    long lo = std::min(low_, g.low_);
    long hi = std::max(high(), g.high());
    if (lo < low_) {
      coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - lo), C(0));
      low_ = lo;
    }
    coeffs_.resize(static_cast<std::size_t>(hi - low_ + 1), C(0));
    for (std::size_t j = 0; j < g.coeffs_.size(); ++j) {
      auto& c = coeffs_[static_cast<std::size_t>(g.low_ - low_) + j];
      if (sign > 0) {
        c += g.coeffs_[j];
      } else {
        c -= g.coeffs_[j];
      }
    }
    trim();
    return *this;
  }

  void trim() {
    std::size_t end = coeffs_.size();
    while (end > 0 && coeffs_[end - 1] == 0) --end;
    coeffs_.resize(end);
    std::size_t start = 0;
    while (start < coeffs_.size() && coeffs_[start] == 0) ++start;
    if (start > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(start));
      low_ += static_cast<long>(start);
    }
    if (coeffs_.empty()) low_ = 0;
  }

  long low_ = 0;
  std::vector<C> coeffs_;
};

using LaurentPoly = Laurent<Rational>;
using IntLaurent = Laurent<Integer>;

// log_p |f|_r at rho = log_p r: max_n (-v_p(a_n) + n rho).
template <class C>
LogMagnitude gauss_norm(const Laurent<C>& f, const Rational& rho, long p) {
  return NormProfile(f.valuation_points(p)).evaluate(rho);
}

// Content-free integer version of a rational Laurent polynomial: returns
// (g, s) with f = s * g, g having coprime integer coefficients.
inline std::pair<IntLaurent, Rational> integer_part(const LaurentPoly& f) {
  if (f.is_zero()) return {IntLaurent(), Rational(1)};
  Integer den = 1;
  f.for_each_term([&](long, const Rational& c) { mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t()); });
  Integer content = 0;
  std::vector<Integer> ints;
  ints.reserve(f.span());
  for (const auto& c : f.dense()) {
    Integer v = c.get_num() * (den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  for (auto& v : ints) v /= content;
  return {IntLaurent::from_dense(f.low(), std::move(ints)), make_rational(content, den)};
}

inline LaurentPoly to_rational(const IntLaurent& f) {
  std::vector<Rational> cs;
  cs.reserve(f.span());
  for (const auto& c : f.dense()) cs.emplace_back(c);
  return LaurentPoly::from_dense(f.low(), std::move(cs));
}

// Polynomial division in Q[x] for Laurent polynomials whose exponents are
// all >= 0. Returns (quotient, remainder).
inline std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw InvalidInput("polynomial division by zero");
  if ((!a.is_zero() && a.low() < 0) || b.low() < 0) throw DomainError("poly_divmod needs nonnegative exponents");
  LaurentPoly rem = a;
  std::map<long, Rational> quot;
  const long db = b.high();
  const Rational& lb = b.leading();
  while (!rem.is_zero() && rem.high() >= db) {
    long shift = rem.high() - db;
    Rational c = rem.leading() / lb;
    quot[shift] = c;
    rem -= (b * c).shifted(shift);
  }
  return {LaurentPoly::from_terms(quot), rem};
}

namespace detail {

// Dense integer coefficients, index = exponent, content removed.
inline std::vector<Integer> primitive_dense(const LaurentPoly& f) {
  auto ip = integer_part(f).first;
  std::vector<Integer> out(static_cast<std::size_t>(ip.low()), Integer(0));
  for (const auto& c : ip.dense()) out.push_back(c);
  return out;
}

inline void make_primitive(std::vector<Integer>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  Integer g = 0;
  for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Pseudo-remainder of a by b.
inline std::vector<Integer> pseudo_remainder(std::vector<Integer> a, const std::vector<Integer>& b) {
  const std::size_t db = b.size() - 1;
  const Integer& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    const Integer la = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c *= lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

}  // namespace detail

// Monic gcd in Q[x] (nonnegative exponents), by primitive remainder
// sequences over Z.
inline LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if ((!a.is_zero() && a.low() < 0) || (!b.is_zero() && b.low() < 0))
    throw DomainError("poly_gcd needs nonnegative exponents");
  if (a.is_zero() && b.is_zero()) return LaurentPoly();
  auto A = a.is_zero() ? std::vector<Integer>{} : detail::primitive_dense(a);
  auto B = b.is_zero() ? std::vector<Integer>{} : detail::primitive_dense(b);
  if (A.size() < B.size()) std::swap(A, B);
  while (!B.empty()) {
    auto R = detail::pseudo_remainder(std::move(A), B);
    detail::make_primitive(R);
    A = std::move(B);
    B = std::move(R);
  }
  std::vector<Rational> cs;
  cs.reserve(A.size());
  for (const auto& c : A) cs.emplace_back(c, A.back());
  for (auto& c : cs) c.canonicalize();
  return LaurentPoly::from_dense(0, std::move(cs));
}

// Split f = x^k * g with g(0) != 0.
inline std::pair<long, LaurentPoly> split_monomial(const LaurentPoly& f) {
  if (f.is_zero()) return {0, f};
  return {f.low(), f.shifted(-f.low())};
}

// A quotient num/den of Laurent polynomials. The representation is not
// reduced automatically; equality is decided by cross-multiplication.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  explicit RationalFunction(long c) : num_(c), den_(1) {}
  explicit RationalFunction(const Rational& c) : num_(c), den_(1) {}
  explicit RationalFunction(LaurentPoly num) : num_(std::move(num)), den_(1) {}
  RationalFunction(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw InvalidInput("rational function with zero denominator");
    if (num_.is_zero()) den_ = LaurentPoly(1);
  }

  const LaurentPoly& num() const noexcept { return num_; }
  const LaurentPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_laurent() const { return den_.term_count() == 1; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a) { return RationalFunction(-a.num_, a.den_); }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction();
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw InvalidInput("division by the zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction derivative() const {
    if (is_zero()) return {};
    if (den_.term_count() == 1) {
      // den is a monomial c x^k: (f / (c x^k))' = (f' - k f / x) / (c x^k)
      long k = den_.low();
      return RationalFunction(num_.derivative() - num_.shifted(-1) * Rational(k), den_);
    }
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  RationalFunction substitute_power(long k) const {
    return RationalFunction(num_.substitute_power(k), den_.substitute_power(k));
  }

  // Lowest terms: den is a monic polynomial with den(0) != 0, all powers of
  // x are carried by the numerator.
  RationalFunction reduced() const {
    if (is_zero()) return {};
    auto [kn, n] = split_monomial(num_);
    auto [kd, d] = split_monomial(den_);
    LaurentPoly g = poly_gcd(n, d);
    n = poly_divmod(n, g).first;
    d = poly_divmod(d, g).first;
    Rational lc = d.leading();
    Rational inv = 1 / lc;
    return RationalFunction((n * inv).shifted(kn - kd), d * inv);
  }

  LogMagnitude gauss_norm(const Rational& rho, long p) const {
    LogMagnitude n = padicdm::gauss_norm(num_, rho, p);
    if (n.is_bottom()) return n;
    return n - padicdm::gauss_norm(den_, rho, p).value();
  }

 private:
  LaurentPoly num_;
  LaurentPoly den_;
};

inline LogMagnitude gauss_norm(const RationalFunction& f, const Rational& rho, long p) {
  return f.gauss_norm(rho, p);
}

// Log-magnitudes of the nonzero roots of a polynomial (over an algebraically
// closed valued field), read off the Newton polygon. Multiplicities are the
// segment lengths. A factor x^k is ignored (roots at 0 have bottom magnitude).
inline std::vector<NewtonSegment> root_log_magnitudes(const LaurentPoly& f, long p) {
  if (f.is_zero()) throw InvalidInput("root magnitudes of the zero polynomial");
  return newton_segments(f.valuation_points(p));
}

// Log-magnitudes of the poles of f, after reduction.
inline std::vector<NewtonSegment> pole_log_magnitudes(const RationalFunction& f, long p) {
  if (f.is_zero()) return {};
  return root_log_magnitudes(f.reduced().den(), p);
}

// True iff f (taken in lowest terms) has no pole of log-magnitude in the
// open interval I.
inline bool pole_free_on(const RationalFunction& f, const Interval& I, long p) {
  for (const auto& s : pole_log_magnitudes(f, p)) {
    if (I.contains(s.slope)) return false;
  }
  return true;
}

inline bool pole_free_on_closed(const RationalFunction& f, const Interval& I, long p) {
  for (const auto& s : pole_log_magnitudes(f, p)) {
    if (I.contains_closed(s.slope)) return false;
  }
  return true;
}

inline bool pole_free_at(const RationalFunction& f, const Rational& rho, long p) {
  for (const auto& s : pole_log_magnitudes(f, p)) {
    if (s.slope == rho) return false;
  }
  return true;
}

// |f|_rho <= max(|f|_rho1, |f|_rho2) for rho1 <= rho <= rho2; always true for
// f without poles on [rho1, rho2] since the log norm is convex in rho.
inline bool interval_max_principle_check(const RationalFunction& f, const Rational& rho1, const Rational& rho,
                                         const Rational& rho2, long p) {
  if (!(rho1 <= rho && rho <= rho2)) throw InvalidInput("interval_max_principle_check needs rho1 <= rho <= rho2");
  return f.gauss_norm(rho, p) <= max(f.gauss_norm(rho1, p), f.gauss_norm(rho2, p));
}

}  // namespace padicdm
