#pragma once

// Differential modules dX/dx = G X on an annulus, the Taylor recursion at a
// generic point, and the exact transformations between modules.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padicdm/arith.hpp"
#include "padicdm/laurent.hpp"
#include "padicdm/matrix.hpp"
#include "padicdm/newton.hpp"

namespace padicdm {

using PolyMatrix = Matrix<IntLaurent>;

class DiffModule {
 public:
  // Validates that G is square and every entry is pole-free on I.
  DiffModule(Prime p, RationalFunctionMatrix G, Interval I) : p_(p), g_(std::move(G)), interval_(std::move(I)) {
    check_shape();
    if (!pole_free()) throw InvalidInput("matrix has a pole on the annulus " + describe_interval());
  }

  // No pole check; used for transformed modules whose status is reported.
  static DiffModule unchecked(Prime p, RationalFunctionMatrix G, Interval I) {
    return DiffModule(p, std::move(G), std::move(I), Unchecked{});
  }

  const Prime& prime() const noexcept { return p_; }
  std::size_t rank() const noexcept { return g_.rows(); }
  const RationalFunctionMatrix& matrix() const noexcept { return g_; }
  const Interval& interval() const noexcept { return interval_; }

  bool pole_free() const {
    for (const auto& f : g_.entries())
      if (!pole_free_on(f, interval_, p_)) return false;
    return true;
  }

  DiffModule with_interval(Interval I) const { return DiffModule(p_, g_, std::move(I)); }

  std::string describe_interval() const { return "(" + interval_.lo.get_str() + ", " + interval_.hi.get_str() + ")"; }

 private:
  struct Unchecked {};
  DiffModule(Prime p, RationalFunctionMatrix G, Interval I, Unchecked)
      : p_(p), g_(std::move(G)), interval_(std::move(I)) {
    check_shape();
  }

  void check_shape() const {
    if (g_.rows() == 0 || !g_.is_square()) throw InvalidInput("module matrix must be square and nonempty");
  }

  Prime p_;
  RationalFunctionMatrix g_;
  Interval interval_;
};

// H[G] = H G H^-1 + dH H^-1.
inline RationalFunctionMatrix gauge_action(const RationalFunctionMatrix& G, const RationalFunctionMatrix& H) {
  if (!H.is_square() || H.rows() != G.rows()) throw InvalidGauge("gauge matrix must be square of the module's rank");
  auto Hinv = inverse(H);
  if (!Hinv) throw InvalidGauge("gauge matrix is singular");
  return reduced(H * G * *Hinv + derivative(H) * *Hinv);
}

struct GaugeResult {
  DiffModule module;
  bool pole_free;  // entries of H[G] may acquire poles on the annulus
};

inline GaugeResult gauge_transform(const DiffModule& M, const RationalFunctionMatrix& H) {
  auto out = DiffModule::unchecked(M.prime(), gauge_action(M.matrix(), H), M.interval());
  bool ok = out.pole_free();
  return {std::move(out), ok};
}

// G = P / Q with integer Laurent polynomials.
struct CommonDenominatorForm {
  PolyMatrix numerator;
  IntLaurent denominator;
};

inline CommonDenominatorForm common_denominator(const RationalFunctionMatrix& G) {
  const std::size_t n = G.rows();
  Matrix<RationalFunction> red = reduced(G);
  LaurentPoly q(1);
  for (const auto& f : red.entries()) {
    if (f.is_zero()) continue;
    LaurentPoly g = poly_gcd(q, f.den());
    q = poly_divmod(q * f.den(), g).first;
  }
  Matrix<LaurentPoly> num(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& f = red(i, j);
      if (f.is_zero()) continue;
      num(i, j) = f.num() * poly_divmod(q, f.den()).first;
    }
  auto [qint, qscale] = integer_part(q);
  const Rational inv_scale = 1 / qscale;
  const auto unscaled = num.map([&](const LaurentPoly& e) { return e * inv_scale; });
  Integer lcm_den = 1;
  for (const auto& f : unscaled.entries()) {
    f.for_each_term([&](long, const Rational& c) { mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t()); });
  }
  PolyMatrix P(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      LaurentPoly scaled = unscaled(i, j) * Rational(lcm_den);
      std::vector<Integer> ints;
      for (const auto& c : scaled.dense()) ints.push_back(c.get_num());
      P(i, j) = IntLaurent::from_dense(scaled.low(), std::move(ints));
    }
  std::vector<Integer> qs;
  for (const auto& c : qint.dense()) qs.push_back(c * lcm_den);
  return {std::move(P), IntLaurent::from_dense(qint.low(), std::move(qs))};
}

struct RecursionOptions {
  bool keep_numerators = false;
  // Guard on the total coefficient size of one P_n, in bits.
  std::size_t max_bits = std::size_t{1} << 31;
};

inline constexpr std::size_t kDefaultDepth = 256;

// G_n = P_n / Q^n for 0 <= n <= depth. Only the valuation profile of each
// P_n is retained unless keep_numerators is set.
class RecursionState {
 public:
  RecursionState(Prime p, IntLaurent q, std::vector<NormProfile> profiles, std::vector<PolyMatrix> numerators)
      : p_(p),
        q_(std::move(q)),
        q_profile_(q_.valuation_points(p)),
        profiles_(std::move(profiles)),
        numerators_(std::move(numerators)) {}

  const Prime& prime() const noexcept { return p_; }
  std::size_t depth() const noexcept { return profiles_.size() - 1; }
  const IntLaurent& denominator() const noexcept { return q_; }
  const NormProfile& profile(std::size_t n) const { return profiles_.at(n); }
  bool has_numerators() const noexcept { return !numerators_.empty(); }
  const PolyMatrix& numerator(std::size_t n) const { return numerators_.at(n); }

  // log_p ||G_n||_rho.
  LogMagnitude matrix_norm(std::size_t n, const Rational& rho) const {
    LogMagnitude top = profiles_.at(n).evaluate(rho);
    if (top.is_bottom()) return top;
    return top - Rational(q_profile_.evaluate(rho).value() * static_cast<long>(n));
  }

  double matrix_norm(std::size_t n, double rho) const {
    return profiles_.at(n).evaluate(rho) - static_cast<double>(n) * q_profile_.evaluate(rho);
  }

 private:
  Prime p_;
  IntLaurent q_;
  NormProfile q_profile_;
  std::vector<NormProfile> profiles_;
  std::vector<PolyMatrix> numerators_;
};

inline NormProfile matrix_profile(const PolyMatrix& m, long p) {
  std::vector<ValuationPoint> pts;
  for (const auto& e : m.entries()) {
    auto v = e.valuation_points(p);
    pts.insert(pts.end(), v.begin(), v.end());
  }
  return NormProfile(std::move(pts));
}

// P_{n+1} = Q dP_n - n P_n dQ + P_n P, the recursion G_{n+1} = dG_n + G_n G
// multiplied through by Q^{n+1}.
inline RecursionState gn_sequence(const DiffModule& M, std::size_t depth, const RecursionOptions& opts = {}) {
  const long p = M.prime();
  auto [P, Q] = common_denominator(M.matrix());
  const IntLaurent dQ = Q.derivative();
  const std::size_t mu = M.rank();
  PolyMatrix Pn = PolyMatrix::identity(mu);
  std::vector<NormProfile> profiles;
  std::vector<PolyMatrix> kept;
  profiles.reserve(depth + 1);
  profiles.push_back(matrix_profile(Pn, p));
  if (opts.keep_numerators) kept.push_back(Pn);
  for (std::size_t n = 0; n < depth; ++n) {
    if (Pn.is_zero()) {
      profiles.emplace_back();
      if (opts.keep_numerators) kept.push_back(Pn);
      continue;
    }
    PolyMatrix next = Pn * P;
    const Integer nn(static_cast<unsigned long>(n));
    std::size_t bits = 0;
    for (std::size_t i = 0; i < mu; ++i)
      for (std::size_t j = 0; j < mu; ++j) {
        const IntLaurent& e = Pn(i, j);
        if (e.is_zero()) continue;
        IntLaurent term = Q * e.derivative();
        if (n > 0 && !dQ.is_zero()) term -= dQ * e * nn;
        next(i, j) += term;
        bits += next(i, j).bit_size();
      }
    if (bits > opts.max_bits) {
      throw BudgetExceeded("coefficient growth exceeded the memory guard at n = " + std::to_string(n + 1) + " (" +
                           std::to_string(bits) + " bits)");
    }
    Pn = std::move(next);
    profiles.push_back(matrix_profile(Pn, p));
    if (opts.keep_numerators) kept.push_back(Pn);
  }
  return RecursionState(M.prime(), std::move(Q), std::move(profiles), std::move(kept));
}

enum class Normalization { factorial, raw };

// entries[n] = log_p ||G_n / n!||_rho (or ||G_n||_rho for raw).
struct NormSequence {
  Rational rho;
  std::vector<LogMagnitude> entries;
};

inline void check_closure(const DiffModule& M, const Rational& rho) {
  if (!M.interval().contains_closed(rho))
    throw DomainError("log-radius " + rho.get_str() + " outside the closure of " + M.describe_interval());
}

inline NormSequence norm_sequence(const DiffModule& M, const RecursionState& state, const Rational& rho,
                                  Normalization norm = Normalization::factorial) {
  check_closure(M, rho);
  NormSequence out{rho, {}};
  out.entries.reserve(state.depth() + 1);
  const long p = M.prime();
  for (std::size_t n = 0; n <= state.depth(); ++n) {
    LogMagnitude v = state.matrix_norm(n, rho);
    if (norm == Normalization::factorial) v = v - log_factorial(n, p);
    out.entries.push_back(std::move(v));
  }
  return out;
}

inline NormSequence norm_sequence(const DiffModule& M, const Rational& rho, std::size_t depth,
                                  Normalization norm = Normalization::factorial) {
  check_closure(M, rho);
  return norm_sequence(M, gn_sequence(M, depth), rho, norm);
}

// Float evaluation of the same sequence; -inf marks zero matrices.
inline std::vector<double> norm_sequence_float(const DiffModule& M, const RecursionState& state, double rho,
                                               Normalization norm = Normalization::factorial) {
  std::vector<double> out;
  out.reserve(state.depth() + 1);
  const long p = M.prime();
  for (std::size_t n = 0; n <= state.depth(); ++n) {
    double v = state.matrix_norm(n, rho);
    if (norm == Normalization::factorial) v -= log_factorial(n, p).get_d();
    out.push_back(v);
  }
  return out;
}

// F(z) -> p x^(p-1) F(x^p), applied h times; the annulus goes to its p-th
// root (rho -> rho / p) at each step.
inline DiffModule frobenius_pullback(const DiffModule& N, unsigned h) {
  if (h < 1) throw InvalidInput("pullback order must be at least 1");
  const long p = N.prime();
  RationalFunctionMatrix G = N.matrix();
  Interval I = N.interval();
  const RationalFunction factor(LaurentPoly::monomial(Rational(p), p - 1));
  for (unsigned step = 0; step < h; ++step) {
    G = G.map([&](const RationalFunction& f) { return (factor * f.substitute_power(p)).reduced(); });
    I = I.scaled(make_rational(1, p));
  }
  return DiffModule(N.prime(), std::move(G), std::move(I));
}

// Companion matrix of d^mu + q_1 d^(mu-1) + ... + q_mu: ones on the
// superdiagonal, last row (-q_mu, ..., -q_1).
inline RationalFunctionMatrix companion_matrix(std::span<const RationalFunction> q) {
  const std::size_t mu = q.size();
  if (mu == 0) throw InvalidInput("companion matrix needs at least one coefficient");
  RationalFunctionMatrix A(mu, mu);
  for (std::size_t i = 0; i + 1 < mu; ++i) A(i, i + 1) = RationalFunction(1);
  for (std::size_t j = 0; j < mu; ++j) A(mu - 1, j) = -q[mu - 1 - j];
  return A;
}

inline DiffModule companion_of(Prime p, std::span<const RationalFunction> q, Interval I) {
  return DiffModule(p, companion_matrix(q), std::move(I));
}

}  // namespace padicdm
