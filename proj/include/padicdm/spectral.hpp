#pragma once

// Reduction of a module to a scalar operator d^mu + q_1 d^(mu-1) + ... + q_mu
// by a cyclic vector, the maximal root norm lambda(r) of the associated
// polynomial at the generic point, and the small-radius formula
// R = |pi| / lambda(r).

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "padicdm/diffmod.hpp"

namespace padicdm {

struct ScalarOperator {
  Prime p;
  std::vector<RationalFunction> q;  // q_1 ... q_mu, monic leading term implicit
  Interval interval;

  std::size_t order() const noexcept { return q.size(); }
};

struct CyclicReduction {
  ScalarOperator op;
  // G = gauge[A] for A the companion matrix of op, i.e.
  // gauge * A + d(gauge) = G * gauge.
  RationalFunctionMatrix gauge;
  // Rows v, D v, ..., D^(mu-1) v in the original basis; the inverse of gauge.
  RationalFunctionMatrix cyclic_basis;
  std::vector<RationalFunction> vector;  // coordinates of v
  // Open subintervals of I free of zeros and poles of the gauge, its
  // inverse and the q_i.
  std::vector<Interval> validity;
  std::size_t attempts = 0;
  std::uint64_t seed = 0;

  const Interval& largest_piece() const {
    const Interval* best = &validity.front();
    for (const auto& J : validity)
      if (J.width() > best->width()) best = &J;
    return *best;
  }
};

struct CyclicOptions {
  std::uint64_t seed = 1;
  std::size_t max_attempts = 64;
};

namespace detail {

inline std::vector<std::vector<RationalFunction>> cyclic_candidates(std::size_t mu, const CyclicOptions& opts) {
  std::vector<std::vector<RationalFunction>> out;
  auto unit = [&](std::size_t i) {
    std::vector<RationalFunction> v(mu);
    v[i] = RationalFunction(1);
    return v;
  };
  for (std::size_t i = 0; i < mu; ++i) out.push_back(unit(i));
  for (long k = 0; k <= 3; ++k)
    for (std::size_t j = 1; j < mu; ++j) {
      auto v = unit(0);
      v[j] = RationalFunction(LaurentPoly::monomial(Rational(1), k));
      out.push_back(v);
    }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<long> coef(-3, 3);
  while (out.size() < opts.max_attempts) {
    std::vector<RationalFunction> v(mu);
    for (auto& c : v) c = RationalFunction(LaurentPoly::from_dense(0, {Rational(coef(rng)), Rational(coef(rng)), Rational(coef(rng))}));
    out.push_back(std::move(v));
  }
  if (out.size() > opts.max_attempts) out.resize(opts.max_attempts);
  return out;
}

// Log-magnitudes of zeros of f (numerator roots) and poles, after reduction.
inline void collect_critical_points(const RationalFunction& f, long p, std::set<Rational>& out) {
  if (f.is_zero()) return;
  auto r = f.reduced();
  for (const auto& s : root_log_magnitudes(r.den(), p)) out.insert(s.slope);
}

inline void collect_zeros(const RationalFunction& f, long p, std::set<Rational>& out) {
  if (f.is_zero()) return;
  auto r = f.reduced();
  for (const auto& s : root_log_magnitudes(split_monomial(r.num()).second, p)) out.insert(s.slope);
}

inline std::vector<Interval> split_interval(const Interval& I, const std::set<Rational>& cuts) {
  std::vector<Interval> out;
  Rational lo = I.lo;
  for (const auto& c : cuts) {
    if (!I.contains(c)) continue;
    if (lo < c) out.emplace_back(lo, c);
    lo = c;
  }
  if (lo < I.hi) out.emplace_back(lo, I.hi);
  return out;
}

}  // namespace detail

// Searches v over, in order: the standard basis, e_1 + x^k e_j for
// 0 <= k <= 3, then seeded random small integer polynomial vectors, until
// v, Dv, ..., D^(mu-1)v are independent over Q(x).
inline CyclicReduction cyclic_vector(const DiffModule& M, const CyclicOptions& opts = {}) {
  const std::size_t mu = M.rank();
  const auto& G = M.matrix();
  const long p = M.prime();
  const auto candidates = detail::cyclic_candidates(mu, opts);
  std::size_t attempt = 0;
  for (const auto& c : candidates) {
    ++attempt;
    RationalFunctionMatrix K(mu, mu);
    std::vector<RationalFunction> row = c;
    for (std::size_t k = 0; k < mu; ++k) {
      for (std::size_t j = 0; j < mu; ++j) K(k, j) = row[j];
      // D(sum c_i e_i) = sum (c_i' + sum_k c_k G_ki) e_i
      std::vector<RationalFunction> next(mu);
      for (std::size_t j = 0; j < mu; ++j) {
        RationalFunction acc = row[j].derivative();
        for (std::size_t i = 0; i < mu; ++i)
          if (!row[i].is_zero() && !G(i, j).is_zero()) acc += row[i] * G(i, j);
        next[j] = acc.reduced();
      }
      row = std::move(next);
    }
    auto H = inverse(K);
    if (!H) continue;
    // row now holds D^mu v; express it in the basis rows of K.
    std::vector<RationalFunction> q(mu);
    for (std::size_t k = 0; k < mu; ++k) {
      RationalFunction w;
      for (std::size_t j = 0; j < mu; ++j)
        if (!row[j].is_zero() && !(*H)(j, k).is_zero()) w += row[j] * (*H)(j, k);
      q[mu - 1 - k] = (-w).reduced();
    }
    std::set<Rational> cuts;
    RationalFunction detK = determinant(K);
    detail::collect_zeros(detK, p, cuts);
    detail::collect_critical_points(detK, p, cuts);
    for (const auto& f : K.entries()) detail::collect_critical_points(f, p, cuts);
    for (const auto& f : H->entries()) detail::collect_critical_points(f, p, cuts);
    for (const auto& f : q) detail::collect_critical_points(f, p, cuts);
    auto pieces = detail::split_interval(M.interval(), cuts);
    return CyclicReduction{ScalarOperator{M.prime(), std::move(q), M.interval()}, std::move(*H), std::move(K), c,
                           std::move(pieces), attempt, opts.seed};
  }
  throw CyclicSearchFailed("no cyclic vector among " + std::to_string(attempt) + " candidates (seed " +
                           std::to_string(opts.seed) + ")");
}

inline DiffModule companion_module(const ScalarOperator& op, const Interval& I) { return companion_of(op.p, op.q, I); }

// log lambda(r) = max_i log|q_i(t_r)| / i: the largest root magnitude of
// lambda^mu + q_1 lambda^(mu-1) + ... + q_mu over the generic point.
inline LogMagnitude max_root_norm(const ScalarOperator& op, const Rational& rho) {
  LogMagnitude best = LogMagnitude::bottom();
  for (std::size_t i = 0; i < op.q.size(); ++i) {
    if (!pole_free_at(op.q[i], rho, op.p))
      throw DomainError("q_" + std::to_string(i + 1) + " has a pole at log-radius " + rho.get_str());
    best = max(best, gauss_norm(op.q[i], rho, op.p).pow(make_rational(1, static_cast<long>(i + 1))));
  }
  return best;
}

struct YoungRadius {
  // log |pi| - log lambda; empty when every q_i vanishes (lambda = 0).
  std::optional<Rational> log_radius;
  bool applicable = false;  // log R < rho + log pi
};

inline YoungRadius young_radius(const ScalarOperator& op, const Rational& rho) {
  LogMagnitude lambda = max_root_norm(op, rho);
  if (lambda.is_bottom()) return {std::nullopt, false};
  Rational value = op.p.log_pi() - lambda.value();
  const bool applicable = value < rho + op.p.log_pi();
  return {std::move(value), applicable};
}

}  // namespace padicdm
