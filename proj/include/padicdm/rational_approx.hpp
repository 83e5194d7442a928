#pragma once

// Best rational approximation with a bounded denominator, by continued
// fraction convergents and the final semiconvergent.

#include <cmath>

#include "padicdm/arith.hpp"

namespace padicdm {

inline Rational best_rational_approximation(const Rational& x, long max_denominator) {
  if (max_denominator < 1) throw InvalidInput("max_denominator must be positive");
  const Integer bound(max_denominator);
  if (x.get_den() <= bound) return x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = x.get_num(), d = x.get_den();
  for (;;) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    Integer q2 = q0 + a * q1;
    if (q2 > bound) break;
    Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Integer r = n - a * d;
    n = d;
    d = r;
  }
  Integer k;
  Integer slack = bound - q0;
  mpz_fdiv_q(k.get_mpz_t(), slack.get_mpz_t(), q1.get_mpz_t());
  Rational semi = make_rational(Integer(p0 + k * p1), Integer(q0 + k * q1));
  Rational conv = make_rational(p1, q1);
  return abs(conv - x) <= abs(semi - x) ? conv : semi;
}

inline Rational best_rational_approximation(double x, long max_denominator) {
  if (!std::isfinite(x)) throw InvalidInput("cannot approximate a non-finite value");
  return best_rational_approximation(Rational(x), max_denominator);
}

}  // namespace padicdm
