#include "padicdm/laurent.hpp"

#include <gtest/gtest.h>

#include <random>

#include "padicdm/parse.hpp"
#include "test_support.hpp"

namespace padicdm {
namespace {

RationalFunction rf(const char* s) { return parse_rational_function(s); }
LaurentPoly lp(const char* s) {
  auto f = rf(s).reduced();
  EXPECT_EQ(f.den(), LaurentPoly(1));
  return f.num();
}

TEST(LaurentPoly, Arithmetic) {
  EXPECT_EQ(lp("x^-1 + 3*x^2").derivative(), lp("-x^-2 + 6*x"));
  EXPECT_EQ(lp("1 + 2*x") * lp("1 + 2*x"), lp("1 + 4*x + 4*x^2"));
  LaurentPoly zero = lp("x") + lp("-x");
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.term_count(), 0u);
  EXPECT_EQ(lp("x^2 + 1").substitute_power(3), lp("x^6 + 1"));
  EXPECT_EQ(lp("x").shifted(-3), lp("x^-2"));
}

TEST(LaurentPoly, NoStoredZerosAtTheEnds) {
  auto f = lp("x^5 + x^-2") - lp("x^5");
  EXPECT_EQ(f.low(), -2);
  EXPECT_EQ(f.high(), -2);
  EXPECT_EQ(f.span(), 1u);
}

TEST(GaussNorm, Examples) {
  EXPECT_EQ(gauss_norm(rf("2 + x"), Rational(0), 2), LogMagnitude(0));
  EXPECT_EQ(gauss_norm(rf("x^-1 + 4*x"), Rational(1), 2), LogMagnitude(-1));
  // numerator 1 + 4x + 4x^2 has norm max(0, -2, -2) = 0; 2 + x has norm 0
  EXPECT_EQ(gauss_norm(rf("(1+2*x)^2/(2+x)"), Rational(0), 2), LogMagnitude(0));
  EXPECT_TRUE(gauss_norm(rf("0"), Rational(0), 2).is_bottom());
}

TEST(GaussNorm, ZeroDenominatorRejected) {
  EXPECT_THROW(RationalFunction(lp("1"), LaurentPoly()), InvalidInput);
}

TEST(GaussNorm, AlgebraicProperties) {
  std::mt19937_64 rng(2024);
  for (long p : {2L, 3L, 5L}) {
    for (int t = 0; t < 150; ++t) {
      LaurentPoly f = testing::random_laurent(rng, 6, -4, 4, 200);
      LaurentPoly g = testing::random_laurent(rng, 6, -4, 4, 200);
      for (long r : {-2L, -1L, 0L, 1L, 2L}) {
        Rational rho = make_rational(r * 3 + t % 3, 3);
        LogMagnitude nf = gauss_norm(f, rho, p), ng = gauss_norm(g, rho, p);
        EXPECT_EQ(gauss_norm(f * g, rho, p), nf + ng);
        LogMagnitude ns = gauss_norm(f + g, rho, p);
        EXPECT_LE(ns, max(nf, ng));
        if (nf != ng) {
          EXPECT_EQ(ns, max(nf, ng));
        }
        EXPECT_LE(gauss_norm(f.derivative(), rho, p), nf - rho);
      }
      // convexity along a rational grid
      for (long r = -6; r <= 4; ++r) {
        Rational a = make_rational(r, 2), m = make_rational(r + 1, 2), b = make_rational(r + 2, 2);
        LogMagnitude na = gauss_norm(f, a, p), nm = gauss_norm(f, m, p), nb = gauss_norm(f, b, p);
        if (!nm.is_bottom()) {
          EXPECT_LE(nm.value() * 2, na.value() + nb.value());
        }
      }
    }
  }
}

TEST(GaussNorm, RationalFunctionIsMultiplicative) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    RationalFunction f = testing::random_rational_function(rng, 3, 30);
    RationalFunction g = testing::random_rational_function(rng, 3, 30);
    for (long r : {-1L, 0L, 2L}) {
      EXPECT_EQ(gauss_norm(f * g, Rational(r), 3), gauss_norm(f, Rational(r), 3) + gauss_norm(g, Rational(r), 3));
      if (!f.is_zero()) {
        EXPECT_EQ(gauss_norm(f.reduced(), Rational(r), 3), gauss_norm(f, Rational(r), 3));
      }
    }
  }
}

TEST(RationalFunction, EqualityIsRepresentationIndependent) {
  EXPECT_EQ(rf("(x^2 - 1)/(x - 1)"), rf("x + 1"));
  EXPECT_EQ(rf("2/(4*x)"), rf("1/(2*x)"));
  EXPECT_NE(rf("1/x"), rf("x"));
  auto r = rf("(x^2 - 1)/(2*x - 2)").reduced();
  EXPECT_EQ(r.den(), LaurentPoly(1));
  EXPECT_EQ(r.num(), lp("1/2*x + 1/2"));
}

TEST(RationalFunction, DerivativeQuotientRule) {
  EXPECT_EQ(rf("1/(x+1)").derivative(), rf("-1/(x+1)^2"));
  EXPECT_EQ(rf("3/(2*x^2)").derivative(), rf("-3/x^3"));
  EXPECT_EQ(rf("(x^2+1)/x").derivative(), rf("1 - 1/x^2"));
}

TEST(PoleFree, Examples) {
  Interval anywhere(Rational(-5), Rational(5));
  EXPECT_TRUE(pole_free_on(rf("1/x"), anywhere, 2));
  EXPECT_FALSE(pole_free_on(rf("1/(x-2)"), Interval(Rational(-2), Rational(0)), 2));
  EXPECT_TRUE(pole_free_on(rf("1/(x^2-6*x+8)"), Interval(make_rational(-3, 2), make_rational(-5, 4)), 2));
  // a cancelled factor is not a pole
  EXPECT_TRUE(pole_free_on(rf("(x-2)/(x-2)"), Interval(Rational(-2), Rational(0)), 2));
  // the open interval does not contain its endpoints
  EXPECT_TRUE(pole_free_on(rf("1/(x-2)"), Interval(Rational(-1), Rational(0)), 2));
}

// Planted roots c p^k: the Newton polygon must report exactly the
// log-magnitudes -k of the roots, with multiplicity.
TEST(PoleFree, NewtonPolygonMatchesPlantedRoots) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> kdist(-3, 3), cidx(0, 2), deg(1, 5);
  const long cs[] = {1, 3, 5};
  for (long p : {2L, 7L}) {
    for (int t = 0; t < 40; ++t) {
      LaurentPoly f(1);
      std::map<Rational, long> expected;
      for (long d = deg(rng); d > 0; --d) {
        long k = kdist(rng);
        Rational root = Rational(cs[cidx(rng)]) * rational_pow(p, k);
        f = f * LaurentPoly::from_terms({{0, -root}, {1, Rational(1)}});
        expected[vp(root, p).value()] += 1;
      }
      std::map<Rational, long> got;
      for (const auto& s : root_log_magnitudes(f, p)) got[s.slope] += s.length;
      EXPECT_EQ(got, expected);
    }
  }
}

TEST(IntervalMaxPrinciple, Examples) {
  EXPECT_TRUE(interval_max_principle_check(rf("x"), Rational(-3), Rational(1), Rational(2), 2));
  EXPECT_TRUE(interval_max_principle_check(rf("1 + x"), Rational(-1), Rational(0), Rational(1), 2));
  // norms at -2, -1, 0 are 1, 0, 0
  auto f = rf("(2+x)/x");
  EXPECT_EQ(gauss_norm(f, Rational(-2), 2), LogMagnitude(1));
  EXPECT_EQ(gauss_norm(f, Rational(-1), 2), LogMagnitude(0));
  EXPECT_EQ(gauss_norm(f, Rational(0), 2), LogMagnitude(0));
  EXPECT_TRUE(interval_max_principle_check(f, Rational(-2), Rational(-1), Rational(0), 2));
  EXPECT_THROW(interval_max_principle_check(f, Rational(0), Rational(-1), Rational(1), 2), InvalidInput);
}

TEST(IntervalMaxPrinciple, HoldsOnRandomPoleFreeFunctions) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    RationalFunction f = testing::random_rational_function(rng, 3, 40);
    Rational a = make_rational(static_cast<long>(rng() % 9) - 4, 2);
    Rational b = a + make_rational(static_cast<long>(rng() % 6) + 1, 2);
    if (!pole_free_on_closed(f, Interval(a, b), 3)) continue;
    ++checked;
    for (int k = 0; k <= 4; ++k) {
      Rational m = a + (b - a) * make_rational(k, 4);
      EXPECT_TRUE(interval_max_principle_check(f, a, m, b, 3));
    }
  }
  EXPECT_GT(checked, 50);
}

}  // namespace
}  // namespace padicdm
