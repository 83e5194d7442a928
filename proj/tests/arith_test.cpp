#include "padicdm/arith.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace padicdm {
namespace {

TEST(Prime, RejectsComposites) {
  EXPECT_NO_THROW(Prime(2));
  EXPECT_NO_THROW(Prime(97));
  EXPECT_THROW(Prime(1), InvalidInput);
  EXPECT_THROW(Prime(9), InvalidInput);
  EXPECT_THROW(Prime(-3), InvalidInput);
}

TEST(Vp, Examples) {
  EXPECT_TRUE(vp(Rational(0), 2).is_bottom());
  EXPECT_EQ(vp(Rational(12), 2), LogMagnitude(-2));
  EXPECT_EQ(vp(make_rational(5, 6), 3), LogMagnitude(1));
  EXPECT_EQ(vp(make_rational(-8, 7), 2), LogMagnitude(-3));
}

TEST(LogPi, Values) {
  EXPECT_EQ(log_pi(Prime(2)), Rational(-1));
  EXPECT_EQ(log_pi(Prime(3)), make_rational(-1, 2));
  EXPECT_EQ(log_pi(Prime(5)), make_rational(-1, 4));
}

TEST(LogMagnitude, BottomAlgebra) {
  auto b = LogMagnitude::bottom();
  LogMagnitude x(make_rational(3, 2));
  EXPECT_TRUE((b + x).is_bottom());
  EXPECT_TRUE((x + b).is_bottom());
  EXPECT_EQ(max(b, x), x);
  EXPECT_EQ(max(x, b), x);
  EXPECT_TRUE(b < x);
  EXPECT_FALSE(x < b);
  EXPECT_EQ(b, LogMagnitude::bottom());
  EXPECT_EQ(x + LogMagnitude(0), x);
  EXPECT_EQ(b.to_double(), -std::numeric_limits<double>::infinity());
  EXPECT_THROW((void)b.value(), DomainError);
}

TEST(LogMagnitude, MulIsCommutativeAndAssociative) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    LogMagnitude a(testing::random_rational(rng, 50));
    LogMagnitude b(testing::random_rational(rng, 50));
    LogMagnitude c = (t % 5 == 0) ? LogMagnitude::bottom() : LogMagnitude(testing::random_rational(rng, 50));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
  }
}

TEST(Vp, UltrametricSoundness) {
  std::mt19937_64 rng(11);
  for (long p : {2L, 3L, 5L}) {
    for (int t = 0; t < 500; ++t) {
      Rational a = testing::random_rational(rng, 1000);
      Rational b = testing::random_rational(rng, 1000);
      EXPECT_EQ(vp(a * b, p), vp(a, p) + vp(b, p));
      LogMagnitude s = vp(a + b, p);
      EXPECT_LE(s, max(vp(a, p), vp(b, p)));
      if (vp(a, p) != vp(b, p)) {
        EXPECT_EQ(s, max(vp(a, p), vp(b, p)));
      }
    }
  }
}

TEST(LogFactorial, MatchesDirectValuation) {
  for (long p : {2L, 3L, 5L, 7L}) {
    for (unsigned long n = 0; n <= 200; ++n) {
      EXPECT_EQ(log_factorial(n, p), Rational(-testing::factorial_valuation_direct(n, p))) << "p=" << p << " n=" << n;
    }
  }
}

TEST(Interval, RejectsDegenerate) {
  EXPECT_THROW(Interval(Rational(1), Rational(1)), InvalidInput);
  EXPECT_THROW(Interval(Rational(2), Rational(1)), InvalidInput);
  Interval I(Rational(-1), Rational(2));
  EXPECT_TRUE(I.contains(Rational(0)));
  EXPECT_FALSE(I.contains(Rational(2)));
  EXPECT_TRUE(I.contains_closed(Rational(2)));
  EXPECT_EQ(I.grid_point(0, 2), Rational(0));
  EXPECT_EQ(I.grid_point(1, 2), Rational(1));
}

}  // namespace
}  // namespace padicdm
