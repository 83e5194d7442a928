#include "padicdm/diagnostics.hpp"

#include <gtest/gtest.h>

#include "padicdm/parse.hpp"

namespace padicdm {
namespace {

DiffModule scalar_module(long p, const char* g, Rational lo, Rational hi) {
  return DiffModule(Prime(p), RationalFunctionMatrix::from_rows({{parse_rational_function(g)}}),
                    Interval(std::move(lo), std::move(hi)));
}

long binary_digit_sum(std::size_t n) {
  long s = 0;
  for (; n; n >>= 1) s += static_cast<long>(n & 1);
  return s;
}

TEST(Classify, Thresholds) {
  EXPECT_EQ(classify(0, -0.5, 0.001, 0.02), Boundedness::bounded_decaying);
  EXPECT_EQ(classify(0, 0.01, 0.001, 0.02), Boundedness::bounded_plateau);
  EXPECT_EQ(classify(0, 0.5, 0.001, 0.02), Boundedness::suspected_unbounded);
  EXPECT_EQ(classify(0, 0.0, 0.05, 0.02), Boundedness::inconclusive);
  EXPECT_EQ(classify(2e6, 0.0, 0.0, 0.02), Boundedness::inconclusive);
}

// exp at p = 2, rho = 0, R = |pi| = 1/2: b_n = log_2 |1/n!| - n = -s_2(n).
TEST(Bounded, ExponentialIsExactlyMinusDigitSum) {
  auto M = scalar_module(2, "1", Rational(-1), Rational(1));
  auto state = gn_sequence(M, 512);
  auto rep = bounded_report(M, state, Rational(0), 512, Rational(-1));
  ASSERT_EQ(rep.b_exact.size(), 513u);
  for (std::size_t n = 0; n <= 512; ++n)
    EXPECT_EQ(rep.b_exact[n], LogMagnitude(Rational(-binary_digit_sum(n)))) << n;
  EXPECT_TRUE(is_bounded(rep.classification)) << to_string(rep.classification);
  EXPECT_EQ(rep.max_b, 0.0);
  EXPECT_EQ(rep.argmax, 0u);
}

TEST(Bounded, OverestimatedRadiusGrows) {
  auto M = scalar_module(2, "1", Rational(-1), Rational(1));
  auto state = gn_sequence(M, 256);
  auto rep = bounded_report(M, state, Rational(0), 256, -0.9);
  EXPECT_EQ(rep.classification, Boundedness::suspected_unbounded);
  // b_n = n/10 - s_2(n): the slope is 1/10 minus the least-squares slope of
  // the digit sum over the window [128, 256].
  double sx = 0, sy = 0, sxx = 0, sxy = 0, k = 0;
  for (std::size_t n = 128; n <= 256; ++n) {
    const double x = static_cast<double>(n), y = static_cast<double>(binary_digit_sum(n));
    sx += x, sy += y, sxx += x * x, sxy += x * y, k += 1;
  }
  const double digit_slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  EXPECT_NEAR(rep.tail_slope, 0.1 - digit_slope, 1e-9);
}

TEST(Bounded, SmallerRadiusDecays) {
  auto M = scalar_module(2, "1", Rational(-1), Rational(1));
  auto state = gn_sequence(M, 256);
  auto exact = bounded_report(M, state, Rational(0), 256, Rational(-1));
  auto smaller = bounded_report(M, state, Rational(0), 256, make_rational(-3, 2));
  EXPECT_EQ(smaller.classification, Boundedness::bounded_decaying);
  for (std::size_t n = 0; n <= 256; ++n) EXPECT_LE(smaller.b[n], exact.b[n]);
}

TEST(Bounded, Preconditions) {
  auto M = scalar_module(2, "1", Rational(-1), Rational(1));
  auto state = gn_sequence(M, 32);
  EXPECT_THROW(bounded_report(M, state, Rational(0), 32, Rational(1, 2)), InvalidInput);
  EXPECT_THROW(bounded_report(M, state, Rational(2), 32, Rational(-1)), DomainError);
  EXPECT_THROW(bounded_report(M, state, Rational(0), 64, Rational(-1)), InvalidInput);
}

TEST(Theorem, ExponentialVerified) {
  auto rep = theorem_check(scalar_module(2, "1", Rational(0), Rational(2)));
  EXPECT_TRUE(rep.one_slope);
  EXPECT_TRUE(rep.robba.non_robba);
  EXPECT_EQ(rep.verdict, Verdict::verified);
  EXPECT_EQ(rep.reports.size(), 9u);
}

TEST(Theorem, EulerVerified) {
  auto rep = theorem_check(scalar_module(2, "1/(2x)", Rational(-1), Rational(1)));
  EXPECT_EQ(rep.verdict, Verdict::verified);
  EXPECT_EQ(rep.robba.margin, Rational(2));
}

TEST(Theorem, ZeroModuleFailsHypotheses) {
  auto rep = theorem_check(scalar_module(2, "0", Rational(-1), Rational(1)));
  EXPECT_EQ(rep.verdict, Verdict::hypotheses_fail);
  EXPECT_FALSE(rep.robba.non_robba);
  EXPECT_TRUE(rep.reports.empty());
}

TEST(Theorem, TwoSlopesFailHypotheses) {
  auto rep = theorem_check(scalar_module(2, "1", Rational(-2), Rational(2)));
  EXPECT_FALSE(rep.one_slope);
  EXPECT_EQ(rep.verdict, Verdict::hypotheses_fail);
}

}  // namespace
}  // namespace padicdm
