#include "padicdm/matrix.hpp"

#include <gtest/gtest.h>

#include <random>

#include "padicdm/parse.hpp"
#include "test_support.hpp"

namespace padicdm {
namespace {

RationalFunction rf(const char* s) { return parse_rational_function(s); }

TEST(Matrix, DeterminantAndInverse) {
  auto m = RationalFunctionMatrix::from_rows({{rf("x"), rf("1")}, {rf("1/x"), rf("2")}});
  EXPECT_EQ(determinant(m), rf("2*x - 1/x"));
  auto inv = inverse(m);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(m * *inv, RationalFunctionMatrix::identity(2));
  EXPECT_EQ(*inv * m, RationalFunctionMatrix::identity(2));
}

TEST(Matrix, SingularHasNoInverse) {
  auto m = RationalFunctionMatrix::from_rows({{rf("x"), rf("x^2")}, {rf("1"), rf("x")}});
  EXPECT_TRUE(determinant(m).is_zero());
  EXPECT_FALSE(inverse(m).has_value());
}

TEST(Matrix, RandomInversesAreExact) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const std::size_t mu = 1 + t % 3;
    RationalFunctionMatrix m(mu, mu);
    for (std::size_t i = 0; i < mu; ++i)
      for (std::size_t j = 0; j < mu; ++j) m(i, j) = testing::random_rational_function(rng, 2, 9);
    auto inv = inverse(m);
    if (!inv) {
      EXPECT_TRUE(determinant(m).is_zero());
      continue;
    }
    EXPECT_EQ(m * *inv, RationalFunctionMatrix::identity(mu));
  }
}

TEST(Matrix, UnimodularGaugesHaveConstantDeterminant) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    auto H = testing::random_unimodular(rng, 3, 4, 2, 3);
    auto d = determinant(H);
    EXPECT_TRUE(d == RationalFunction(1) || d == RationalFunction(-1L));
  }
}

TEST(Matrix, ShapeErrors) {
  RationalFunctionMatrix a(2, 3), b(2, 3);
  EXPECT_THROW(a * b, InvalidInput);
  EXPECT_THROW(determinant(a), InvalidInput);
  EXPECT_THROW(RationalFunctionMatrix::from_rows({{rf("1")}, {rf("1"), rf("2")}}), InvalidInput);
}

}  // namespace
}  // namespace padicdm
