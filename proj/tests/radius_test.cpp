#include "padicdm/radius.hpp"

#include <gtest/gtest.h>

#include <random>

#include "padicdm/parse.hpp"
#include "test_support.hpp"

namespace padicdm {
namespace {

RationalFunction rf(const char* s) { return parse_rational_function(s); }

DiffModule scalar_module(long p, const char* g, Rational lo, Rational hi) {
  return DiffModule(Prime(p), RationalFunctionMatrix::from_rows({{rf(g)}}), Interval(std::move(lo), std::move(hi)));
}

TEST(RationalApprox, MatchesContinuedFractions) {
  EXPECT_EQ(best_rational_approximation(make_rational(314159, 100000), 10), make_rational(22, 7));
  EXPECT_EQ(best_rational_approximation(make_rational(314159, 100000), 200), make_rational(355, 113));
  EXPECT_EQ(best_rational_approximation(-0.4999999, 32), make_rational(-1, 2));
  EXPECT_EQ(best_rational_approximation(0.3333, 32), make_rational(1, 3));
  EXPECT_EQ(best_rational_approximation(2.0, 1), Rational(2));
  EXPECT_THROW(best_rational_approximation(std::nan(""), 4), InvalidInput);
}

TEST(Radius, ZeroMatrixIsCappedAtRho) {
  auto M = scalar_module(2, "0", Rational(-1), Rational(1));
  for (const Rational& rho : {Rational(0), make_rational(1, 2), make_rational(-3, 4)}) {
    auto est = radius_estimate(M, rho);
    ASSERT_TRUE(est.log_radius_exact);
    EXPECT_EQ(*est.log_radius_exact, rho);
    EXPECT_TRUE(est.capped);
  }
}

TEST(Radius, Exponential) {
  for (long p : {2L, 3L, 5L}) {
    auto M = scalar_module(p, "1", Rational(-1), Rational(1));
    auto est = radius_estimate(M, Rational(0));
    const double expected = log_pi(Prime(p)).get_d();
    EXPECT_NEAR(est.tail_min, expected, 0.05) << p;
    auto slope = radius_estimate(M, Rational(0), {.method = Method::tail_slope});
    EXPECT_NEAR(slope.log_radius, expected, 0.05) << p;
    EXPECT_FALSE(est.capped);
  }
}

TEST(Radius, ExactAndFloatAgree) {
  auto M = scalar_module(3, "x + 1/(9x)", Rational(-1), Rational(1));
  auto state = gn_sequence(M, 128);
  for (const Rational& rho : {make_rational(-1, 2), make_rational(1, 3)}) {
    auto e = radius_estimate(M, state, rho, {.depth = 128});
    auto f = radius_estimate(M, state, rho, {.depth = 128, .mode = Mode::floating});
    EXPECT_NEAR(e.log_radius, f.log_radius, 1e-9);
  }
}

TEST(Radius, EulerScalar) {
  // dy = y/(2x): log R = rho + log pi + v_2(1/2) = rho - 2
  auto M = scalar_module(2, "1/(2x)", Rational(-2), Rational(2));
  for (const Rational& rho : {Rational(-1), Rational(0), Rational(1)}) {
    auto est = radius_estimate(M, rho);
    EXPECT_NEAR(est.log_radius, Rational(rho - 2).get_d(), 0.05);
  }
}

TEST(Radius, RejectsBadArguments) {
  auto M = scalar_module(2, "1", Rational(-1), Rational(1));
  EXPECT_THROW(radius_estimate(M, Rational(1)), DomainError);
  EXPECT_THROW(radius_estimate(M, Rational(0), {.depth = 8}), InvalidInput);
}

TEST(Radius, RawNormalizationIsBelowFactorial) {
  auto M = scalar_module(2, "1", Rational(-1), Rational(1));
  auto raw = radius_estimate(M, Rational(0), {.normalization = Normalization::raw});
  // ||G_n|| = 1 for all n: the raw tail never decays
  EXPECT_NEAR(raw.log_radius, 0.0, 1e-12);
}

TEST(Radius, GaugeInvariance) {
  std::mt19937_64 rng(3);
  auto G = RationalFunctionMatrix::from_rows({{rf("1/4"), RationalFunction()}, {RationalFunction(), RationalFunction()}});
  DiffModule M(Prime(2), G, Interval(Rational(-1), Rational(1)));
  auto base = radius_estimate(M, Rational(0));
  for (int i = 0; i < 5; ++i) {
    auto H = testing::random_unimodular(rng, 2, 2, 1, 1);
    auto T = gauge_transform(M, H);
    if (!T.pole_free) continue;
    auto est = radius_estimate(T.module, Rational(0));
    EXPECT_NEAR(est.log_radius, base.log_radius, 0.05) << i;
  }
}

TEST(Polygon, ZeroModuleIsIdentity) {
  auto M = scalar_module(2, "0", Rational(-1), Rational(1));
  auto poly = polygon_estimate(M, {.grid = 9});
  ASSERT_EQ(poly.segments.size(), 1u);
  EXPECT_EQ(poly.segments[0].slope, Rational(1));
  EXPECT_EQ(poly.segments[0].intercept, Rational(0));
  EXPECT_FALSE(is_non_robba(poly).non_robba);
}

TEST(Polygon, ExponentialOnePiece) {
  auto M = scalar_module(2, "1", Rational(0), Rational(2));
  auto poly = polygon_estimate(M, {.grid = 9});
  ASSERT_EQ(poly.segments.size(), 1u);
  EXPECT_EQ(poly.segments[0].slope, Rational(0));
  EXPECT_EQ(poly.segments[0].intercept, Rational(-1));
  EXPECT_TRUE(one_slope(poly));
  auto rc = is_non_robba(poly);
  EXPECT_TRUE(rc.non_robba);
  EXPECT_EQ(rc.margin, Rational(1));
  EXPECT_EQ(rc.at, Rational(0));
}

TEST(Polygon, ExponentialBreakpoint) {
  auto M = scalar_module(2, "1", Rational(-2), Rational(2));
  auto poly = polygon_estimate(M, {.grid = 17});
  ASSERT_EQ(poly.segments.size(), 2u);
  EXPECT_EQ(poly.segments[0].slope, Rational(1));
  EXPECT_EQ(poly.segments[0].intercept, Rational(0));
  EXPECT_EQ(poly.segments[1].slope, Rational(0));
  EXPECT_EQ(poly.segments[1].intercept, Rational(-1));
  EXPECT_EQ(poly.segments[0].to, Rational(-1));
  EXPECT_LE(poly.concavity_defect, 0.05);
  // touches the identity on (-2, -1)
  EXPECT_FALSE(is_non_robba(poly).non_robba);
}

ConvergencePolygon synthetic(std::vector<PolygonSegment> segs, Rational lo, Rational hi) {
  ConvergencePolygon poly{Interval(lo, hi), std::move(segs), {}, 32, 0, 0, {}};
  return poly;
}

TEST(NonRobba, ExactOnVertices) {
  // log R = rho: margin 0
  auto a = synthetic({{Rational(0), Rational(2), Rational(1), 1.0, Rational(0), 0.0}}, Rational(0), Rational(2));
  EXPECT_FALSE(is_non_robba(a).non_robba);
  EXPECT_EQ(is_non_robba(a).margin, Rational(0));
  // log R = -1
  auto b = synthetic({{Rational(0), Rational(2), Rational(0), 0.0, Rational(-1), -1.0}}, Rational(0), Rational(2));
  EXPECT_TRUE(is_non_robba(b).non_robba);
  EXPECT_EQ(is_non_robba(b).margin, Rational(1));
  // log R = rho - 2
  auto c = synthetic({{Rational(-1), Rational(1), Rational(1), 1.0, Rational(-2), -2.0}}, Rational(-1), Rational(1));
  EXPECT_TRUE(is_non_robba(c).non_robba);
  EXPECT_EQ(is_non_robba(c).margin, Rational(2));
  // log R = 0 on (0, 2): touches the identity at the open left end only
  auto d = synthetic({{Rational(0), Rational(2), Rational(0), 0.0, Rational(0), 0.0}}, Rational(0), Rational(2));
  EXPECT_TRUE(is_non_robba(d).non_robba);
  EXPECT_EQ(is_non_robba(d).margin, Rational(0));
}

TEST(Polygon, FitRecoversSyntheticConcaveSamples) {
  // min(rho, -rho/2 - 1) sampled with small noise
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0, 0.002);
  Interval I(Rational(-3), Rational(3));
  std::vector<RadiusEstimate> samples;
  for (const auto& rho : sample_grid(I, 21)) {
    RadiusEstimate e;
    e.rho = rho;
    double r = rho.get_d();
    e.log_radius = std::min(r, -r / 2 - 1) + noise(rng);
    samples.push_back(e);
  }
  auto poly = fit_polygon(I, samples, 8, 0.05);
  ASSERT_EQ(poly.segments.size(), 2u);
  EXPECT_EQ(poly.segments[0].slope, Rational(1));
  EXPECT_EQ(poly.segments[1].slope, make_rational(-1, 2));
  EXPECT_EQ(poly.segments[1].intercept, Rational(-1));
  EXPECT_EQ(poly.segments[0].to, make_rational(-2, 3));
  EXPECT_TRUE(poly.warnings.empty());
}

TEST(Polygon, ConcavityDefectReported) {
  Interval I(Rational(0), Rational(4));
  std::vector<RadiusEstimate> samples;
  for (const auto& rho : sample_grid(I, 7)) {
    RadiusEstimate e;
    e.rho = rho;
    e.log_radius = rho == I.grid_point(3, 7) ? -1.0 : 0.0;
    samples.push_back(e);
  }
  auto poly = fit_polygon(I, samples, 8, 0.05);
  EXPECT_NEAR(poly.concavity_defect, 1.0, 1e-12);
  EXPECT_FALSE(poly.warnings.empty());
}

TEST(Polygon, ThreadCountDoesNotChangeResult) {
  auto M = scalar_module(3, "1/(3x) + x", Rational(-1), Rational(1));
  auto a = polygon_estimate(M, {.grid = 7, .threads = 1});
  auto b = polygon_estimate(M, {.grid = 7, .threads = 4});
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(a.samples[i].log_radius, b.samples[i].log_radius);
}

TEST(Frobenius, PullbackRadiusRelation) {
  for (long p : {2L, 3L}) {
    for (unsigned h : {1u, 2u}) {
      auto N = scalar_module(p, "1", Rational(-2), Rational(2));
      auto rep = frobenius_radius_check(N, h, 5, {}, 0.05);
      EXPECT_TRUE(rep.holds) << "p=" << p << " h=" << h << " residual " << rep.max_residual;
      auto M = frobenius_pullback(N, h);
      EXPECT_EQ(M.interval().hi * rational_pow(p, static_cast<long>(h)), Rational(2));
    }
  }
}

TEST(Frobenius, AllExcludedThrows) {
  // log R(N) = -4, so the pullback sits below rho + log pi everywhere on (-1, 1).
  auto N = scalar_module(2, "1/8", Rational(-2), Rational(2));
  EXPECT_THROW(frobenius_radius_check(N, 1, 5, {}, 0.05), HypothesisViolated);
}

}  // namespace
}  // namespace padicdm
