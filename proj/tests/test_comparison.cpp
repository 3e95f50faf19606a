#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "minlab/comparison.hpp"

namespace {

using namespace minlab::comparison;
constexpr double kPi = std::numbers::pi;

// zeta(2n) by direct summation with an integral tail bound; exact for n = 1.
double zeta_even(int n) {
  if (n == 1) return kPi * kPi / 6.0;
  const double s = 2.0 * n;
  double sum = 0.0;
  const int K = 2000;
  for (int k = K; k >= 1; --k) sum += std::pow(k, -s);
  return sum + std::pow(K + 0.5, 1.0 - s) / (s - 1.0);
}

// Independent oracle for f_a from the cotangent / hyperbolic cotangent
// expansions 1 - x cot x = 2 sum zeta(2n) (x/pi)^(2n) and
// 1 - x coth x = -2 sum (-1)^(n+1) zeta(2n) (x/pi)^(2n), valid for |x| < pi.
double f_a_oracle(double a, double t) {
  if (a == 0.0) return 0.0;
  const double x = std::sqrt(std::abs(a)) * t;
  const double q = (x / kPi) * (x / kPi);
  // f = (1 - x cot x) / t^2 = |a| * (1 - x cot x) / x^2, so divide the series by x^2 termwise.
  double sum = 0.0;
  double qn = 1.0 / (kPi * kPi);  // (x/pi)^(2n) / x^2 for n = 1
  for (int n = 1; n <= 80; ++n) {
    const double sign = (a > 0.0) ? 1.0 : ((n % 2 == 1) ? -1.0 : 1.0);
    sum += sign * 2.0 * zeta_even(n) * qn;
    qn *= q;
  }
  return std::abs(a) * sum;
}

TEST(SA, ClosedFormsByCurvatureSign) {
  EXPECT_DOUBLE_EQ(s_a(0.0, 2.0), 2.0);
  EXPECT_NEAR(s_a(1.0, kPi / 2.0), 1.0, 1e-15);
  EXPECT_NEAR(s_a(-1.0, 1.0), 1.1752011936438014, 1e-14);
  EXPECT_NEAR(ds_a(4.0, 0.3), std::cos(0.6), 1e-15);
  EXPECT_NEAR(ds_a(-4.0, 0.3), std::cosh(0.6), 1e-15);
}

TEST(SA, SolvesTheOdeByFiniteDifferences) {
  for (double a : {-2.0, 0.0, 3.0}) {
    const double t = 0.7, h = 1e-4;
    const double second = (s_a(a, t + h) - 2.0 * s_a(a, t) + s_a(a, t - h)) / (h * h);
    EXPECT_NEAR(second + a * s_a(a, t), 0.0, 1e-6) << "a=" << a;
    EXPECT_NEAR((s_a(a, t + h) - s_a(a, t - h)) / (2 * h), ds_a(a, t), 1e-7);
  }
}

TEST(SA, DomainErrors) {
  EXPECT_THROW(s_a(1.0, kPi), std::domain_error);
  EXPECT_THROW(s_a(4.0, 2.0), std::domain_error);
  EXPECT_THROW(s_a(0.0, -1.0), std::domain_error);
  EXPECT_THROW(f_a(1.0, 3.5), std::domain_error);
  EXPECT_TRUE(interval_end(0.0).is_infinite());
  EXPECT_NEAR(interval_end(4.0).value(), kPi / 2.0, 1e-15);
}

TEST(FA, ValueAtZeroIsExactlyAThird) {
  for (double a : {-4.0, -1.0, 0.0, 1.0, 4.0}) EXPECT_EQ(f_a(a, 0.0), a / 3.0);
}

TEST(FA, KnownValues) {
  EXPECT_EQ(f_a(0.0, 7.3), 0.0);
  EXPECT_NEAR(f_a(-1.0, 1.0), 1.0 - 1.0 / std::tanh(1.0), 1e-14);
  EXPECT_NEAR(f_a(-1.0, 1.0), -0.31303528549933135, 1e-13);
  EXPECT_NEAR(f_a(1.0, 1.0), 1.0 - 1.0 / std::tan(1.0), 1e-14);
}

TEST(FA, MatchesZetaSeriesOracleAcrossTheSwitch) {
  for (double a : {-4.0, -1.0, 1.0, 4.0}) {
    const double t_switch = kSeriesSwitch / std::sqrt(std::abs(a));
    for (double s : {0.01, 0.5, 0.999, 1.0, 1.001, 2.0, 10.0}) {
      const double t = s * t_switch;
      EXPECT_NEAR(f_a(a, t), f_a_oracle(a, t), 1e-10) << "a=" << a << " t=" << t;
    }
  }
}

TEST(FA, MatchesZetaSeriesOracleAwayFromZero) {
  for (double a : {-4.0, -1.0, 1.0, 4.0}) {
    for (double x : {0.1, 0.5, 1.0, 2.0}) {
      const double t = x / std::sqrt(std::abs(a));
      EXPECT_NEAR(f_a(a, t), f_a_oracle(a, t), 1e-11 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST(FA, IncreasingForPositiveCurvature) {
  double prev = f_a(1.0, 0.0);
  for (double t = 0.05; t < 3.0; t += 0.05) {
    const double v = f_a(1.0, t);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(MeanCurvatureRadius, Cases) {
  EXPECT_TRUE(mean_curvature_radius(0.0, 0.0).is_infinite());
  EXPECT_NEAR(mean_curvature_radius(0.0, 4.0).value(), 0.25, 1e-15);
  EXPECT_NEAR(mean_curvature_radius(1.0, 0.0).value(), kPi / 2.0, 1e-15);
  EXPECT_NEAR(mean_curvature_radius(-1.0, 2.0).value(), 0.5493061443340549, 1e-14);
  EXPECT_NEAR(mean_curvature_radius(-1.0, 2.0).value(), 0.5 * std::log(3.0), 1e-14);
  // Hyperbolic spheres have mean curvature above sqrt(-a).
  EXPECT_TRUE(mean_curvature_radius(-1.0, 1.0).is_infinite());
  EXPECT_TRUE(mean_curvature_radius(-4.0, 1.5).is_infinite());
  EXPECT_THROW(mean_curvature_radius(0.0, -1.0), std::invalid_argument);
}

TEST(MeanCurvatureRadius, SphereOfThatRadiusHasMeanCurvatureH0) {
  // Geodesic sphere of radius rho in M(a) has mean curvature s_a'(rho)/s_a(rho).
  for (auto [a, H0] : {std::pair{1.0, 0.7}, std::pair{-1.0, 1.8}, std::pair{0.0, 2.5}}) {
    const double rho = mean_curvature_radius(a, H0).value();
    EXPECT_NEAR(ds_a(a, rho) / s_a(a, rho), H0, 1e-12);
  }
}

TEST(R1, MinWithInfinityAbsorbing) {
  EXPECT_TRUE(r1({0.0, 0.0, ExtendedRadius::infinite()}).is_infinite());
  EXPECT_DOUBLE_EQ(r1({0.0, 1.0, ExtendedRadius::finite(5.0)}).value(), 1.0);
  EXPECT_NEAR(r1({1.0, 0.0, ExtendedRadius::finite(10.0)}).value(), kPi / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(r1({0.0, 0.0, ExtendedRadius::finite(3.0)}).value(), 3.0);
}

TEST(ExtendedRadiusType, OrderingAndPrinting) {
  const auto inf = ExtendedRadius::infinite();
  const auto one = ExtendedRadius::finite(1.0);
  EXPECT_TRUE(one < inf);
  EXPECT_TRUE(inf == ExtendedRadius::infinite());
  EXPECT_EQ(min(inf, one), one);
  EXPECT_EQ(inf.as_double(), std::numeric_limits<double>::infinity());
  EXPECT_THROW(inf.value(), std::logic_error);
  EXPECT_THROW(ExtendedRadius::finite(-1.0), std::invalid_argument);
  EXPECT_EQ(inf.to_string(), "inf");
}

TEST(Params, Validation) {
  EXPECT_THROW((ComparisonParams{0.0, -1.0}).validate(), std::invalid_argument);
  EXPECT_THROW((ComparisonParams{0.0, 0.0, ExtendedRadius::finite(0.0)}).validate(),
               std::invalid_argument);
  EXPECT_THROW((ComparisonParams{0.0, 0.0, ExtendedRadius::infinite(), 3, 3}).validate(),
               std::invalid_argument);
  EXPECT_NO_THROW((ComparisonParams{}).validate());
}

TEST(UnitBall, Volumes) {
  EXPECT_NEAR(unit_ball_volume(1), 2.0, 1e-15);
  EXPECT_NEAR(unit_ball_volume(2), kPi, 1e-15);
  EXPECT_NEAR(unit_ball_volume(3), 4.0 * kPi / 3.0, 1e-14);
  EXPECT_NEAR(unit_ball_volume(4), kPi * kPi / 2.0, 1e-14);
}

TEST(AreaLowerBound, FlatCases) {
  EXPECT_NEAR(area_lower_bound({}, 1.0), kPi, 1e-15);
  EXPECT_NEAR(area_lower_bound({}, 2.5), kPi * 6.25, 1e-13);
  EXPECT_NEAR(area_lower_bound({0.0, 1.0}, 1.0), kPi * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(area_lower_bound({0.0, 1.0}, 1.0), 0.42516833, 1e-8);
  EXPECT_NEAR(area_lower_bound({-3.0, 0.0}, 0.7), kPi * 0.49, 1e-14);
}

TEST(AreaLowerBound, PositiveCurvatureBranch) {
  const ComparisonParams p{1.0, 0.0, ExtendedRadius::finite(1.0)};
  const double oracle = kPi * std::exp(-(1.0 - std::cos(1.0) / std::sin(1.0)));
  EXPECT_NEAR(area_lower_bound(p, 1.0), oracle, 1e-14);
  EXPECT_NEAR(area_lower_bound(p, 1.0), 2.1964062, 1e-7);
  EXPECT_THROW(area_lower_bound(p, 1.5), std::domain_error);
  EXPECT_THROW(area_lower_bound({}, 0.0), std::domain_error);
}

TEST(AreaLowerBound, PointwiseVariantDominates) {
  const ComparisonParams p{2.0, 0.3, ExtendedRadius::finite(0.9)};
  for (double r = 0.05; r <= 0.9; r += 0.05) {
    EXPECT_GE(area_lower_bound(p, r, CurvatureRadius::kPointwise),
              area_lower_bound(p, r, CurvatureRadius::kR1));
  }
}

TEST(AreaLowerBound, NondecreasingForNonpositiveCurvature) {
  const ComparisonParams p{-1.0, 0.0, ExtendedRadius::finite(4.0)};
  double prev = 0.0;
  for (double r = 0.1; r <= 4.0; r += 0.1) {
    const double v = area_lower_bound(p, r);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(YauR2, FlatCases) {
  EXPECT_TRUE(yau_r2({}).is_infinite());
  const double r2 = yau_r2({0.0, 1.0}).value();
  EXPECT_NEAR(r2, 0.5 * std::log(kPi / 3.0), 1e-9);
  EXPECT_NEAR(r2, 0.0230587986, 1e-9);
}

TEST(YauR2, CrossingSatisfiesDefinition) {
  for (const ComparisonParams& p :
       {ComparisonParams{1.0, 0.2, ExtendedRadius::finite(1.0)},
        ComparisonParams{-2.0, 0.5, ExtendedRadius::infinite()},
        ComparisonParams{0.5, 0.0, ExtendedRadius::infinite()}}) {
    const auto r2 = yau_r2(p);
    const double r = r2.value();
    const double fa = p.a > 0.0 ? f_a(p.a, r1(p).value()) : 0.0;
    const double phi = kPi * std::exp(-2.0 * r * (p.H0 + 0.5 * fa * r));
    EXPECT_GE(phi, 3.0 - 1e-9);
    EXPECT_LE(r, r1(p).as_double());
  }
  EXPECT_THROW(yau_r2({0.0, 0.0, ExtendedRadius::infinite(), 3, 4}), std::invalid_argument);
}

TEST(ChordAreaConstant, Cases) {
  EXPECT_DOUBLE_EQ(chord_area_constant(0.5, ExtendedRadius::infinite()), 0.5);
  EXPECT_DOUBLE_EQ(chord_area_constant(2.0, ExtendedRadius::finite(1.0)), 0.5);
  EXPECT_DOUBLE_EQ(chord_area_constant(0.1, ExtendedRadius::finite(1.0)), 0.1);
  EXPECT_THROW(chord_area_constant(0.0, ExtendedRadius::infinite()), std::invalid_argument);
}

}  // namespace
