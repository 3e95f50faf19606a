#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "minlab/henneberg.hpp"
#include "minlab/surfaces.hpp"
#include "minlab/weierstrass.hpp"

namespace {

using namespace minlab;
using namespace minlab::weierstrass;
constexpr double kPi = std::numbers::pi;

TEST(PhiForms, BuiltInExamples) {
  const auto plane = phi_forms(surfaces::plane());
  EXPECT_EQ(plane[0], LaurentPoly(0.5));
  EXPECT_EQ(plane[1], LaurentPoly(Complex(0.0, 0.5)));
  EXPECT_TRUE(plane[2].is_zero());
  EXPECT_EQ(phi_forms(surfaces::catenoid())[2], LaurentPoly::monomial(-1));
  EXPECT_EQ(phi_forms(henneberg::make(1).data)[2],
            LaurentPoly::from_pairs({{1, 1.0}, {-3, -1.0}}));
}

TEST(PhiForms, ConformalityIdentityHoldsSymbolically) {
  for (const auto& data : {surfaces::plane(), surfaces::enneper(), surfaces::catenoid(),
                           henneberg::make(1).data, henneberg::make(5).data}) {
    const auto phi = phi_forms(data);
    const LaurentPoly q = phi[0] * phi[0] + phi[1] * phi[1] + phi[2] * phi[2];
    EXPECT_TRUE(q.is_negligible(1e-14, 1.0)) << q.to_string();
  }
}

TEST(Evaluate, PlaneIsHalfScaledReflection) {
  const MinimalSurface f(surfaces::plane());
  const Eigen::Vector3d p = f.evaluate({1.2, -0.4});
  EXPECT_NEAR(p.x(), 0.6, 1e-15);
  EXPECT_NEAR(p.y(), 0.2, 1e-15);
  EXPECT_EQ(p.z(), 0.0);
}

TEST(Evaluate, CatenoidHeightIsLogRadius) {
  const MinimalSurface f(surfaces::catenoid());
  for (double t : {-1.2, 0.0, 0.3, 1.5}) {
    const Eigen::Vector3d p = f.evaluate(std::polar(std::exp(t), 0.9));
    EXPECT_NEAR(p.z(), t, 1e-14);
    // f(1) = 0 shifts the axis to (1, 0, 0).
    EXPECT_NEAR(std::hypot(p.x() - 1.0, p.y()), std::cosh(t), 1e-13);
  }
  EXPECT_LT(f.evaluate(1.0).norm(), 1e-15);
}

TEST(Evaluate, HennebergBasePointMapsToOrigin) {
  for (int m : {1, 3, 5}) {
    const MinimalSurface f(henneberg::make(m).data);
    EXPECT_LT(f.evaluate(std::polar(1.0, kPi / (2.0 * (m + 1)))).norm(), 1e-10);
  }
}

TEST(Evaluate, DerivativeMatchesPhiForms) {
  // d/dx Re F = Re phi; checks the termwise antiderivative including logs.
  const MinimalSurface f(henneberg::make(3).data);
  const auto phi = phi_forms(f.data());
  const Complex z(0.7, 0.9);
  const double h = 1e-6;
  const Eigen::Vector3d dx = (f.evaluate(z + h) - f.evaluate(z - h)) / (2 * h);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(dx[k], phi[k](z).real(), 1e-7);
}

TEST(Evaluate, ImaginaryResidueRejected) {
  WeierstrassData d{LaurentPoly::monomial(1), LaurentPoly::monomial(-2, Complex(0.0, 1.0)),
                    {0.5, 2.0}};
  // phi_3 = i/z has residue i: f would be multivalued.
  EXPECT_THROW(MinimalSurface{d}, std::domain_error);
}

TEST(Evaluate, LoopAroundPunctureHasNoPeriod) {
  const MinimalSurface f(surfaces::catenoid());
  const Eigen::Vector3d a = f.evaluate(std::polar(1.7, 0.0));
  const Eigen::Vector3d b = f.evaluate(std::polar(1.7, 2.0 * kPi));
  EXPECT_LT((a - b).norm(), 1e-10);
}

TEST(Evaluate, DiskDomainWithPoleAtZeroRejected) {
  WeierstrassData d = surfaces::catenoid();
  d.domain = {0.0, 2.0};
  EXPECT_THROW(MinimalSurface{d}, std::invalid_argument);
}

TEST(ConformalFactor, Values) {
  EXPECT_DOUBLE_EQ(MinimalSurface(surfaces::plane()).conformal_factor({3.0, 1.0}), 0.5);
  const MinimalSurface cat(surfaces::catenoid());
  EXPECT_NEAR(cat.conformal_factor(std::polar(1.0, 0.4)), 1.0, 1e-15);
  const Complex z(1.3, -0.2);
  EXPECT_NEAR(cat.conformal_factor(z), 0.5 * (1.0 + std::norm(z)) / std::norm(z), 1e-15);
  EXPECT_EQ(MinimalSurface(henneberg::make(1).data).conformal_factor(1.0), 0.0);
}

TEST(ConformalFactor, BoundsChordLengths) {
  // |f(z) - f(z')| <= max lambda * |z - z'| for nearby points.
  const MinimalSurface f(surfaces::enneper());
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    const Complex z(u(rng), u(rng));
    const Complex w = z + Complex(1e-4, -3e-5);
    const double lam = std::max(f.conformal_factor(z), f.conformal_factor(w));
    EXPECT_LE((f.evaluate(z) - f.evaluate(w)).norm(), lam * std::abs(z - w) * (1.0 + 1e-3));
  }
}

TEST(Curvature, CatenoidWaistAndPlane) {
  const MinimalSurface cat(surfaces::catenoid());
  EXPECT_NEAR(cat.gauss_curvature(std::polar(1.0, 1.1)), -1.0, 1e-14);
  // K = -1/cosh^4(t) on the catenoid.
  EXPECT_NEAR(cat.gauss_curvature(std::exp(0.8)), -1.0 / std::pow(std::cosh(0.8), 4), 1e-14);
  EXPECT_EQ(MinimalSurface(surfaces::plane()).gauss_curvature(0.3), 0.0);
  EXPECT_THROW(MinimalSurface(henneberg::make(1).data).gauss_curvature(1.0), std::domain_error);
}

TEST(Curvature, DensityIsCurvatureTimesLambdaSquared) {
  const MinimalSurface f(surfaces::enneper());
  const Complex z(0.4, 0.9);
  const double lam = f.conformal_factor(z);
  EXPECT_NEAR(f.curvature_density(z), f.gauss_curvature(z) * lam * lam, 1e-13);
}

TEST(Curvature, MatchesMetricLaplacianOfLogLambda) {
  // Oracle: K = -Laplacian(ln lambda) / lambda^2 by central differences.
  for (const auto& data : {surfaces::enneper(), henneberg::make(3).data}) {
    const MinimalSurface f(data);
    const Complex z0(0.5, 0.7);
    const double h = 1e-4;
    auto L = [&](Complex z) { return std::log(f.conformal_factor(z)); };
    const double lap = (L(z0 + h) + L(z0 - h) + L(z0 + Complex(0, h)) + L(z0 - Complex(0, h)) -
                        4.0 * L(z0)) /
                       (h * h);
    const double lam = f.conformal_factor(z0);
    EXPECT_NEAR(-lap / (lam * lam) / f.gauss_curvature(z0), 1.0, 1e-5);
  }
}

TEST(BranchPoints, HennebergOne) {
  const MinimalSurface f(henneberg::make(1).data);
  const auto bp = branch_points(f);
  ASSERT_EQ(bp.size(), 2u);
  for (const auto& b : bp) {
    EXPECT_EQ(b.order, 1);
    EXPECT_NEAR(std::abs(b.z), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(b.image.z()), 1.0, 1e-8);
    EXPECT_LT(b.image.head<2>().norm(), 1e-8);
  }
  EXPECT_EQ(total_branching_order(f), 2);
}

TEST(BranchPoints, HennebergFamilyImages) {
  for (int m = 1; m <= 9; m += 2) {
    const MinimalSurface f(henneberg::make(m).data);
    const auto bp = branch_points(f);
    ASSERT_EQ(bp.size(), static_cast<std::size_t>(m + 1)) << "m=" << m;
    for (const auto& b : bp) {
      EXPECT_EQ(b.order, 1);
      EXPECT_NEAR(std::pow(b.z, 2 * m + 2).real(), 1.0, 1e-10);
      EXPECT_NEAR(std::abs(b.image.z()), 2.0 / (m + 1), 1e-8);
      EXPECT_LT(b.image.head<2>().norm(), 1e-8);
    }
  }
}

TEST(BranchPoints, PlaneHasNone) {
  EXPECT_TRUE(branch_points(MinimalSurface(surfaces::plane())).empty());
}

TEST(BranchPoints, HigherOrderZeroIsClustered) {
  // omega = (z - 1)^2 has a double zero: a branch point of order 2.
  WeierstrassData d{LaurentPoly::monomial(1), LaurentPoly::from_pairs({{2, 1.0}, {1, -2.0}, {0, 1.0}}),
                    {0.0, 3.0}, false, 0.0};
  const auto bp = branch_points(MinimalSurface(d));
  ASSERT_EQ(bp.size(), 1u);
  EXPECT_EQ(bp[0].order, 2);
  EXPECT_NEAR(std::abs(bp[0].z - 1.0), 0.0, 1e-6);
}

TEST(BranchPoints, ZeroOnBoundaryRejected) {
  WeierstrassData d = henneberg::make(1).data;
  d.domain = {0.5, 1.0};
  EXPECT_THROW(branch_points(MinimalSurface(d)), std::domain_error);
}

TEST(PolynomialRoots, KnownRoots) {
  // (z - 2)(z + 1)(z - i) = z^3 - (1 + i) z^2 + (-2 + i) z + 2i
  const std::vector<Complex> c{{0, 2}, {-2, 1}, {-1, -1}, {1, 0}};
  auto roots = polynomial_roots(c);
  ASSERT_EQ(roots.size(), 3u);
  for (Complex expected : {Complex(2, 0), Complex(-1, 0), Complex(0, 1)}) {
    double best = 1e9;
    for (Complex r : roots) best = std::min(best, std::abs(r - expected));
    EXPECT_LT(best, 1e-12);
  }
  EXPECT_TRUE(polynomial_roots({Complex(3.0)}).empty());
}

TEST(Ends, BuiltInProfiles) {
  const auto cat = end_profiles(MinimalSurface(surfaces::catenoid()));
  ASSERT_EQ(cat.size(), 2u);
  EXPECT_EQ(cat[0].multiplicity, 1);
  EXPECT_EQ(cat[1].multiplicity, 1);
  const auto enn = end_profiles(MinimalSurface(surfaces::enneper()));
  ASSERT_EQ(enn.size(), 1u);
  EXPECT_EQ(enn[0].multiplicity, 3);
  EXPECT_EQ(enn[0].location, Puncture::kInfinity);
  const auto plane = end_profiles(MinimalSurface(surfaces::plane()));
  ASSERT_EQ(plane.size(), 1u);
  EXPECT_EQ(plane[0].multiplicity, 1);
  for (int m : {1, 3, 7}) {
    const auto h = end_profiles(MinimalSurface(henneberg::make(m).data));
    ASSERT_EQ(h.size(), 1u);
    EXPECT_EQ(h[0].multiplicity, m + 2);
    EXPECT_EQ(h[0].location, Puncture::kZeroAndInfinity);
  }
}

TEST(Ends, MismatchedQuotientRejected) {
  WeierstrassData d = surfaces::catenoid();
  d.omega = LaurentPoly::from_pairs({{-2, 1.0}, {1, 1.0}});
  d.quotient = true;
  EXPECT_THROW(end_profiles(MinimalSurface(d)), std::domain_error);
}

TEST(TotalCurvature, HennebergAndCatenoid) {
  WeierstrassData h = henneberg::make(1).data;
  h.domain = {1.0 / 50.0, 50.0};
  const auto th = total_curvature(MinimalSurface(h), 1024);
  EXPECT_NEAR(th.value / (-2 * kPi), 1.0, 0.02);
  WeierstrassData c = surfaces::catenoid();
  c.domain = {1.0 / 50.0, 50.0};
  const auto tc = total_curvature(MinimalSurface(c), 1024);
  EXPECT_NEAR(tc.value / (-4 * kPi), 1.0, 0.02);
  EXPECT_FALSE(tc.tail_warning);
  EXPECT_EQ(total_curvature(MinimalSurface(surfaces::plane()), 64).value, 0.0);
}

TEST(TotalCurvature, CatenoidClosedFormOnFiniteBand) {
  // Integral of K dA over |t| <= T is -4 pi tanh(T).
  const WeierstrassData c = surfaces::catenoid(1.0);
  const auto tc = total_curvature(MinimalSurface(c), 512);
  EXPECT_NEAR(tc.value, -4 * kPi * std::tanh(1.0), 1e-3);
  EXPECT_TRUE(tc.tail_warning);
  EXPECT_NEAR(tc.value + tc.tail_estimate, -4 * kPi, 0.05);
}

TEST(TotalCurvature, ResolutionValidated) {
  EXPECT_THROW(total_curvature(MinimalSurface(surfaces::plane()), 32), std::invalid_argument);
}

TEST(Scaling, ScaledSurfaceIsHomothetic) {
  const MinimalSurface f(surfaces::catenoid());
  const MinimalSurface g = f.scaled(3.0);
  const Complex z(1.4, 0.6);
  EXPECT_LT((g.evaluate(z) - 3.0 * f.evaluate(z)).norm(), 1e-13);
  EXPECT_NEAR(g.conformal_factor(z), 3.0 * f.conformal_factor(z), 1e-14);
}

}  // namespace
