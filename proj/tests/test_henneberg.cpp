#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "minlab/henneberg.hpp"
#include "minlab/surfaces.hpp"

namespace {

using namespace minlab;
using namespace minlab::henneberg;
using weierstrass::MinimalSurface;
constexpr double kPi = std::numbers::pi;

// Composite Simpson integral of Re phi along the segment base -> z.
Eigen::Vector3d quadrature_oracle(const MinimalSurface& f, Complex z, int n = 4000) {
  const Complex a = f.data().base_point;
  const Complex dz = (z - a) / static_cast<double>(n);
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (int k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const Complex p = a + static_cast<double>(k) * dz;
    for (int c = 0; c < 3; ++c) sum[c] += w * (f.phi()[c](p) * dz).real();
  }
  return sum / 3.0;
}

TEST(Make, DataAndValidation) {
  const HennebergSurface h = make(3);
  EXPECT_TRUE(h.data.quotient);
  EXPECT_EQ(h.data.omega, LaurentPoly::from_pairs({{2, 1.0}, {-6, -1.0}}));
  EXPECT_THROW(make(2), std::invalid_argument);
  EXPECT_THROW(make(0), std::invalid_argument);
  EXPECT_THROW(make(-1), std::invalid_argument);
}

TEST(ClosedForm, AgreesWithPathQuadrature) {
  // Segments from the base point that stay away from the origin.
  for (int m : {1, 3}) {
    const MinimalSurface f(make(m).data);
    for (Complex z : {Complex(0.9, 0.8), Complex(1.4, 0.3), Complex(0.5, 0.6)}) {
      const Eigen::Vector3d q = quadrature_oracle(f, z);
      const Eigen::Vector3d c = closed_form(m, std::abs(z), std::arg(z));
      EXPECT_LT((q - c).norm(), 1e-9) << "m=" << m << " z=" << z;
    }
  }
}

TEST(ClosedForm, OracleMatchPassesForSmallM) {
  for (int m : {1, 3, 5}) {
    const VerificationReport r = oracle_match(make(m), 1000);
    EXPECT_TRUE(r.pass) << "m=" << m << " err=" << r.measured;
    EXPECT_EQ(r.relation, "<");
  }
  EXPECT_THROW(oracle_match(make(1), 10), std::invalid_argument);
}

TEST(ClosedForm, OracleIsSeedDeterministic) {
  const auto a = oracle_match(make(3), 200, 42);
  const auto b = oracle_match(make(3), 200, 42);
  EXPECT_EQ(a.measured, b.measured);
}

TEST(ClosedForm, AntipodalInvariance) {
  // f(-1/conj z) = f(z): the quotient is well defined.
  for (int m : {1, 5}) {
    for (auto [r, t] : {std::pair{0.7, 0.3}, std::pair{2.2, 4.0}}) {
      const Complex z = std::polar(r, t);
      const Complex w = -1.0 / std::conj(z);
      EXPECT_LT((closed_form(m, std::abs(z), std::arg(z)) -
                 closed_form(m, std::abs(w), std::arg(w)))
                    .norm(),
                1e-12);
    }
  }
}

TEST(Lines, DirectionsAreHorizontalUnitVectors) {
  for (int m : {1, 3}) {
    const auto dirs = line_directions(make(m));
    ASSERT_EQ(dirs.size(), static_cast<std::size_t>(m + 1));
    for (const auto& d : dirs) {
      EXPECT_NEAR(d.norm(), 1.0, 1e-14);
      EXPECT_EQ(d.z(), 0.0);
    }
  }
}

TEST(Lines, RaysMapIntoHorizontalLines) {
  const int m = 3;
  const MinimalSurface f(make(m).data);
  for (int j = 1; j <= 2 * m + 1; j += 2) {
    const double theta = j * kPi / (2.0 * (m + 1));
    const Eigen::Vector3d a = f.evaluate(std::polar(0.5, theta));
    const Eigen::Vector3d b = f.evaluate(std::polar(1.7, theta));
    EXPECT_NEAR(a.z(), 0.0, 1e-12);
    EXPECT_NEAR(b.z(), 0.0, 1e-12);
    // Collinear with the origin (the base point image).
    EXPECT_NEAR(a.x() * b.y() - a.y() * b.x(), 0.0, 1e-11);
  }
}

TEST(Symmetry, TrueIsometriesPass) {
  for (int m : {1, 3}) {
    const VerificationReport r = symmetry_check(make(m), 200);
    EXPECT_TRUE(r.pass) << "m=" << m << " " << r.measured << " " << r.note;
    const auto tests = symmetry_tests(make(m), 200);
    // Lines, m + 1 reflections and m + 1 rotations.
    EXPECT_GE(tests.size(), static_cast<std::size_t>(2 * (m + 1)));
  }
  EXPECT_THROW(symmetry_check(make(1), 50), std::invalid_argument);
}

TEST(Symmetry, MatricesAreOrthogonalInvolutions) {
  const auto h = make(3);
  for (const auto& M : bisector_reflections(h)) {
    EXPECT_LT((M * M - Eigen::Matrix3d::Identity()).norm(), 1e-13);
    EXPECT_NEAR(M.determinant(), -1.0, 1e-13);
  }
  for (const auto& M : line_rotations(h)) {
    EXPECT_LT((M * M - Eigen::Matrix3d::Identity()).norm(), 1e-13);
    EXPECT_NEAR(M.determinant(), 1.0, 1e-13);
  }
}

TEST(Symmetry, NegativeControlsAreRejected) {
  for (int m : {1, 3}) {
    const HennebergSurface h = make(m);
    const PointCloud cloud(h);
    const Eigen::Matrix3d flip = Eigen::Vector3d(1.0, 1.0, -1.0).asDiagonal();
    const Eigen::Matrix3d generic =
        Eigen::AngleAxisd(0.5, Eigen::Vector3d(1, 1, 1).normalized()).toRotationMatrix();
    const Eigen::Matrix3d small_turn =
        Eigen::AngleAxisd(kPi / (2.0 * (m + 1)), Eigen::Vector3d::UnitZ()).toRotationMatrix();
    EXPECT_LT(cloud_deviation(h, cloud, Eigen::Matrix3d::Identity(), 200), 1.0);
    EXPECT_GT(cloud_deviation(h, cloud, flip, 200), 2.0) << "m=" << m;
    EXPECT_GT(cloud_deviation(h, cloud, generic, 200), 2.0) << "m=" << m;
    EXPECT_GT(cloud_deviation(h, cloud, small_turn, 200), 2.0) << "m=" << m;
  }
}

TEST(PointCloudType, DistanceIsExact) {
  const HennebergSurface h = make(1);
  const PointCloud cloud(h);
  const MinimalSurface f(h.data);
  const Eigen::Vector3d p = f.evaluate(std::polar(1.0, 0.3));
  EXPECT_LT(cloud.distance(p, cloud.tolerance(std::polar(1.0, 0.3))),
            cloud.tolerance(std::polar(1.0, 0.3)));
  // A far point: compare against brute force over a few known surface points.
  const Eigen::Vector3d far(10.0, 0.0, 0.0);
  const double d = cloud.distance(far, 1.0);
  EXPECT_GT(d, 0.0);
  EXPECT_LE(d, (far - p).norm());
  EXPECT_GT(cloud.size(), 10000u);
}

TEST(Stability, HennebergCertified) {
  for (int m : {1, 3, 7}) {
    const StabilityCertificate c = stability_certificate(MinimalSurface(make(m).data));
    EXPECT_TRUE(c.applicable);
    EXPECT_TRUE(c.stable);
    EXPECT_EQ(c.gauss_degree, 1);
    EXPECT_EQ(c.index_lb, 0);
    const VerificationReport r = stability_report(MinimalSurface(make(m).data), "h");
    EXPECT_TRUE(r.pass);
    EXPECT_FALSE(r.vacuous);
  }
}

TEST(Stability, NotApplicableElsewhere) {
  const auto cat = stability_certificate(MinimalSurface(surfaces::catenoid()));
  EXPECT_FALSE(cat.applicable);
  weierstrass::WeierstrassData d = make(1).data;
  d.g = LaurentPoly::monomial(2);
  const auto deg2 = stability_certificate(MinimalSurface(d));
  EXPECT_FALSE(deg2.applicable);
  EXPECT_EQ(deg2.gauss_degree, 2);
  EXPECT_TRUE(stability_report(MinimalSurface(d), "deg2").vacuous);
}

TEST(GaussDegree, Values) {
  EXPECT_EQ(gauss_degree(LaurentPoly(3.0)), 0);
  EXPECT_EQ(gauss_degree(LaurentPoly::monomial(1)), 1);
  EXPECT_EQ(gauss_degree(LaurentPoly::monomial(-1)), 1);
  EXPECT_EQ(gauss_degree(LaurentPoly::from_pairs({{2, 1.0}, {-1, 1.0}})), 3);
}

}  // namespace
