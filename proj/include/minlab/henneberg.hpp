#pragma once

// Generalized Henneberg surfaces H_m (m odd): g = z and
// omega = z^-(3+m) (z^(2m+2) - 1) on the punctured plane, taken modulo the
// antipodal map z -> -1/conj(z).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "minlab/report.hpp"
#include "minlab/weierstrass.hpp"

namespace minlab::henneberg {

struct HennebergSurface {
  int m = 1;
  /// Quotient flag set; domain [1/5, 5]; based at exp(i pi / (2(m+1))), where
  /// f vanishes.
  weierstrass::WeierstrassData data;
};

/// Throws std::invalid_argument unless m is odd and >= 1.
HennebergSurface make(int m);

/// Explicit polar parameterization of H_m, evaluated term by term.
Eigen::Vector3d closed_form(int m, double r, double theta);

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;

/// Max |evaluate(r e^{i theta}) - closed_form(m, r, theta)| over random
/// samples with r log-uniform on [0.1, 10] and theta uniform. Pass iff < 1e-8.
/// Throws std::invalid_argument for sample_count < 100.
VerificationReport oracle_match(const HennebergSurface& surface, int sample_count,
                                std::uint64_t seed = kDefaultSeed);

/// One tested isometry: name, worst deviation and the tolerance it is held to.
/// Point-cloud tests report deviation already divided by the local tolerance.
struct SymmetryTest {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass() const { return deviation < tolerance; }
};

/// Unit horizontal directions of the lines f(l_j), j odd, in the order
/// j = 1, 3, ..., 2m+1.
std::vector<Eigen::Vector3d> line_directions(const HennebergSurface& surface);

/// Reflections in the vertical planes bisecting consecutive lines.
std::vector<Eigen::Matrix3d> bisector_reflections(const HennebergSurface& surface);

/// Rotations by pi about the lines.
std::vector<Eigen::Matrix3d> line_rotations(const HennebergSurface& surface);

/// Dense log-polar sample of H_m on r in [1/2, 2], the reference point
/// cloud for the isometry tests.
class PointCloud {
 public:
  explicit PointCloud(const HennebergSurface& surface);

  /// Parameter diagonal sqrt(h^2 + dtheta^2) of one grid cell, h the log-radial step.
  double cell_diagonal() const { return diagonal_; }

  /// Covering tolerance at f(z): the R^3 size of a grid cell around z,
  /// |z| * cell_diagonal() * max lambda over the cell corners.
  double tolerance(Complex z) const;

  /// Exact distance from p to the nearest cloud point.
  double distance(const Eigen::Vector3d& p, double hint) const;

  std::size_t size() const { return points_.size(); }

 private:
  struct Level {
    double cell = 0.0;
    std::vector<std::int64_t> keys;      // sorted
    std::vector<std::uint32_t> order;    // point indices in key order
  };
  double nearest_in(const Level& level, const Eigen::Vector3d& p) const;

  weierstrass::MinimalSurface surface_;
  std::vector<Eigen::Vector3d> points_;
  std::vector<Level> levels_;
  double h_ = 0.0;
  double dtheta_ = 0.0;
  double diagonal_ = 0.0;
};

/// Largest distance(T f(z)) / tolerance(z) for random z with |z| in
/// [0.6, 1/0.6]. Values below 1 mean T maps the samples onto the cloud.
double cloud_deviation(const HennebergSurface& surface, const PointCloud& cloud,
                       const Eigen::Matrix3d& transform, int sample_count,
                       std::uint64_t seed = kDefaultSeed);

/// All generator tests: line images (x3 = 0 and collinearity, relative
/// tolerance 1e-9), bisector reflections and rotations about the lines.
std::vector<SymmetryTest> symmetry_tests(const HennebergSurface& surface, int sample_count,
                                         std::uint64_t seed = kDefaultSeed);

/// Folds symmetry_tests into one report: measured = max deviation/tolerance,
/// bound 1. Throws std::invalid_argument for sample_count < 100.
VerificationReport symmetry_check(const HennebergSurface& surface, int sample_count,
                                  std::uint64_t seed = kDefaultSeed);

struct StabilityCertificate {
  /// The criterion applies: quotient data whose Gauss map has degree 1,
  /// nonvanishing derivative and commutes with the antipodal maps.
  bool applicable = false;
  bool stable = false;
  int gauss_degree = 0;
  int index_lb = 0;
  std::string reason;
};

/// Degree of g as a map of the Riemann sphere (0 for constant g).
int gauss_degree(const LaurentPoly& g);

StabilityCertificate stability_certificate(const weierstrass::MinimalSurface& surface);

/// measured = index lower bound, bound = 0; vacuous when not applicable.
VerificationReport stability_report(const weierstrass::MinimalSurface& surface,
                                    const std::string& surface_name);

}  // namespace minlab::henneberg
