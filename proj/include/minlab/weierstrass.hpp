#pragma once

// Branched minimal surfaces in R^3 from Weierstrass data (g, omega) whose
// entries are Laurent polynomials on a punctured plane annulus.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "minlab/laurent.hpp"

namespace minlab::weierstrass {

/// {r_min <= |z| <= r_max}. r_min == 0 is a disk domain (the origin is then
/// a mesh vertex, allowed only for data regular at 0).
struct Annulus {
  double r_min = 0.0;
  double r_max = 1.0;

  bool is_disk() const { return r_min == 0.0; }
  void validate() const;
};

/// Gauss map g and omega = omega(z) dz. When `quotient` is set the data is the
/// oriented double cover of a non-orientable surface under z -> -1/conj(z);
/// that symmetry is assumed, not checked.
struct WeierstrassData {
  LaurentPoly g;
  LaurentPoly omega;
  Annulus domain;
  bool quotient = false;
  Complex base_point = 1.0;
};

/// The three holomorphic forms (coefficients of dz) whose real integral
/// parameterizes the surface.
using PhiForms = std::array<LaurentPoly, 3>;

PhiForms phi_forms(const WeierstrassData& data);

/// Residues of the forms at 0 with imaginary part at least this are rejected.
inline constexpr double kResidueTolerance = 1e-12;

struct BranchPoint {
  Complex z;
  int order = 1;
  Eigen::Vector3d image;
};

enum class Puncture { kZero, kInfinity, kZeroAndInfinity };

struct EndProfile {
  Puncture location = Puncture::kInfinity;
  int multiplicity = 1;
  int spinning() const { return multiplicity; }
};

/// Validated, immutable surface. Holds the termwise antiderivatives so that
/// evaluation is exact up to rounding and path independent.
class MinimalSurface {
 public:
  /// Throws std::invalid_argument for a bad domain or base point, and
  /// std::domain_error when some form has a residue with |Im| >= 1e-12.
  explicit MinimalSurface(WeierstrassData data);

  const WeierstrassData& data() const { return data_; }
  const PhiForms& phi() const { return phi_; }

  /// True when some form has a pole (or log term) at 0.
  bool singular_at_zero() const { return singular_at_zero_; }

  /// f(z) = Re int_{base}^{z} phi. Throws std::domain_error at z = 0 when the
  /// data is singular there.
  Eigen::Vector3d evaluate(Complex z) const;

  /// lambda(z) = (1 + |g|^2) |omega| / 2; the metric is lambda |dz|.
  double conformal_factor(Complex z) const;

  /// Gauss curvature -(4 |g'| / (|omega| (1 + |g|^2)^2))^2.
  /// Throws std::domain_error where lambda vanishes.
  double gauss_curvature(Complex z) const;

  /// K lambda^2 = -4 |g'|^2 / (1 + |g|^2)^2, finite everywhere.
  double curvature_density(Complex z) const;

  /// Returns a copy with omega scaled by c > 0 (the surface scales by c).
  MinimalSurface scaled(double c) const;

 private:
  Eigen::Vector3d primitive(Complex z) const;

  WeierstrassData data_;
  PhiForms phi_;
  std::array<LaurentPoly, 3> antiderivative_;
  std::array<double, 3> log_coeff_{};
  LaurentPoly dg_;
  bool singular_at_zero_ = false;
  Eigen::Vector3d base_value_ = Eigen::Vector3d::Zero();
};

/// Zeros of omega inside the domain with their vanishing orders. For quotient
/// data one representative per antipodal pair is returned (the one with
/// argument in [0, pi)). Throws std::domain_error if a zero lies on a
/// boundary circle of the domain.
std::vector<BranchPoint> branch_points(const MinimalSurface& surface);

/// Sum of branch orders, counted on the quotient when the flag is set.
int total_branching_order(const MinimalSurface& surface);

/// Ends at the punctures 0 and infinity, with multiplicity equal to the
/// highest pole order among the three forms minus one. Quotient data merges
/// both punctures into one end and throws std::domain_error if their
/// multiplicities differ.
std::vector<EndProfile> end_profiles(const MinimalSurface& surface);

struct TotalCurvatureResult {
  double value = 0.0;
  /// Estimate of the integral over the part of the punctured plane outside
  /// the domain (same halving convention as value).
  double tail_estimate = 0.0;
  bool tail_warning = false;
  std::string message;
};

/// Midpoint-rule integral of K dA over the domain on a resolution x resolution
/// polar grid (log-spaced radially for annuli), halved for quotient data.
/// Throws std::invalid_argument for resolution < 64.
TotalCurvatureResult total_curvature(const MinimalSurface& surface, int resolution);

/// Roots of sum_k coeffs[k] z^k via eigenvalues of the companion matrix,
/// each refined by Newton steps on the polynomial.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

std::string to_string(Puncture p);

}  // namespace minlab::weierstrass
