#pragma once

// Comparison functions for space forms of constant curvature a, and the
// intrinsic area lower bounds derived from them.

#include <compare>
#include <limits>
#include <optional>
#include <string>

namespace minlab::comparison {

/// A nonnegative length that may be +infinity. Infinity is a state of the
/// type, not a sentinel double, so min and comparisons are total.
class ExtendedRadius {
 public:
  static ExtendedRadius infinite() { return ExtendedRadius(); }
  static ExtendedRadius finite(double value);

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  /// Throws std::logic_error when infinite.
  double value() const;

  /// The finite value, or +inf as a double. For printing and plotting only.
  double as_double() const;

  std::string to_string() const;

  friend bool operator==(const ExtendedRadius&, const ExtendedRadius&) = default;
  friend std::partial_ordering operator<=>(const ExtendedRadius& lhs,
                                           const ExtendedRadius& rhs);

 private:
  ExtendedRadius() = default;
  explicit ExtendedRadius(double v) : value_(v) {}

  std::optional<double> value_;
};

ExtendedRadius min(const ExtendedRadius& lhs, const ExtendedRadius& rhs);

/// Hypotheses of the monotonicity formula: sectional curvature <= a, mean
/// curvature <= H0, on an extrinsic ball of radius R1, for an n-dimensional
/// submanifold of an m-dimensional manifold.
struct ComparisonParams {
  double a = 0.0;
  double H0 = 0.0;
  ExtendedRadius R1 = ExtendedRadius::infinite();
  int n = 2;
  int m = 3;

  /// Throws std::invalid_argument unless H0 >= 0, R1 > 0, 1 <= n < m.
  void validate() const;
};

/// Upper end of I_a: pi/sqrt(a) for a > 0, infinity otherwise.
ExtendedRadius interval_end(double a);

/// Solution of x'' + a x = 0, x(0) = 0, x'(0) = 1.
/// Throws std::domain_error for t < 0 or t outside I_a.
double s_a(double a, double t);

/// Derivative of s_a.
double ds_a(double a, double t);

/// f_a(t) = (1 - t s_a'(t)/s_a(t)) / t^2, extended smoothly by a/3 at t = 0.
/// Uses a Taylor expansion when sqrt|a| t is below kSeriesSwitch.
double f_a(double a, double t);

/// The closed form loses about eps / x^2 to cancellation, the six-term series
/// about x^12 / 1e6; both stay below 1e-13 relative on either side of 0.1.
inline constexpr double kSeriesSwitch = 0.1;

/// Radius of a geodesic sphere in the space form of curvature a whose mean
/// curvature equals H0. Infinity when no such sphere exists.
ExtendedRadius mean_curvature_radius(double a, double H0);

/// r1 = min(R1, R0(a, H0)).
ExtendedRadius r1(const ComparisonParams& params);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Which radius f_a is evaluated at in the a > 0 branch.
enum class CurvatureRadius {
  kR1,        // f_a(r1), the sharp form of the proposition
  kPointwise  // f_a(r), the variant valid for every r <= r1
};

/// Lower bound for the volume of the intrinsic ball of radius r.
/// Throws std::domain_error when r <= 0 or r > r1 (r1 finite).
double area_lower_bound(const ComparisonParams& params, double r,
                        CurvatureRadius at = CurvatureRadius::kR1);

/// Largest r2 in (0, r1] with pi * exp(-2 r2 (H0 + f_a(r1) r2 / 2)) >= 3.
/// Requires n == 2.
ExtendedRadius yau_r2(const ComparisonParams& params);

/// C_A = min(eps0, r2^2 / eps0).
double chord_area_constant(double eps0, const ExtendedRadius& r2);

}  // namespace minlab::comparison
