#pragma once

// Closed-form index, spinning, boundary-count and chord-arc bounds for
// complete branched minimal surfaces of finite total curvature in R^3.

#include <vector>

namespace minlab::bounds {

struct TopologyProfile {
  bool orientable = true;
  /// Genus of the surface if orientable, of its oriented double cover otherwise.
  int genus = 0;
  /// End multiplicities d_j >= 1.
  std::vector<int> ends;
  /// Total branching order.
  int branching = 0;

  /// Throws std::invalid_argument on negative genus/branching, empty ends or d_j < 1.
  void validate() const;
};

/// Lower bound for the Morse index, clamped at 0.
int index_lower_bound(const TopologyProfile& profile);

/// Upper bound 3I - 2e + 2B + 5 on twice the total spinning.
int spinning_bound(int index, int ends, int branching);

/// sqrt((3I + 2B + 3) / 2).
double chord_arc_L(int index, int branching);

/// 8 L^3 + 2 pi L^2 - 20 L - pi/2 with L = chord_arc_L(I, B). Negative for
/// (0, 0); callers treat that case as vacuous.
double chord_arc_C(int index, int branching);

/// 3I + 2B - 1; negative means no such non-planar surface exists.
int boundary_count_bound(int index, int branching);

/// Sum of the end multiplicities.
int total_spinning(const TopologyProfile& profile);

struct BoundSet {
  int index_lb = 0;
  double L_hat = 0.0;
  double C_hat = 0.0;
  int b_max = 0;
  int spinning_2S_ub = 0;
};

/// Bounds for (I, B); index_lb and the spinning bound use `profile` when
/// given, otherwise index_lb is 0 and e = 1.
BoundSet bound_set(int index, int branching, const TopologyProfile* profile = nullptr);

}  // namespace minlab::bounds
