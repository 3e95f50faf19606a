#pragma once

#include <string>
#include <utility>
#include <vector>

namespace minlab {

/// Outcome of one numerical check of an inequality.
struct VerificationReport {
  std::string check;
  std::string surface;
  /// Named inputs of the check, in insertion order.
  std::vector<std::pair<std::string, double>> params;
  double measured = 0.0;
  double bound = 0.0;
  /// Signed slack; positive when the inequality holds.
  double margin = 0.0;
  /// "<", "<=", ">=" or ">" : measured relation bound.
  std::string relation = "<=";
  int n_r = 0;
  int n_theta = 0;
  int stencil_order = 0;
  bool pass = false;
  /// True when the bound carries no information (hypotheses excluded); a
  /// vacuous check never counts as a failure.
  bool vacuous = false;
  std::string note;

  /// Sets margin and pass from measured, bound and relation.
  void settle();
};

}  // namespace minlab
