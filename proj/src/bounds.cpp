#include "minlab/bounds.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace minlab::bounds {

namespace {

void require_nonnegative(int index, int branching) {
  if (index < 0 || branching < 0) {
    throw std::invalid_argument("bounds: index and branching order must be >= 0");
  }
}

// ceil(num / 3) for possibly negative num.
int ceil_div3(int num) {
  return (num >= 0) ? (num + 2) / 3 : -((-num) / 3);
}

}  // namespace

void TopologyProfile::validate() const {
  if (genus < 0) throw std::invalid_argument("TopologyProfile: genus must be >= 0");
  if (branching < 0) throw std::invalid_argument("TopologyProfile: branching must be >= 0");
  if (ends.empty()) throw std::invalid_argument("TopologyProfile: need at least one end");
  for (int d : ends) {
    if (d < 1) throw std::invalid_argument("TopologyProfile: end multiplicities must be >= 1");
  }
}

int index_lower_bound(const TopologyProfile& profile) {
  profile.validate();
  int end_sum = 0;
  for (int d : profile.ends) end_sum += d + 1;
  const int rhs = profile.orientable
                      ? 2 * profile.genus + 2 * end_sum - 2 * profile.branching - 5
                      : profile.genus + 2 * end_sum - 2 * profile.branching - 4;
  return std::max(0, ceil_div3(rhs));
}

int spinning_bound(int index, int ends, int branching) {
  require_nonnegative(index, branching);
  if (ends < 1) throw std::invalid_argument("spinning_bound: need at least one end");
  return 3 * index - 2 * ends + 2 * branching + 5;
}

double chord_arc_L(int index, int branching) {
  require_nonnegative(index, branching);
  return std::sqrt(0.5 * (3.0 * index + 2.0 * branching + 3.0));
}

double chord_arc_C(int index, int branching) {
  const double L = chord_arc_L(index, branching);
  constexpr double pi = std::numbers::pi;
  return 8.0 * L * L * L + 2.0 * pi * L * L - 20.0 * L - 0.5 * pi;
}

int boundary_count_bound(int index, int branching) {
  require_nonnegative(index, branching);
  return 3 * index + 2 * branching - 1;
}

int total_spinning(const TopologyProfile& profile) {
  profile.validate();
  return std::accumulate(profile.ends.begin(), profile.ends.end(), 0);
}

BoundSet bound_set(int index, int branching, const TopologyProfile* profile) {
  BoundSet out;
  out.L_hat = chord_arc_L(index, branching);
  out.C_hat = chord_arc_C(index, branching);
  out.b_max = boundary_count_bound(index, branching);
  const int e = profile ? static_cast<int>(profile->ends.size()) : 1;
  out.spinning_2S_ub = spinning_bound(index, e, branching);
  out.index_lb = profile ? index_lower_bound(*profile) : 0;
  return out;
}

}  // namespace minlab::bounds
