#pragma once

// Built-in example surfaces and the topology profile read off Weierstrass data.

#include <optional>
#include <string>

#include "minlab/bounds.hpp"
#include "minlab/weierstrass.hpp"

namespace minlab::surfaces {

/// g = 0, omega = 1 on |z| <= 4.5; f(z) = (x/2, -y/2, 0) with f(0) = 0.
weierstrass::WeierstrassData plane();

/// g = z, omega = 1 on |z| <= 3, based at 0.
weierstrass::WeierstrassData enneper();

/// g = z, omega = z^-2 on e^-half_width <= |z| <= e^half_width, based at 1
/// (a point of the waist circle, which f maps into the plane x3 = 0). The
/// default pi/2 gives square log-polar cells when n_theta = 2 n_r.
weierstrass::WeierstrassData catenoid(double half_width = 1.5707963267948966);

struct NamedSurface {
  std::string name;
  weierstrass::WeierstrassData data;
  /// Set for henneberg:<m>.
  std::optional<int> henneberg_m;
};

/// Largest Henneberg parameter accepted by name.
inline constexpr int kMaxHennebergM = 99;

/// Resolves plane, enneper, catenoid and henneberg:<m>. Returns nullopt for
/// any other name; throws std::invalid_argument for a malformed or
/// out-of-range henneberg:<m>.
std::optional<NamedSurface> builtin(const std::string& name);

/// Orientability, genus 0, end multiplicities and total branching order.
/// Only genus-zero data is representable, so genus is always 0.
bounds::TopologyProfile topology_profile(const weierstrass::MinimalSurface& surface);

}  // namespace minlab::surfaces
