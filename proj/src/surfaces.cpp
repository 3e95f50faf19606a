#include "minlab/surfaces.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "minlab/henneberg.hpp"

namespace minlab::surfaces {

weierstrass::WeierstrassData plane() {
  return {LaurentPoly(), LaurentPoly(1.0), {0.0, 4.5}, false, 0.0};
}

weierstrass::WeierstrassData enneper() {
  return {LaurentPoly::monomial(1), LaurentPoly(1.0), {0.0, 3.0}, false, 0.0};
}

weierstrass::WeierstrassData catenoid(double half_width) {
  if (!(half_width > 0.0)) throw std::invalid_argument("catenoid: half_width must be > 0");
  return {LaurentPoly::monomial(1),
          LaurentPoly::monomial(-2),
          {std::exp(-half_width), std::exp(half_width)},
          false,
          1.0};
}

std::optional<NamedSurface> builtin(const std::string& name) {
  if (name == "plane") return NamedSurface{name, plane(), std::nullopt};
  if (name == "enneper") return NamedSurface{name, enneper(), std::nullopt};
  if (name == "catenoid") return NamedSurface{name, catenoid(), std::nullopt};
  const std::string prefix = "henneberg:";
  if (name.rfind(prefix, 0) != 0) return std::nullopt;

  const char* first = name.data() + prefix.size();
  const char* last = name.data() + name.size();
  int m = 0;
  const auto [ptr, ec] = std::from_chars(first, last, m);
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("surface: expected henneberg:<odd m>, got '" + name + "'");
  }
  if (m > kMaxHennebergM) {
    throw std::invalid_argument("surface: henneberg m must be <= " +
                                std::to_string(kMaxHennebergM));
  }
  return NamedSurface{name, henneberg::make(m).data, m};
}

bounds::TopologyProfile topology_profile(const weierstrass::MinimalSurface& surface) {
  bounds::TopologyProfile p;
  p.orientable = !surface.data().quotient;
  p.genus = 0;
  for (const auto& e : weierstrass::end_profiles(surface)) p.ends.push_back(e.multiplicity);
  p.branching = weierstrass::total_branching_order(surface);
  return p;
}

}  // namespace minlab::surfaces
