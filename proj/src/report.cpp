#include "minlab/report.hpp"

#include <cmath>
#include <stdexcept>

namespace minlab {

void VerificationReport::settle() {
  if (relation == "<" || relation == "<=") {
    margin = bound - measured;
  } else if (relation == ">" || relation == ">=") {
    margin = measured - bound;
  } else {
    throw std::logic_error("VerificationReport: unknown relation " + relation);
  }
  const bool strict = relation == "<" || relation == ">";
  pass = std::isfinite(measured) && (strict ? margin > 0.0 : margin >= 0.0);
}

}  // namespace minlab
