#include "minlab/comparison.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace minlab::comparison {

ExtendedRadius ExtendedRadius::finite(double value) {
  if (!(value >= 0.0) || std::isinf(value)) {
    throw std::invalid_argument("ExtendedRadius::finite: value must be finite and >= 0");
  }
  return ExtendedRadius(value);
}

double ExtendedRadius::value() const {
  if (!value_) throw std::logic_error("ExtendedRadius::value: radius is infinite");
  return *value_;
}

double ExtendedRadius::as_double() const {
  return value_ ? *value_ : std::numeric_limits<double>::infinity();
}

std::string ExtendedRadius::to_string() const {
  if (!value_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << *value_;
  return os.str();
}

std::partial_ordering operator<=>(const ExtendedRadius& lhs, const ExtendedRadius& rhs) {
  if (lhs.is_infinite() && rhs.is_infinite()) return std::partial_ordering::equivalent;
  if (lhs.is_infinite()) return std::partial_ordering::greater;
  if (rhs.is_infinite()) return std::partial_ordering::less;
  return *lhs.value_ <=> *rhs.value_;
}

ExtendedRadius min(const ExtendedRadius& lhs, const ExtendedRadius& rhs) {
  return (rhs < lhs) ? rhs : lhs;
}

void ComparisonParams::validate() const {
  if (!(H0 >= 0.0)) throw std::invalid_argument("ComparisonParams: H0 must be >= 0");
  if (R1.is_finite() && !(R1.value() > 0.0)) {
    throw std::invalid_argument("ComparisonParams: R1 must be > 0");
  }
  if (n < 1 || n >= m) throw std::invalid_argument("ComparisonParams: need 1 <= n < m");
  if (!std::isfinite(a)) throw std::invalid_argument("ComparisonParams: a must be finite");
}

ExtendedRadius interval_end(double a) {
  if (a > 0.0) return ExtendedRadius::finite(std::numbers::pi / std::sqrt(a));
  return ExtendedRadius::infinite();
}

namespace {

void check_domain(double a, double t, const char* who) {
  if (!(t >= 0.0)) throw std::domain_error(std::string(who) + ": t must be >= 0");
  if (a > 0.0 && !(t < std::numbers::pi / std::sqrt(a))) {
    throw std::domain_error(std::string(who) + ": t outside [0, pi/sqrt(a))");
  }
}

}  // namespace

double s_a(double a, double t) {
  check_domain(a, t, "s_a");
  if (a > 0.0) {
    const double k = std::sqrt(a);
    return std::sin(k * t) / k;
  }
  if (a < 0.0) {
    const double k = std::sqrt(-a);
    return std::sinh(k * t) / k;
  }
  return t;
}

double ds_a(double a, double t) {
  check_domain(a, t, "ds_a");
  if (a > 0.0) return std::cos(std::sqrt(a) * t);
  if (a < 0.0) return std::cosh(std::sqrt(-a) * t);
  return 1.0;
}

double f_a(double a, double t) {
  check_domain(a, t, "f_a");
  if (a == 0.0) return 0.0;
  const double k = std::sqrt(std::abs(a));
  const double x = k * t;
  if (x < kSeriesSwitch) {
    // 1 - x cot x = x^2/3 + x^4/45 + 2x^6/945 + x^8/4725 + ..., with x^2 = a t^2.
    const double u = a * t * t;
    return a * (1.0 / 3.0 +
                u * (1.0 / 45.0 +
                     u * (2.0 / 945.0 +
                          u * (1.0 / 4725.0 + u * (2.0 / 93555.0 + u * (1382.0 / 638512875.0))))));
  }
  const double ratio = (a > 0.0) ? x / std::tan(x) : x / std::tanh(x);
  return (1.0 - ratio) / (t * t);
}

ExtendedRadius mean_curvature_radius(double a, double H0) {
  if (!(H0 >= 0.0)) throw std::invalid_argument("mean_curvature_radius: H0 must be >= 0");
  if (a > 0.0) {
    const double k = std::sqrt(a);
    // arccot(H0/k) in (0, pi/2], written so that H0 = 0 needs no special case.
    return ExtendedRadius::finite(std::atan2(k, H0) / k);
  }
  if (a == 0.0) {
    if (H0 == 0.0) return ExtendedRadius::infinite();
    return ExtendedRadius::finite(1.0 / H0);
  }
  const double k = std::sqrt(-a);
  if (H0 <= k) return ExtendedRadius::infinite();
  return ExtendedRadius::finite(std::atanh(k / H0) / k);
}

ExtendedRadius r1(const ComparisonParams& params) {
  params.validate();
  return min(params.R1, mean_curvature_radius(params.a, params.H0));
}

double unit_ball_volume(int n) {
  if (n < 1) throw std::invalid_argument("unit_ball_volume: n must be >= 1");
  const double half = 0.5 * n;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double area_lower_bound(const ComparisonParams& params, double r, CurvatureRadius at) {
  const ExtendedRadius limit = r1(params);
  if (!(r > 0.0)) throw std::domain_error("area_lower_bound: r must be > 0");
  if (limit.is_finite() && r > limit.value()) {
    throw std::domain_error("area_lower_bound: r exceeds r1 = " + limit.to_string());
  }
  const double n = params.n;
  const double omega = unit_ball_volume(params.n);
  if (params.a <= 0.0) return omega * std::pow(r, n) * std::exp(-n * params.H0 * r);

  // a > 0 forces r1 <= R0 < pi / (2 sqrt(a)), so f_a is defined at r1.
  const double fa = (at == CurvatureRadius::kR1) ? f_a(params.a, limit.value())
                                                  : f_a(params.a, r);
  return omega * std::pow(r, n) * std::exp(-n * r * (params.H0 + 0.5 * fa * r));
}

ExtendedRadius yau_r2(const ComparisonParams& params) {
  if (params.n != 2) throw std::invalid_argument("yau_r2: requires n == 2");
  const ExtendedRadius limit = r1(params);

  // phi(r) = area_lower_bound / r^2, nonincreasing on (0, r1].
  const double fa = (params.a > 0.0) ? f_a(params.a, limit.value()) : 0.0;
  auto phi = [&](double r) {
    return std::numbers::pi * std::exp(-2.0 * r * (params.H0 + 0.5 * fa * r));
  };

  if (params.a <= 0.0 && params.H0 == 0.0) return limit;

  constexpr double kCap = 1e6;
  double hi = limit.is_finite() ? std::min(limit.value(), kCap) : kCap;
  if (phi(hi) >= 3.0) {
    if (limit.is_finite() && hi == limit.value()) return limit;
    // r1 beyond the cap: phi decays since H0 > 0 or a > 0, so widen until it drops.
    while (phi(hi) >= 3.0) {
      hi *= 2.0;
      if (limit.is_finite() && hi >= limit.value()) return limit;
      if (std::isinf(hi)) return limit;
    }
  }
  double lo = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) >= 3.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-12 * hi) break;
  }
  return ExtendedRadius::finite(lo);
}

double chord_area_constant(double eps0, const ExtendedRadius& r2) {
  if (!(eps0 > 0.0)) throw std::invalid_argument("chord_area_constant: eps0 must be > 0");
  if (r2.is_infinite()) return eps0;
  const double r = r2.value();
  return std::min(eps0, r * r / eps0);
}

}  // namespace minlab::comparison
