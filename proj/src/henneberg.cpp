#include "minlab/henneberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Geometry>

#include "minlab/bounds.hpp"
#include "minlab/surfaces.hpp"

namespace minlab::henneberg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOracleTolerance = 1e-8;
constexpr double kLineTolerance = 1e-9;

double base_angle(int m) { return kPi / (2.0 * (m + 1)); }

weierstrass::MinimalSurface surface_of(const HennebergSurface& s) {
  return weierstrass::MinimalSurface(s.data);
}

Complex random_point(std::mt19937_64& rng, double r_lo, double r_hi) {
  std::uniform_real_distribution<double> log_r(std::log(r_lo), std::log(r_hi));
  std::uniform_real_distribution<double> theta(0.0, 2.0 * kPi);
  const double r = std::exp(log_r(rng));
  return std::polar(r, theta(rng));
}

}  // namespace

HennebergSurface make(int m) {
  if (m < 1 || m % 2 == 0) {
    throw std::invalid_argument("henneberg::make: m must be odd and >= 1, got " +
                                std::to_string(m));
  }
  HennebergSurface s;
  s.m = m;
  s.data.g = LaurentPoly::monomial(1);
  s.data.omega = LaurentPoly::from_pairs({{m - 1, 1.0}, {-(m + 3), -1.0}});
  s.data.domain = {0.2, 5.0};
  s.data.quotient = true;
  s.data.base_point = std::polar(1.0, base_angle(m));
  return s;
}

Eigen::Vector3d closed_form(int m, double r, double theta) {
  const double md = m;
  const double m2 = m + 2.0;
  const double rm = std::pow(r, md);
  const double rm2 = std::pow(r, m2);
  const double cm = std::cos(md * theta);
  const double sm = std::sin(md * theta);
  const double cm2 = std::cos(m2 * theta);
  const double sm2 = std::sin(m2 * theta);
  const double x1 = 0.5 * (rm * cm / md + cm2 / (m2 * rm2)) - 0.5 * (rm2 * cm2 / m2 + cm / (md * rm));
  const double x2 = 0.5 * (sm2 / (m2 * rm2) - rm * sm / md) - 0.5 * (rm2 * sm2 / m2 - sm / (md * rm));
  const double k = m + 1.0;
  const double x3 = (std::pow(r, k) + std::pow(r, -k)) * std::cos(k * theta) / k;
  return {x1, x2, x3};
}

VerificationReport oracle_match(const HennebergSurface& surface, int sample_count,
                                std::uint64_t seed) {
  if (sample_count < 100) throw std::invalid_argument("oracle_match: sample_count must be >= 100");
  const weierstrass::MinimalSurface f = surface_of(surface);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  double worst_r = 0.0;
  for (int k = 0; k < sample_count; ++k) {
    const Complex z = random_point(rng, 0.1, 10.0);
    const double err =
        (f.evaluate(z) - closed_form(surface.m, std::abs(z), std::arg(z))).norm();
    if (err > worst) {
      worst = err;
      worst_r = std::abs(z);
    }
  }
  VerificationReport rep;
  rep.check = "oracle";
  rep.surface = "henneberg:" + std::to_string(surface.m);
  rep.params = {{"m", static_cast<double>(surface.m)},
                {"samples", static_cast<double>(sample_count)},
                {"seed", static_cast<double>(seed)},
                {"worst_r", worst_r}};
  rep.measured = worst;
  rep.bound = kOracleTolerance;
  rep.relation = "<";
  rep.settle();
  rep.note = "termwise Weierstrass integral against the polar closed form, r log-uniform on [0.1, 10]";
  return rep;
}

std::vector<Eigen::Vector3d> line_directions(const HennebergSurface& surface) {
  const weierstrass::MinimalSurface f = surface_of(surface);
  std::vector<Eigen::Vector3d> out;
  for (int j = 1; j <= 2 * surface.m + 1; j += 2) {
    Eigen::Vector3d p = f.evaluate(std::polar(2.0, j * base_angle(surface.m)));
    p.z() = 0.0;
    out.push_back(p.normalized());
  }
  return out;
}

std::vector<Eigen::Matrix3d> bisector_reflections(const HennebergSurface& surface) {
  std::vector<double> beta;
  for (const auto& d : line_directions(surface)) {
    double b = std::atan2(d.y(), d.x());
    b = std::fmod(b, kPi);
    if (b < 0.0) b += kPi;
    beta.push_back(b);
  }
  std::sort(beta.begin(), beta.end());
  std::vector<Eigen::Matrix3d> out;
  const Eigen::Vector3d e3 = Eigen::Vector3d::UnitZ();
  for (std::size_t k = 0; k < beta.size(); ++k) {
    const double next = (k + 1 < beta.size()) ? beta[k + 1] : beta.front() + kPi;
    const double gamma = 0.5 * (beta[k] + next);
    const Eigen::Vector3d b(std::cos(gamma), std::sin(gamma), 0.0);
    out.push_back(2.0 * b * b.transpose() + 2.0 * e3 * e3.transpose() -
                  Eigen::Matrix3d::Identity());
  }
  return out;
}

std::vector<Eigen::Matrix3d> line_rotations(const HennebergSurface& surface) {
  std::vector<Eigen::Matrix3d> out;
  for (const auto& d : line_directions(surface)) {
    out.push_back(2.0 * d * d.transpose() - Eigen::Matrix3d::Identity());
  }
  return out;
}

namespace {

std::int64_t cell_key(const Eigen::Vector3d& p, double cell, int dx, int dy, int dz) {
  const auto cx = static_cast<std::int64_t>(std::floor(p.x() / cell)) + dx;
  const auto cy = static_cast<std::int64_t>(std::floor(p.y() / cell)) + dy;
  const auto cz = static_cast<std::int64_t>(std::floor(p.z() / cell)) + dz;
  // Collisions only add candidates; distances are computed exactly.
  return (cx * 73856093LL) ^ (cy * 19349663LL) ^ (cz * 83492791LL);
}

}  // namespace

PointCloud::PointCloud(const HennebergSurface& surface) : surface_(surface.data) {
  // Relative cell size in R^3 is about (m + 2) times the parameter step, so
  // the grid is refined with m, up to a memory cap.
  const int n_r = std::clamp(32 * (surface.m + 2) + 1, 161, 513);
  const int n_t = std::clamp(128 * (surface.m + 2), 512, 4096);
  const double lo = std::log(0.5);
  h_ = (std::log(2.0) - lo) / (n_r - 1);
  dtheta_ = 2.0 * kPi / n_t;
  diagonal_ = std::hypot(h_, dtheta_);
  points_.reserve(static_cast<std::size_t>(n_r) * n_t);
  double min_edge = std::numeric_limits<double>::infinity();
  double max_edge = 0.0;
  for (int i = 0; i < n_r; ++i) {
    for (int j = 0; j < n_t; ++j) {
      const Complex z = std::polar(std::exp(lo + i * h_), j * dtheta_);
      points_.push_back(surface_.evaluate(z));
      const double edge = std::abs(z) * diagonal_ * surface_.conformal_factor(z);
      if (edge > 0.0) min_edge = std::min(min_edge, edge);
      max_edge = std::max(max_edge, edge);
    }
  }
  // Level k has cell size min_edge * 4^k; a query uses the first level whose
  // cell covers its search radius.
  for (double cell = min_edge;; cell *= 4.0) {
    Level level;
    level.cell = cell;
    std::vector<std::pair<std::int64_t, std::uint32_t>> keyed;
    keyed.reserve(points_.size());
    for (std::size_t k = 0; k < points_.size(); ++k) {
      keyed.emplace_back(cell_key(points_[k], cell, 0, 0, 0), static_cast<std::uint32_t>(k));
    }
    std::sort(keyed.begin(), keyed.end());
    for (const auto& [key, idx] : keyed) {
      level.keys.push_back(key);
      level.order.push_back(idx);
    }
    levels_.push_back(std::move(level));
    if (cell >= max_edge) break;
  }
}

double PointCloud::tolerance(Complex z) const {
  double lam = 0.0;
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) {
      lam = std::max(lam, surface_.conformal_factor(z * std::exp(Complex(0.5 * a * h_, 0.5 * b * dtheta_))));
    }
  }
  return std::abs(z) * diagonal_ * lam;
}

double PointCloud::nearest_in(const Level& level, const Eigen::Vector3d& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dz = -1; dz <= 1; ++dz) {
        const std::int64_t k = cell_key(p, level.cell, dx, dy, dz);
        auto [lo, hi] = std::equal_range(level.keys.begin(), level.keys.end(), k);
        for (auto it = lo; it != hi; ++it) {
          best = std::min(best, (points_[level.order[it - level.keys.begin()]] - p).norm());
        }
      }
    }
  }
  return best;
}

double PointCloud::distance(const Eigen::Vector3d& p, double hint) const {
  for (const Level& level : levels_) {
    if (level.cell < hint) continue;
    const double best = nearest_in(level, p);
    // Every point within one cell of p lies in the 27 cells searched.
    if (best <= level.cell) return best;
    break;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : points_) best = std::min(best, (q - p).norm());
  return best;
}

double cloud_deviation(const HennebergSurface& surface, const PointCloud& cloud,
                       const Eigen::Matrix3d& transform, int sample_count, std::uint64_t seed) {
  const weierstrass::MinimalSurface f = surface_of(surface);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int k = 0; k < sample_count; ++k) {
    const Complex z = random_point(rng, 0.6, 1.0 / 0.6);
    const double tol = cloud.tolerance(z);
    worst = std::max(worst, cloud.distance(transform * f.evaluate(z), tol) / tol);
  }
  return worst;
}

std::vector<SymmetryTest> symmetry_tests(const HennebergSurface& surface, int sample_count,
                                         std::uint64_t seed) {
  const weierstrass::MinimalSurface f = surface_of(surface);
  const auto dirs = line_directions(surface);
  std::vector<SymmetryTest> out;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_r(std::log(0.2), std::log(5.0));
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    const int j = 2 * static_cast<int>(k) + 1;
    SymmetryTest t{"line_j" + std::to_string(j), 0.0, kLineTolerance};
    for (int s = 0; s < sample_count; ++s) {
      const double r = std::exp(log_r(rng));
      const double angle = j * base_angle(surface.m) + ((s % 2) ? kPi : 0.0);
      const Eigen::Vector3d p = f.evaluate(std::polar(r, angle));
      const double scale = std::max(1.0, p.norm());
      t.deviation = std::max({t.deviation, std::abs(p.z()) / scale, p.cross(dirs[k]).norm() / scale});
    }
    out.push_back(t);
  }

  const PointCloud cloud(surface);
  const auto reflections = bisector_reflections(surface);
  for (std::size_t k = 0; k < reflections.size(); ++k) {
    out.push_back({"bisector_reflection_" + std::to_string(k),
                   cloud_deviation(surface, cloud, reflections[k], sample_count, seed + 1 + k),
                   1.0});
  }
  const auto rotations = line_rotations(surface);
  for (std::size_t k = 0; k < rotations.size(); ++k) {
    out.push_back({"line_rotation_j" + std::to_string(2 * k + 1),
                   cloud_deviation(surface, cloud, rotations[k], sample_count, seed + 101 + k),
                   1.0});
  }
  return out;
}

VerificationReport symmetry_check(const HennebergSurface& surface, int sample_count,
                                  std::uint64_t seed) {
  if (sample_count < 100) throw std::invalid_argument("symmetry_check: sample_count must be >= 100");
  const auto tests = symmetry_tests(surface, sample_count, seed);
  VerificationReport rep;
  rep.check = "symmetry";
  rep.surface = "henneberg:" + std::to_string(surface.m);
  rep.params = {{"m", static_cast<double>(surface.m)},
                {"samples", static_cast<double>(sample_count)}};
  double worst = 0.0;
  std::ostringstream failed;
  for (const auto& t : tests) {
    rep.params.emplace_back(t.name, t.deviation / t.tolerance);
    worst = std::max(worst, t.deviation / t.tolerance);
    if (!t.pass()) failed << ' ' << t.name;
  }
  rep.measured = worst;
  rep.bound = 1.0;
  rep.relation = "<";
  rep.settle();
  rep.note = "max deviation / tolerance over line, reflection and rotation generators; "
             "point-cloud tolerance is one local grid cell";
  if (!failed.str().empty()) rep.note += "; failed:" + failed.str();
  return rep;
}

int gauss_degree(const LaurentPoly& g) {
  if (g.derivative().is_zero()) return 0;
  return std::max(*g.max_exponent(), 0) - std::min(*g.min_exponent(), 0);
}

StabilityCertificate stability_certificate(const weierstrass::MinimalSurface& surface) {
  StabilityCertificate c;
  const auto& data = surface.data();
  c.gauss_degree = gauss_degree(data.g);
  if (!data.quotient) {
    c.reason = "orientable data: the criterion concerns one-sided quotients";
    return c;
  }
  if (c.gauss_degree != 1) {
    c.reason = "Gauss map has degree " + std::to_string(c.gauss_degree) + ", not 1";
    return c;
  }
  const LaurentPoly dg = data.g.derivative();
  if (dg.terms().size() != 1) {
    c.reason = "g' is not a monomial; nonvanishing on the punctured plane is not certified";
    return c;
  }
  // g must descend: g(-1/conj z) = -1/conj g(z).
  for (int k = 0; k < 16; ++k) {
    const Complex z = std::polar(0.5 + 0.25 * k, 0.7 + 0.37 * k);
    const Complex lhs = data.g(-1.0 / std::conj(z));
    const Complex rhs = -1.0 / std::conj(data.g(z));
    if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(rhs))) {
      c.reason = "g does not commute with the antipodal maps";
      return c;
    }
  }
  c.applicable = true;
  c.stable = true;
  c.index_lb = bounds::index_lower_bound(surfaces::topology_profile(surface));
  c.reason = "unoriented Gauss map is a diffeomorphism of the projective plane";
  return c;
}

VerificationReport stability_report(const weierstrass::MinimalSurface& surface,
                                    const std::string& surface_name) {
  const StabilityCertificate c = stability_certificate(surface);
  VerificationReport rep;
  rep.check = "stability";
  rep.surface = surface_name;
  rep.params = {{"gauss_degree", static_cast<double>(c.gauss_degree)},
                {"stable", c.stable ? 1.0 : 0.0}};
  rep.measured = c.index_lb;
  rep.bound = 0.0;
  rep.relation = "<=";
  rep.settle();
  rep.vacuous = !c.applicable;
  rep.note = c.reason;
  return rep;
}

}  // namespace minlab::henneberg
