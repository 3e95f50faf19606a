#include "minlab/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace minlab::weierstrass {

namespace {

constexpr Complex kI(0.0, 1.0);

double wrap_angle(double theta) {
  double t = std::fmod(theta, 2.0 * std::numbers::pi);
  if (t < 0.0) t += 2.0 * std::numbers::pi;
  return t;
}

}  // namespace

void Annulus::validate() const {
  if (!(r_min >= 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
    throw std::invalid_argument("Annulus: need 0 <= r_min < r_max < inf");
  }
}

PhiForms phi_forms(const WeierstrassData& data) {
  const LaurentPoly g2 = data.g * data.g;
  const LaurentPoly one(1.0);
  return {0.5 * ((one - g2) * data.omega), (0.5 * kI) * ((one + g2) * data.omega),
          data.g * data.omega};
}

MinimalSurface::MinimalSurface(WeierstrassData data) : data_(std::move(data)) {
  data_.domain.validate();
  if (data_.omega.is_zero()) throw std::invalid_argument("MinimalSurface: omega is zero");
  phi_ = phi_forms(data_);
  for (int k = 0; k < 3; ++k) {
    const Complex res = phi_[k].residue();
    if (std::abs(res.imag()) >= kResidueTolerance) {
      std::ostringstream os;
      os << "MinimalSurface: form " << k + 1 << " has residue " << res.real() << "+"
         << res.imag() << "i at 0; the real part of the integral is not well defined";
      throw std::domain_error(os.str());
    }
    log_coeff_[k] = res.real();
    antiderivative_[k] = phi_[k].antiderivative_without_log();
    if (phi_[k].pole_order_at_zero() > 0) singular_at_zero_ = true;
  }
  if (data_.domain.is_disk() && singular_at_zero_) {
    throw std::invalid_argument(
        "MinimalSurface: disk domain contains z = 0 but the data has a pole there");
  }
  if (data_.base_point == Complex(0.0) && singular_at_zero_) {
    throw std::invalid_argument("MinimalSurface: base point 0 is a pole of the data");
  }
  dg_ = data_.g.derivative();
  base_value_ = primitive(data_.base_point);
}

Eigen::Vector3d MinimalSurface::primitive(Complex z) const {
  if (z == Complex(0.0) && singular_at_zero_) {
    throw std::domain_error("MinimalSurface::evaluate: z = 0 is a puncture");
  }
  Eigen::Vector3d out;
  const double log_r = (z == Complex(0.0)) ? 0.0 : std::log(std::abs(z));
  for (int k = 0; k < 3; ++k) {
    out[k] = antiderivative_[k](z).real() + log_coeff_[k] * log_r;
  }
  return out;
}

Eigen::Vector3d MinimalSurface::evaluate(Complex z) const {
  return primitive(z) - base_value_;
}

double MinimalSurface::conformal_factor(Complex z) const {
  const double g = std::abs(data_.g(z));
  return 0.5 * (1.0 + g * g) * std::abs(data_.omega(z));
}

double MinimalSurface::gauss_curvature(Complex z) const {
  const double w = std::abs(data_.omega(z));
  if (w == 0.0 || conformal_factor(z) == 0.0) {
    throw std::domain_error("gauss_curvature: metric degenerates (branch point)");
  }
  const double g = std::abs(data_.g(z));
  const double s = 1.0 + g * g;
  const double k = 4.0 * std::abs(dg_(z)) / (w * s * s);
  return -k * k;
}

double MinimalSurface::curvature_density(Complex z) const {
  const double g = std::abs(data_.g(z));
  const double s = 1.0 + g * g;
  const double dg = std::abs(dg_(z));
  return -4.0 * dg * dg / (s * s);
}

MinimalSurface MinimalSurface::scaled(double c) const {
  if (!(c > 0.0)) throw std::invalid_argument("MinimalSurface::scaled: c must be > 0");
  WeierstrassData d = data_;
  d.omega *= c;
  return MinimalSurface(std::move(d));
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
  std::vector<Complex> c = coeffs;
  while (!c.empty() && c.back() == Complex(0.0)) c.pop_back();
  if (c.size() <= 1) return {};
  const int degree = static_cast<int>(c.size()) - 1;

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -c[i] / c[degree];

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("polynomial_roots: eigenvalue iteration did not converge");
  }
  std::vector<Complex> roots(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + degree);

  auto eval = [&](Complex z, Complex& dp) {
    Complex p = c[degree];
    dp = 0.0;
    for (int i = degree - 1; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + c[i];
    }
    return p;
  };
  for (Complex& z : roots) {
    for (int it = 0; it < 3; ++it) {
      Complex dp;
      const Complex p = eval(z, dp);
      if (std::abs(dp) < 1e-12 * (1.0 + std::abs(p))) break;  // multiple root
      const Complex step = p / dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      z -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
  }
  return roots;
}

std::vector<BranchPoint> branch_points(const MinimalSurface& surface) {
  const WeierstrassData& data = surface.data();
  const std::vector<Complex> roots = polynomial_roots(data.omega.shifted_coefficients());

  // Cluster numerically split multiple roots.
  constexpr double kClusterTol = 1e-5;
  std::vector<std::pair<Complex, int>> clusters;
  for (const Complex& z : roots) {
    bool merged = false;
    for (auto& [center, count] : clusters) {
      if (std::abs(z - center) <= kClusterTol * std::max(1.0, std::abs(center))) {
        center = (center * static_cast<double>(count) + z) / static_cast<double>(count + 1);
        ++count;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.emplace_back(z, 1);
  }

  const Annulus& dom = data.domain;
  constexpr double kBoundaryTol = 1e-9;
  std::vector<BranchPoint> cover;
  for (const auto& [z, order] : clusters) {
    const double r = std::abs(z);
    const bool on_inner = dom.r_min > 0.0 && std::abs(r - dom.r_min) <= kBoundaryTol * dom.r_min;
    const bool on_outer = std::abs(r - dom.r_max) <= kBoundaryTol * dom.r_max;
    if (on_inner || on_outer) {
      throw std::domain_error("branch_points: zero of the metric on the domain boundary; "
                              "enlarge the domain");
    }
    if (r < dom.r_min || r > dom.r_max) continue;
    cover.push_back({z, order, surface.evaluate(z)});
  }
  std::sort(cover.begin(), cover.end(), [](const BranchPoint& a, const BranchPoint& b) {
    const double ta = wrap_angle(std::arg(a.z));
    const double tb = wrap_angle(std::arg(b.z));
    if (ta != tb) return ta < tb;
    return std::abs(a.z) < std::abs(b.z);
  });
  if (!data.quotient) return cover;

  std::vector<BranchPoint> reps;
  std::vector<bool> used(cover.size(), false);
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const Complex partner = -1.0 / std::conj(cover[i].z);
    std::size_t match = cover.size();
    for (std::size_t j = i + 1; j < cover.size(); ++j) {
      if (!used[j] &&
          std::abs(cover[j].z - partner) <= kClusterTol * std::max(1.0, std::abs(partner))) {
        match = j;
        break;
      }
    }
    if (match == cover.size()) {
      reps.push_back(cover[i]);
      continue;
    }
    used[match] = true;
    const bool keep_first = wrap_angle(std::arg(cover[i].z)) < std::numbers::pi;
    reps.push_back(keep_first ? cover[i] : cover[match]);
  }
  std::sort(reps.begin(), reps.end(), [](const BranchPoint& a, const BranchPoint& b) {
    return wrap_angle(std::arg(a.z)) < wrap_angle(std::arg(b.z));
  });
  return reps;
}

int total_branching_order(const MinimalSurface& surface) {
  int total = 0;
  for (const BranchPoint& b : branch_points(surface)) total += b.order;
  return total;
}

std::vector<EndProfile> end_profiles(const MinimalSurface& surface) {
  int at_zero = 0;
  int at_inf = 0;
  for (const LaurentPoly& phi : surface.phi()) {
    at_zero = std::max(at_zero, phi.pole_order_at_zero());
    at_inf = std::max(at_inf, phi.form_pole_order_at_infinity());
  }
  auto check = [](int order, const char* where) {
    if (order == 1) {
      throw std::domain_error(std::string("end_profiles: simple pole at ") + where +
                              " is not a complete end of finite total curvature");
    }
  };
  check(at_zero, "0");
  check(at_inf, "infinity");

  std::vector<EndProfile> ends;
  if (surface.data().quotient) {
    if (at_zero != at_inf) {
      throw std::domain_error("end_profiles: quotient data has different pole orders at 0 (" +
                              std::to_string(at_zero) + ") and infinity (" +
                              std::to_string(at_inf) + ")");
    }
    if (at_zero >= 2) ends.push_back({Puncture::kZeroAndInfinity, at_zero - 1});
    return ends;
  }
  if (at_zero >= 2) ends.push_back({Puncture::kZero, at_zero - 1});
  if (at_inf >= 2) ends.push_back({Puncture::kInfinity, at_inf - 1});
  return ends;
}

namespace {

// Midpoint rule for int K dA over r in [lo, hi] (log-spaced), full angle.
double curvature_integral_log(const MinimalSurface& s, double lo, double hi, int n_r, int n_t) {
  const double h = std::log(hi / lo) / n_r;
  const double dt = 2.0 * std::numbers::pi / n_t;
  double sum = 0.0;
  for (int i = 0; i < n_r; ++i) {
    const double r = lo * std::exp((i + 0.5) * h);
    double ring = 0.0;
    for (int j = 0; j < n_t; ++j) {
      ring += s.curvature_density(std::polar(r, (j + 0.5) * dt));
    }
    sum += ring * r * r;  // dA = r^2 d(log r) dtheta
  }
  return sum * h * dt;
}

double curvature_integral_linear(const MinimalSurface& s, double hi, int n_r, int n_t) {
  const double h = hi / n_r;
  const double dt = 2.0 * std::numbers::pi / n_t;
  double sum = 0.0;
  for (int i = 0; i < n_r; ++i) {
    const double r = (i + 0.5) * h;
    double ring = 0.0;
    for (int j = 0; j < n_t; ++j) {
      ring += s.curvature_density(std::polar(r, (j + 0.5) * dt));
    }
    sum += ring * r;
  }
  return sum * h * dt;
}

}  // namespace

TotalCurvatureResult total_curvature(const MinimalSurface& surface, int resolution) {
  if (resolution < 64) throw std::invalid_argument("total_curvature: resolution must be >= 64");
  const Annulus& dom = surface.data().domain;
  const double factor = surface.data().quotient ? 0.5 : 1.0;

  TotalCurvatureResult out;
  out.value = factor * (dom.is_disk()
                            ? curvature_integral_linear(surface, dom.r_max, resolution, resolution)
                            : curvature_integral_log(surface, dom.r_min, dom.r_max, resolution,
                                                     resolution));

  // Tails over six decades on either side of the domain.
  constexpr double kDecades = 1e6;
  const int tail_n = 256;
  double tail = curvature_integral_log(surface, dom.r_max, dom.r_max * kDecades, tail_n, tail_n);
  if (!dom.is_disk()) {
    tail += curvature_integral_log(surface, dom.r_min / kDecades, dom.r_min, tail_n, tail_n);
  }
  out.tail_estimate = factor * tail;
  if (std::abs(out.tail_estimate) > 0.01 * std::abs(out.value) && out.tail_estimate != 0.0) {
    out.tail_warning = true;
    std::ostringstream os;
    os << "total_curvature: curvature outside the domain (" << out.tail_estimate
       << ") exceeds 1% of the integral (" << out.value << "); enlarge the domain";
    out.message = os.str();
  }
  return out;
}

std::string to_string(Puncture p) {
  switch (p) {
    case Puncture::kZero:
      return "0";
    case Puncture::kInfinity:
      return "inf";
    case Puncture::kZeroAndInfinity:
      return "{0,inf}";
  }
  return "?";
}

}  // namespace minlab::weierstrass
