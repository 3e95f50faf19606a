#pragma once

// Discrete intrinsic geometry of a Weierstrass surface on a log-polar grid:
// graph geodesics, intrinsic balls, extrinsic-ball components and the
// numerical harnesses built on them.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "minlab/report.hpp"
#include "minlab/weierstrass.hpp"

namespace minlab::intrinsic {

using VertexId = std::int32_t;
inline constexpr VertexId kNoVertex = -1;

struct MeshOptions {
  int n_r = 256;
  int n_theta = 512;
  /// Neighborhood order k: stencil offsets (di, dj) with max(|di|, |dj|) <= k
  /// and gcd(|di|, |dj|) = 1. Orders 1..kMaxStencilOrder are accepted.
  int stencil_order = 2;
  /// For disk domains the rings are log-spaced on [core_ratio * r_max, r_max]
  /// and a center vertex owns the disk of radius core_ratio * r_max.
  double disk_core_ratio = 0.1;
};

inline constexpr int kMaxStencilOrder = 6;

/// Worst-case relative overestimate of flat distances by the order-k stencil
/// on a square grid: 1 / cos(gap / 2) - 1 for the widest angular gap between
/// stencil directions.
double stencil_distortion(int stencil_order);

struct Triangle {
  std::array<VertexId, 3> v;
};

/// Polar grid over the domain annulus. Ring i sits at radius
/// rho_i = rho_start * exp((i + 1) h), column j at angle 2 pi j / n_theta.
/// Vertex (i, j) owns the parameter cell [rho_{i-1}, rho_i] x
/// [theta_j - dtheta/2, theta_j + dtheta/2] and its area is lambda(vertex)^2
/// times the parameter area of that cell. Immutable after build().
class IntrinsicMesh {
 public:
  /// Throws std::invalid_argument for n_r < 16, n_theta < 32 or an
  /// unsupported stencil order, and when a disk domain contains a pole.
  static IntrinsicMesh build(const weierstrass::MinimalSurface& surface,
                             const MeshOptions& options);

  const weierstrass::MinimalSurface& surface() const { return surface_; }
  const MeshOptions& options() const { return options_; }
  int n_r() const { return options_.n_r; }
  int n_theta() const { return options_.n_theta; }
  int stencil_order() const { return options_.stencil_order; }

  std::size_t size() const { return z_.size(); }
  bool has_center() const { return center_ != kNoVertex; }
  VertexId center() const { return center_; }

  VertexId vertex(int ring, int col) const;
  int ring_of(VertexId v) const;
  int col_of(VertexId v) const;
  double ring_radius(int ring) const { return rho_[static_cast<std::size_t>(ring)]; }
  double log_step() const { return h_; }

  Complex z(VertexId v) const { return z_[v]; }
  const Eigen::Vector3d& position(VertexId v) const { return pos_[v]; }
  double lambda(VertexId v) const { return lambda_[v]; }
  double cell_area(VertexId v) const { return area_[v]; }
  /// Cell area with lambda^2 taken at the cell's parameter midpoint.
  double cell_area_midpoint(VertexId v) const { return area_mid_[v]; }
  bool is_boundary(VertexId v) const { return boundary_[v] != 0; }

  std::span<const Eigen::Vector3d> positions() const { return pos_; }
  std::span<const double> lambdas() const { return lambda_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }

  /// Trapezoidal metric length 0.5 (lambda_u + lambda_v) |z_u - z_v|.
  double edge_weight(VertexId u, VertexId v) const;

  /// Calls fn(neighbor, weight) for every stencil neighbor of v.
  template <class Fn>
  void for_each_neighbor(VertexId v, Fn&& fn) const;

  /// Calls fn(neighbor) for the axis neighbors used for connectivity
  /// (radial, angular, and the center/ring-0 links).
  template <class Fn>
  void for_each_axis_neighbor(VertexId v, Fn&& fn) const;

  /// Largest R^3 distance from v to a ring-1 stencil neighbor.
  double cell_diameter(VertexId v) const;

  /// Vertex whose parameter location is closest to z.
  VertexId nearest_vertex(Complex z) const;

  double total_area() const;

 private:
  IntrinsicMesh(weierstrass::MinimalSurface surface, MeshOptions options)
      : surface_(std::move(surface)), options_(options) {}

  weierstrass::MinimalSurface surface_;
  MeshOptions options_;
  double h_ = 0.0;
  std::vector<double> rho_;
  std::vector<Complex> z_;
  std::vector<Eigen::Vector3d> pos_;
  std::vector<double> lambda_;
  std::vector<double> area_;
  std::vector<double> area_mid_;
  std::vector<std::uint8_t> boundary_;
  std::vector<std::array<int, 2>> stencil_;
  std::vector<Triangle> triangles_;
  VertexId center_ = kNoVertex;
};

/// Per-vertex shortest-path distance over the weighted stencil graph.
/// Unreached vertices hold +infinity.
struct DistanceField {
  VertexId source = kNoVertex;
  std::vector<double> dist;
};

struct Seed {
  VertexId vertex;
  double distance;
};

/// Multi-source Dijkstra. When `allowed` is non-empty only vertices with a
/// nonzero entry are visited. Vertices farther than `cutoff` are left at
/// infinity.
std::vector<double> shortest_paths(const IntrinsicMesh& mesh, std::span<const Seed> seeds,
                                   std::span<const std::uint8_t> allowed = {},
                                   double cutoff = std::numeric_limits<double>::infinity());

DistanceField geodesic_distances(const IntrinsicMesh& mesh, VertexId source,
                                 double cutoff = std::numeric_limits<double>::infinity());

struct BallArea {
  double area = 0.0;
  /// The same vertex set summed with midpoint-rule cell areas; the gap to
  /// `area` estimates the quadrature error.
  double area_midpoint = 0.0;
  /// Area of {d <= r} with d linear on each triangle and lambda^2 averaged
  /// over its corners. Free of the lattice-count jitter of `area`.
  double area_interpolated = 0.0;
  bool touches_boundary = false;
};

/// Sum of cell areas of vertices at distance <= r, plus the interpolated
/// estimate. A ball touching the mesh boundary is truncated and only a lower
/// estimate.
BallArea ball_area(const IntrinsicMesh& mesh, const DistanceField& field, double r);

/// Thrown when the sphere of radius R passes too close to a branch image, or
/// the component reaches the truncated mesh boundary.
class ComponentError : public std::domain_error {
 public:
  enum class Kind { kNotContained, kTransversality, kBasePointOutside };
  ComponentError(Kind kind, const std::string& what) : std::domain_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Component of {|f| <= R} containing p0, with its boundary curves obtained
/// by linear interpolation of |f| along triangle edges.
struct OmegaComponent {
  double R = 0.0;
  VertexId p0 = kNoVertex;
  std::vector<std::uint8_t> member;
  std::vector<VertexId> vertices;
  int boundary_count = 0;
  /// Length of the piecewise-linear boundary curves in R^3.
  double boundary_length = 0.0;
  std::vector<std::vector<Eigen::Vector3d>> boundary_curves;
  /// Member vertices on crossing edges with the metric distance to the crossing.
  std::vector<Seed> boundary_seeds;
};

OmegaComponent omega_component(const IntrinsicMesh& mesh, VertexId p0, double R);

/// Checks Area(B(p0, r)) >= pi r^2 for each radius; one report per radius.
std::vector<VerificationReport> verify_monotonicity(const IntrinsicMesh& mesh, VertexId p0,
                                                    std::span<const double> radii,
                                                    const std::string& surface_name);

struct ChordArcOptions {
  /// Farthest-point sources for the pair-distance maxima; the reports add
  /// their covering radius, so fewer sources only loosen the estimate.
  int pair_sources = 32;
  /// Upward nudges of R allowed when the sphere is not transverse.
  int max_nudges = 40;
};

struct ChordArcMeasurement {
  double R_requested = 0.0;
  double R = 0.0;
  int index = 0;
  int branching = 0;
  bool embedded_plane = false;
  double max_boundary_distance = 0.0;  // max_p d_{Omega_R}(p, dOmega_R)
  double max_pair_distance_2R = 0.0;   // max_{p,q in Omega_R} d_{Omega_2R}(p, q)
  double max_pair_distance_R = 0.0;    // max_{p,q in Omega_R} d_{Omega_R}(p, q)
  /// max_p d_{Omega_R}(p, sources); added to the sampled pair maxima.
  double source_cover = 0.0;
  double boundary_length = 0.0;
  int boundary_count = 0;
  std::size_t component_size = 0;
  double L_hat = 0.0;
  double C_hat = 0.0;
};

/// Runs the chord-arc estimates for a surface with index <= I and branching
/// <= B, pointed at p0 (which should map near the origin). Returns one report
/// per inequality: boundary distance, pair distance, pair distance through
/// the boundary, and boundary count.
std::vector<VerificationReport> verify_chord_arc(const IntrinsicMesh& mesh, VertexId p0,
                                                 double R, int index, int branching,
                                                 const std::string& surface_name,
                                                 const ChordArcOptions& options = {},
                                                 ChordArcMeasurement* measurement = nullptr);

/// Cotangent Laplacian of |f|^2 (mixed Voronoi areas) against the value 4 at
/// interior vertices away from branch points; measured = max residual.
VerificationReport laplacian_identity_check(const IntrinsicMesh& mesh,
                                            const std::string& surface_name,
                                            double tolerance = 0.05);

/// True for constant g with a single unbranched end of multiplicity 1.
bool is_embedded_plane(const weierstrass::MinimalSurface& surface);

// ---------------------------------------------------------------------------

template <class Fn>
void IntrinsicMesh::for_each_neighbor(VertexId v, Fn&& fn) const {
  if (v == center_) {
    for (int j = 0; j < n_theta(); ++j) {
      const VertexId u = vertex(0, j);
      fn(u, edge_weight(v, u));
    }
    return;
  }
  const int i = ring_of(v);
  const int j = col_of(v);
  for (const auto& [di, dj] : stencil_) {
    const int ii = i + di;
    if (ii < 0 || ii >= n_r()) continue;
    const VertexId u = vertex(ii, j + dj);
    fn(u, edge_weight(v, u));
  }
  if (i == 0 && center_ != kNoVertex) fn(center_, edge_weight(v, center_));
}

template <class Fn>
void IntrinsicMesh::for_each_axis_neighbor(VertexId v, Fn&& fn) const {
  if (v == center_) {
    for (int j = 0; j < n_theta(); ++j) fn(vertex(0, j));
    return;
  }
  const int i = ring_of(v);
  const int j = col_of(v);
  if (i > 0) fn(vertex(i - 1, j));
  if (i + 1 < n_r()) fn(vertex(i + 1, j));
  fn(vertex(i, j - 1));
  fn(vertex(i, j + 1));
  if (i == 0 && center_ != kNoVertex) fn(center_);
}

}  // namespace minlab::intrinsic
