#include "minlab/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

#include <Eigen/Geometry>

#include "minlab/bounds.hpp"
#include "minlab/comparison.hpp"

namespace minlab::intrinsic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::array<int, 2>> make_stencil(int order) {
  std::vector<std::array<int, 2>> out;
  for (int di = -order; di <= order; ++di) {
    for (int dj = -order; dj <= order; ++dj) {
      if (di == 0 && dj == 0) continue;
      if (std::gcd(std::abs(di), std::abs(dj)) != 1) continue;
      out.push_back({di, dj});
    }
  }
  return out;
}

double wrap_angle(double theta) {
  double t = std::fmod(theta, 2.0 * std::numbers::pi);
  if (t < 0.0) t += 2.0 * std::numbers::pi;
  return t;
}

}  // namespace

double stencil_distortion(int stencil_order) {
  if (stencil_order < 1) throw std::invalid_argument("stencil_distortion: order must be >= 1");
  std::vector<double> angles;
  for (int a = 1; a <= stencil_order; ++a) {
    for (int b = 0; b <= a; ++b) {
      if (std::gcd(a, b) == 1) angles.push_back(std::atan2(b, a));
    }
  }
  std::sort(angles.begin(), angles.end());
  double gap = 0.0;
  for (std::size_t k = 1; k < angles.size(); ++k) gap = std::max(gap, angles[k] - angles[k - 1]);
  return 1.0 / std::cos(0.5 * gap) - 1.0;
}

IntrinsicMesh IntrinsicMesh::build(const weierstrass::MinimalSurface& surface,
                                   const MeshOptions& options) {
  if (options.n_r < 16) throw std::invalid_argument("build_mesh: n_r must be >= 16");
  if (options.n_theta < 32) throw std::invalid_argument("build_mesh: n_theta must be >= 32");
  if (options.stencil_order < 1 || options.stencil_order > kMaxStencilOrder) {
    throw std::invalid_argument("build_mesh: stencil order must be in 1.." +
                                std::to_string(kMaxStencilOrder));
  }
  const weierstrass::Annulus& dom = surface.data().domain;
  if (dom.is_disk() && surface.singular_at_zero()) {
    throw std::invalid_argument("build_mesh: domain contains z = 0, a pole of the data");
  }
  if (dom.is_disk() && !(options.disk_core_ratio > 0.0 && options.disk_core_ratio < 1.0)) {
    throw std::invalid_argument("build_mesh: disk_core_ratio must be in (0, 1)");
  }

  IntrinsicMesh mesh(surface, options);
  const int nr = options.n_r;
  const int nt = options.n_theta;
  const double start = dom.is_disk() ? options.disk_core_ratio * dom.r_max : dom.r_min;
  mesh.h_ = std::log(dom.r_max / start) / nr;
  mesh.rho_.resize(static_cast<std::size_t>(nr));
  for (int i = 0; i < nr; ++i) mesh.rho_[i] = start * std::exp((i + 1) * mesh.h_);
  mesh.rho_.back() = dom.r_max;

  const std::size_t count = static_cast<std::size_t>(nr) * nt + (dom.is_disk() ? 1 : 0);
  mesh.z_.resize(count);
  mesh.pos_.resize(count);
  mesh.lambda_.resize(count);
  mesh.area_.resize(count);
  mesh.area_mid_.resize(count);
  mesh.boundary_.assign(count, 0);

  const double dt = 2.0 * std::numbers::pi / nt;
  for (int i = 0; i < nr; ++i) {
    const double outer = mesh.rho_[i];
    const double inner = (i == 0) ? start : mesh.rho_[i - 1];
    const double param_area = 0.5 * (outer * outer - inner * inner) * dt;
    const double mid_r = std::sqrt(inner * outer);
    for (int j = 0; j < nt; ++j) {
      const VertexId v = mesh.vertex(i, j);
      const Complex z = std::polar(outer, j * dt);
      mesh.z_[v] = z;
      mesh.pos_[v] = surface.evaluate(z);
      const double lam = surface.conformal_factor(z);
      mesh.lambda_[v] = lam;
      mesh.area_[v] = lam * lam * param_area;
      const double lam_mid = surface.conformal_factor(std::polar(mid_r, j * dt));
      mesh.area_mid_[v] = lam_mid * lam_mid * param_area;
      if (i == nr - 1 || (i == 0 && !dom.is_disk())) mesh.boundary_[v] = 1;
    }
  }
  if (dom.is_disk()) {
    const VertexId c = static_cast<VertexId>(count - 1);
    mesh.center_ = c;
    mesh.z_[c] = 0.0;
    mesh.pos_[c] = surface.evaluate(0.0);
    const double lam = surface.conformal_factor(0.0);
    mesh.lambda_[c] = lam;
    mesh.area_[c] = lam * lam * std::numbers::pi * start * start;
    const double lam_mid = surface.conformal_factor(0.5 * start);
    mesh.area_mid_[c] = lam_mid * lam_mid * std::numbers::pi * start * start;
  }
  mesh.stencil_ = make_stencil(options.stencil_order);

  // Quads split along the shorter diagonal in R^3; a fan closes the center.
  mesh.triangles_.reserve(static_cast<std::size_t>(2 * (nr - 1) * nt + (dom.is_disk() ? nt : 0)));
  for (int i = 0; i + 1 < nr; ++i) {
    for (int j = 0; j < nt; ++j) {
      const VertexId a = mesh.vertex(i, j);
      const VertexId b = mesh.vertex(i + 1, j);
      const VertexId c = mesh.vertex(i + 1, j + 1);
      const VertexId d = mesh.vertex(i, j + 1);
      const double ac = (mesh.pos_[a] - mesh.pos_[c]).squaredNorm();
      const double bd = (mesh.pos_[b] - mesh.pos_[d]).squaredNorm();
      if (ac <= bd) {
        mesh.triangles_.push_back({{a, b, c}});
        mesh.triangles_.push_back({{a, c, d}});
      } else {
        mesh.triangles_.push_back({{a, b, d}});
        mesh.triangles_.push_back({{b, c, d}});
      }
    }
  }
  if (dom.is_disk()) {
    for (int j = 0; j < nt; ++j) {
      mesh.triangles_.push_back({{mesh.center_, mesh.vertex(0, j), mesh.vertex(0, j + 1)}});
    }
  }
  return mesh;
}

VertexId IntrinsicMesh::vertex(int ring, int col) const {
  const int nt = n_theta();
  int c = col % nt;
  if (c < 0) c += nt;
  return static_cast<VertexId>(ring * nt + c);
}

int IntrinsicMesh::ring_of(VertexId v) const {
  return v == center_ ? -1 : static_cast<int>(v) / n_theta();
}

int IntrinsicMesh::col_of(VertexId v) const {
  return v == center_ ? 0 : static_cast<int>(v) % n_theta();
}

double IntrinsicMesh::edge_weight(VertexId u, VertexId v) const {
  // sqrt(norm) rather than abs: hypot is markedly slower in the Dijkstra loop.
  return 0.5 * (lambda_[u] + lambda_[v]) * std::sqrt(std::norm(z_[u] - z_[v]));
}

double IntrinsicMesh::cell_diameter(VertexId v) const {
  double d = 0.0;
  auto visit = [&](VertexId u) { d = std::max(d, (pos_[u] - pos_[v]).norm()); };
  if (v == center_) {
    for (int j = 0; j < n_theta(); ++j) visit(vertex(0, j));
    return d;
  }
  const int i = ring_of(v);
  const int j = col_of(v);
  for (int di = -1; di <= 1; ++di) {
    for (int dj = -1; dj <= 1; ++dj) {
      if ((di == 0 && dj == 0) || i + di < 0 || i + di >= n_r()) continue;
      visit(vertex(i + di, j + dj));
    }
  }
  if (i == 0 && center_ != kNoVertex) visit(center_);
  return d;
}

VertexId IntrinsicMesh::nearest_vertex(Complex z) const {
  const double r = std::abs(z);
  const double dt = 2.0 * std::numbers::pi / n_theta();
  const double start = rho_[0] * std::exp(-h_);
  const int col = static_cast<int>(std::lround(wrap_angle(std::arg(z)) / dt));
  VertexId best = kNoVertex;
  double best_d = kInf;
  auto consider = [&](VertexId v) {
    const double d = std::abs(z_[v] - z);
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  };
  if (center_ != kNoVertex) consider(center_);
  int ring = 0;
  if (r > 0.0) {
    ring = static_cast<int>(std::lround(std::log(r / start) / h_ - 1.0));
  }
  ring = std::clamp(ring, 0, n_r() - 1);
  for (int di = -1; di <= 1; ++di) {
    const int ii = ring + di;
    if (ii < 0 || ii >= n_r()) continue;
    for (int dj = -1; dj <= 1; ++dj) consider(vertex(ii, col + dj));
  }
  return best;
}

double IntrinsicMesh::total_area() const {
  return std::accumulate(area_.begin(), area_.end(), 0.0);
}

std::vector<double> shortest_paths(const IntrinsicMesh& mesh, std::span<const Seed> seeds,
                                   std::span<const std::uint8_t> allowed, double cutoff) {
  std::vector<double> dist(mesh.size(), kInf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  const bool masked = !allowed.empty();
  for (const Seed& s : seeds) {
    if (masked && !allowed[s.vertex]) continue;
    if (s.distance < dist[s.vertex] && s.distance <= cutoff) {
      dist[s.vertex] = s.distance;
      heap.emplace(s.distance, s.vertex);
    }
  }
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    mesh.for_each_neighbor(v, [&](VertexId u, double w) {
      if (masked && !allowed[u]) return;
      const double nd = d + w;
      if (nd < dist[u] && nd <= cutoff) {
        dist[u] = nd;
        heap.emplace(nd, u);
      }
    });
  }
  return dist;
}

DistanceField geodesic_distances(const IntrinsicMesh& mesh, VertexId source, double cutoff) {
  if (source < 0 || static_cast<std::size_t>(source) >= mesh.size()) {
    throw std::out_of_range("geodesic_distances: source not in mesh");
  }
  const Seed seed{source, 0.0};
  return {source, shortest_paths(mesh, std::span<const Seed>(&seed, 1), {}, cutoff)};
}

namespace {

// Parameter-plane area of the part of triangle (a, b, c) where the linear
// interpolant of (da, db, dc) is <= r.
double clipped_area(std::array<Complex, 3> z, std::array<double, 3> d, double r) {
  std::array<Complex, 4> poly{};
  int n = 0;
  for (int k = 0; k < 3; ++k) {
    const int l = (k + 1) % 3;
    const bool in_k = d[k] <= r;
    const bool in_l = d[l] <= r;
    if (in_k) poly[n++] = z[k];
    if (in_k != in_l) {
      // Interpolate from the inside corner; the other may be unreached (+inf).
      const int a = in_k ? k : l;
      const int b = in_k ? l : k;
      const double t = (r - d[a]) / (d[b] - d[a]);
      poly[n++] = z[a] + t * (z[b] - z[a]);
    }
  }
  double twice = 0.0;
  for (int k = 0; k < n; ++k) {
    const Complex& p = poly[k];
    const Complex& q = poly[(k + 1) % n];
    twice += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * std::abs(twice);
}

}  // namespace

BallArea ball_area(const IntrinsicMesh& mesh, const DistanceField& field, double r) {
  BallArea out;
  for (std::size_t v = 0; v < mesh.size(); ++v) {
    if (!(field.dist[v] <= r)) continue;
    const auto id = static_cast<VertexId>(v);
    out.area += mesh.cell_area(id);
    out.area_midpoint += mesh.cell_area_midpoint(id);
    if (mesh.is_boundary(id)) out.touches_boundary = true;
  }
  for (const Triangle& t : mesh.triangles()) {
    const std::array<double, 3> d{field.dist[t.v[0]], field.dist[t.v[1]], field.dist[t.v[2]]};
    if (d[0] > r && d[1] > r && d[2] > r) continue;
    double lam2 = 0.0;
    for (VertexId v : t.v) lam2 += mesh.lambda(v) * mesh.lambda(v);
    const std::array<Complex, 3> z{mesh.z(t.v[0]), mesh.z(t.v[1]), mesh.z(t.v[2])};
    out.area_interpolated += clipped_area(z, d, r) * lam2 / 3.0;
  }
  return out;
}

bool is_embedded_plane(const weierstrass::MinimalSurface& surface) {
  if (!surface.data().g.derivative().is_zero() || surface.data().quotient) return false;
  const auto ends = weierstrass::end_profiles(surface);
  return ends.size() == 1 && ends.front().multiplicity == 1 &&
         weierstrass::total_branching_order(surface) == 0;
}

OmegaComponent omega_component(const IntrinsicMesh& mesh, VertexId p0, double R) {
  using Kind = ComponentError::Kind;
  if (!(mesh.position(p0).norm() <= R)) {
    throw ComponentError(Kind::kBasePointOutside, "omega_component: |f(p0)| > R");
  }
  for (const auto& b : weierstrass::branch_points(mesh.surface())) {
    const double gap = std::abs(b.image.norm() - R);
    const double band = mesh.cell_diameter(mesh.nearest_vertex(b.z));
    if (gap < band) {
      std::ostringstream os;
      os << "omega_component: sphere of radius " << R << " passes within one cell ("
         << band << ") of a branch image at radius " << b.image.norm();
      throw ComponentError(Kind::kTransversality, os.str());
    }
  }

  OmegaComponent out;
  out.R = R;
  out.p0 = p0;
  out.member.assign(mesh.size(), 0);
  std::vector<VertexId> stack{p0};
  out.member[p0] = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    out.vertices.push_back(v);
    if (mesh.is_boundary(v)) {
      throw ComponentError(Kind::kNotContained,
                           "omega_component: component reaches the mesh boundary; R = " +
                               std::to_string(R) + " is not compactly contained");
    }
    mesh.for_each_axis_neighbor(v, [&](VertexId u) {
      if (!out.member[u] && mesh.position(u).norm() <= R) {
        out.member[u] = 1;
        stack.push_back(u);
      }
    });
  }
  std::sort(out.vertices.begin(), out.vertices.end());

  // Marching triangles: one segment per triangle with mixed membership.
  struct Crossing {
    Eigen::Vector3d point;
  };
  std::unordered_map<std::uint64_t, int> crossing_index;
  std::vector<Crossing> crossings;
  std::vector<std::array<int, 2>> segments;
  std::vector<double> seed_dist(mesh.size(), kInf);

  auto crossing_on = [&](VertexId in, VertexId out_v) {
    const auto lo = static_cast<std::uint64_t>(std::min(in, out_v));
    const auto hi = static_cast<std::uint64_t>(std::max(in, out_v));
    const std::uint64_t key = (lo << 32) | hi;
    const double a = mesh.position(in).norm();
    const double b = mesh.position(out_v).norm();
    double t = 0.5;
    if (b > a) t = std::clamp((R - a) / (b - a), 0.0, 1.0);
    seed_dist[in] = std::min(seed_dist[in], t * mesh.edge_weight(in, out_v));
    auto [it, inserted] = crossing_index.emplace(key, static_cast<int>(crossings.size()));
    if (inserted) {
      crossings.push_back({mesh.position(in) + t * (mesh.position(out_v) - mesh.position(in))});
    }
    return it->second;
  };

  for (const Triangle& tri : mesh.triangles()) {
    int inside = 0;
    for (VertexId v : tri.v) inside += out.member[v];
    if (inside == 0 || inside == 3) continue;
    // The odd vertex is the one whose membership differs from the other two.
    int odd = 0;
    for (int k = 0; k < 3; ++k) {
      const int same = (out.member[tri.v[k]] == out.member[tri.v[(k + 1) % 3]]) +
                       (out.member[tri.v[k]] == out.member[tri.v[(k + 2) % 3]]);
      if (same == 0) odd = k;
    }
    const VertexId o = tri.v[odd];
    const VertexId p = tri.v[(odd + 1) % 3];
    const VertexId q = tri.v[(odd + 2) % 3];
    const bool odd_in = out.member[o] != 0;
    const int c1 = odd_in ? crossing_on(o, p) : crossing_on(p, o);
    const int c2 = odd_in ? crossing_on(o, q) : crossing_on(q, o);
    segments.push_back({c1, c2});
  }

  // Union-find over crossings gives the boundary components.
  std::vector<int> parent(crossings.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<int>> adjacency(crossings.size());
  for (const auto& [a, b] : segments) {
    out.boundary_length += (crossings[a].point - crossings[b].point).norm();
    parent[find(a)] = find(b);
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  for (std::size_t k = 0; k < crossings.size(); ++k) {
    if (find(static_cast<int>(k)) == static_cast<int>(k)) ++out.boundary_count;
  }

  // Polylines, walked in crossing order for determinism.
  std::vector<bool> seen(crossings.size(), false);
  for (std::size_t start = 0; start < crossings.size(); ++start) {
    if (seen[start]) continue;
    std::vector<Eigen::Vector3d> curve;
    int prev = -1;
    int cur = static_cast<int>(start);
    while (cur >= 0 && !seen[cur]) {
      seen[cur] = true;
      curve.push_back(crossings[cur].point);
      int next = -1;
      for (int nb : adjacency[cur]) {
        if (nb != prev && !seen[nb]) {
          next = nb;
          break;
        }
      }
      prev = cur;
      cur = next;
    }
    if (curve.size() > 2) curve.push_back(curve.front());
    out.boundary_curves.push_back(std::move(curve));
  }

  for (VertexId v : out.vertices) {
    if (seed_dist[v] < kInf) out.boundary_seeds.push_back({v, seed_dist[v]});
  }
  return out;
}

std::vector<VerificationReport> verify_monotonicity(const IntrinsicMesh& mesh, VertexId p0,
                                                    std::span<const double> radii,
                                                    const std::string& surface_name) {
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("verify_monotonicity: radii must be > 0");
  }
  // No cutoff: triangles straddling r need both corner distances.
  const DistanceField field = geodesic_distances(mesh, p0);

  // Minimal surface in R^3: n = 2, a = 0, H0 = 0, R1 = infinity.
  const comparison::ComparisonParams params{0.0, 0.0, comparison::ExtendedRadius::infinite(), 2,
                                            3};
  std::vector<VerificationReport> reports;
  for (double r : radii) {
    const BallArea ball = ball_area(mesh, field, r);
    VerificationReport rep;
    rep.check = "monotonicity";
    rep.surface = surface_name;
    rep.params = {{"r", r},
                  {"p0_re", mesh.z(p0).real()},
                  {"p0_im", mesh.z(p0).imag()},
                  {"area_vertex_cells", ball.area},
                  {"area_midpoint_rule", ball.area_midpoint},
                  {"quadrature_gap", std::abs(ball.area - ball.area_midpoint)}};
    rep.measured = ball.area_interpolated;
    rep.bound = comparison::area_lower_bound(params, r);
    rep.relation = ">=";
    rep.n_r = mesh.n_r();
    rep.n_theta = mesh.n_theta();
    rep.stencil_order = mesh.stencil_order();
    rep.settle();
    rep.note = "graph distances overestimate, so the discrete ball is contained in the true one";
    if (ball.touches_boundary) {
      rep.note += "; ball truncated by the mesh boundary (area is a lower estimate)";
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

namespace {

double max_over(const std::vector<double>& d, const std::vector<VertexId>& targets) {
  double m = 0.0;
  for (VertexId v : targets) {
    if (d[v] < kInf) m = std::max(m, d[v]);
  }
  return m;
}

OmegaComponent transverse_component(const IntrinsicMesh& mesh, VertexId p0, double& R,
                                    int max_nudges) {
  for (int attempt = 0;; ++attempt) {
    try {
      return omega_component(mesh, p0, R);
    } catch (const ComponentError& e) {
      if (e.kind() != ComponentError::Kind::kTransversality || attempt >= max_nudges) throw;
      double band = 0.0;
      for (const auto& b : weierstrass::branch_points(mesh.surface())) {
        band = std::max(band, mesh.cell_diameter(mesh.nearest_vertex(b.z)));
      }
      R += 0.5 * band;
    }
  }
}

}  // namespace

std::vector<VerificationReport> verify_chord_arc(const IntrinsicMesh& mesh, VertexId p0, double R,
                                                 int index, int branching,
                                                 const std::string& surface_name,
                                                 const ChordArcOptions& options,
                                                 ChordArcMeasurement* measurement) {
  if (!(R > 0.0)) throw std::invalid_argument("verify_chord_arc: R must be > 0");
  if (options.pair_sources < 1) throw std::invalid_argument("verify_chord_arc: pair_sources < 1");
  const double p0_offset = mesh.position(p0).norm();
  if (p0_offset > mesh.cell_diameter(p0)) {
    throw std::invalid_argument("verify_chord_arc: f(p0) is not within one cell of the origin");
  }

  ChordArcMeasurement m;
  m.R_requested = R;
  m.index = index;
  m.branching = branching;
  m.embedded_plane = is_embedded_plane(mesh.surface());
  m.L_hat = bounds::chord_arc_L(index, branching);
  m.C_hat = bounds::chord_arc_C(index, branching);

  // R and 2R must both be transverse; nudge R until they are.
  double r_eff = R;
  OmegaComponent inner;
  OmegaComponent outer;
  for (int round = 0;; ++round) {
    inner = transverse_component(mesh, p0, r_eff, options.max_nudges);
    double r2 = 2.0 * r_eff;
    outer = transverse_component(mesh, p0, r2, options.max_nudges);
    if (r2 == 2.0 * r_eff) break;
    r_eff = 0.5 * r2;
    if (round >= options.max_nudges) {
      throw ComponentError(ComponentError::Kind::kTransversality,
                           "verify_chord_arc: could not find transverse radii R and 2R");
    }
  }
  m.R = r_eff;
  m.boundary_length = inner.boundary_length;
  m.boundary_count = inner.boundary_count;
  m.component_size = inner.vertices.size();

  const std::vector<double> to_boundary =
      shortest_paths(mesh, inner.boundary_seeds, inner.member);
  m.max_boundary_distance = max_over(to_boundary, inner.vertices);

  // Farthest-point sources over Omega_R; every source sees all targets.
  // d(p, q) <= d(p, s) + d(s, q), so adding the final covering radius of the
  // sources turns the sampled maxima into upper estimates.
  std::vector<double> nearest_source(mesh.size(), kInf);
  VertexId source = p0;
  const int n_sources = std::min<int>(options.pair_sources, static_cast<int>(inner.vertices.size()));
  for (int k = 0; k < n_sources; ++k) {
    const Seed seed{source, 0.0};
    const auto d_outer = shortest_paths(mesh, std::span<const Seed>(&seed, 1), outer.member);
    const auto d_inner = shortest_paths(mesh, std::span<const Seed>(&seed, 1), inner.member);
    m.max_pair_distance_2R = std::max(m.max_pair_distance_2R, max_over(d_outer, inner.vertices));
    m.max_pair_distance_R = std::max(m.max_pair_distance_R, max_over(d_inner, inner.vertices));
    VertexId next = kNoVertex;
    double far = -1.0;
    for (VertexId v : inner.vertices) {
      nearest_source[v] = std::min(nearest_source[v], d_inner[v]);
      if (nearest_source[v] > far) {
        far = nearest_source[v];
        next = v;
      }
    }
    m.source_cover = std::max(far, 0.0);
    if (next == kNoVertex || far <= 0.0) break;
    source = next;
  }

  auto base = [&](const std::string& check) {
    VerificationReport rep;
    rep.check = check;
    rep.surface = surface_name;
    rep.params = {{"R", m.R_requested},
                  {"R_effective", m.R},
                  {"I", static_cast<double>(index)},
                  {"B", static_cast<double>(branching)},
                  {"L_hat", m.L_hat},
                  {"C_hat", m.C_hat},
                  {"boundary_length", m.boundary_length},
                  {"boundary_count", static_cast<double>(m.boundary_count)},
                  {"component_vertices", static_cast<double>(m.component_size)},
                  {"pair_sources", static_cast<double>(n_sources)},
                  {"source_cover", m.source_cover}};
    rep.n_r = mesh.n_r();
    rep.n_theta = mesh.n_theta();
    rep.stencil_order = mesh.stencil_order();
    return rep;
  };

  std::vector<VerificationReport> reports;
  {
    VerificationReport rep = base("chord_arc_boundary_distance");
    rep.measured = m.max_boundary_distance;
    rep.bound = m.L_hat * m.R;
    rep.relation = "<";
    rep.settle();
    rep.note = "max over Omega_R of d(p, boundary); graph distances overestimate";
    reports.push_back(std::move(rep));
  }
  {
    VerificationReport rep = base("chord_arc_pair_distance");
    rep.params.emplace_back("pair_sampled_max", m.max_pair_distance_2R);
    rep.measured = m.max_pair_distance_2R + m.source_cover;
    if (m.embedded_plane) {
      // Injective plane: distances are at most 2R, up to the stencil and one cell.
      const double slack = stencil_distortion(mesh.stencil_order()) * 2.0 * m.R +
                           2.0 * mesh.cell_diameter(p0);
      rep.bound = 2.0 * m.R + slack;
      rep.relation = "<=";
      rep.params.emplace_back("mesh_slack", slack);
      rep.note = "embedded plane clause: pair distances at most 2R plus mesh error";
    } else {
      rep.bound = m.C_hat * m.R;
      rep.relation = "<";
      rep.note = "sampled max of d_{Omega_2R}(p, q) over p, q in Omega_R plus the source covering radius";
      if (m.C_hat <= 0.0) {
        rep.vacuous = true;
        rep.note += "; C_hat <= 0, hypotheses force the plane case";
      }
    }
    rep.settle();
    reports.push_back(std::move(rep));
  }
  {
    VerificationReport rep = base("chord_arc_pair_via_boundary");
    rep.params.emplace_back("pair_sampled_max", m.max_pair_distance_R);
    rep.measured = m.max_pair_distance_R + m.source_cover;
    const int count_bound = bounds::boundary_count_bound(index, branching);
    rep.bound = 2.0 * m.L_hat * count_bound * m.R + 0.5 * m.boundary_length;
    rep.relation = "<=";
    rep.settle();
    rep.note = "d_{Omega_R}(p, q) against 2 L_hat (3I + 2B - 1) R + Length(boundary) / 2";
    if (m.embedded_plane || count_bound < 0) {
      rep.vacuous = true;
      rep.note += "; not applicable to an embedded plane";
    }
    reports.push_back(std::move(rep));
  }
  {
    VerificationReport rep = base("boundary_count");
    rep.measured = m.boundary_count;
    rep.bound = bounds::boundary_count_bound(index, branching);
    rep.relation = "<=";
    rep.settle();
    rep.note = "boundary components of Omega_R";
    if (m.embedded_plane || rep.bound < 0) {
      rep.vacuous = true;
      rep.note += "; bound is vacuous for an embedded plane";
    }
    reports.push_back(std::move(rep));
  }
  if (measurement) *measurement = m;
  return reports;
}

VerificationReport laplacian_identity_check(const IntrinsicMesh& mesh,
                                            const std::string& surface_name, double tolerance) {
  constexpr double kBranchHalo = 0.2;
  const std::size_t n = mesh.size();
  std::vector<double> value(n);
  for (std::size_t v = 0; v < n; ++v) value[v] = mesh.position(static_cast<VertexId>(v)).squaredNorm();

  std::vector<double> lap(n, 0.0);
  std::vector<double> area(n, 0.0);
  std::vector<std::uint8_t> excluded(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (mesh.is_boundary(static_cast<VertexId>(v))) excluded[v] = 1;
  }

  // Ring 0 of a disk mesh borders the center fan, whose sliver triangles
  // break the pointwise consistency of cotangent weights.
  if (mesh.has_center()) {
    for (int j = 0; j < mesh.n_theta(); ++j) excluded[mesh.vertex(0, j)] = 1;
  }

  // A branch point is a cone of angle 2 pi (order + 1) and the residual next
  // to it decays only like 1 / (cells away). Skip a fixed box of half-width
  // kBranchHalo in (log r, theta) so the excluded set shrinks under refinement.
  const int halo_rings = static_cast<int>(std::ceil(kBranchHalo / mesh.log_step()));
  const int halo_cols = static_cast<int>(std::ceil(kBranchHalo * mesh.n_theta() / (2.0 * std::numbers::pi)));
  for (const auto& b : weierstrass::branch_points(mesh.surface())) {
    std::vector<Complex> zs{b.z};
    if (mesh.surface().data().quotient) zs.push_back(-1.0 / std::conj(b.z));
    for (const Complex& z : zs) {
      const VertexId c = mesh.nearest_vertex(z);
      excluded[c] = 1;
      if (c == mesh.center()) continue;
      const int ci = mesh.ring_of(c);
      const int cj = mesh.col_of(c);
      for (int di = -halo_rings; di <= halo_rings; ++di) {
        if (ci + di < 0 || ci + di >= mesh.n_r()) continue;
        for (int dj = -halo_cols; dj <= halo_cols; ++dj) excluded[mesh.vertex(ci + di, cj + dj)] = 1;
      }
    }
  }

  for (const Triangle& t : mesh.triangles()) {
    const Eigen::Vector3d& p0 = mesh.position(t.v[0]);
    const Eigen::Vector3d& p1 = mesh.position(t.v[1]);
    const Eigen::Vector3d& p2 = mesh.position(t.v[2]);
    const std::array<Eigen::Vector3d, 3> p{p0, p1, p2};
    const double tri_area = 0.5 * (p1 - p0).cross(p2 - p0).norm();
    if (!(tri_area > 0.0)) {
      for (VertexId v : t.v) excluded[v] = 1;
      continue;
    }
    std::array<double, 3> cot{};
    bool obtuse = false;
    int obtuse_at = -1;
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector3d a = p[(k + 1) % 3] - p[k];
      const Eigen::Vector3d b = p[(k + 2) % 3] - p[k];
      const double dot = a.dot(b);
      cot[k] = dot / a.cross(b).norm();
      if (dot < 0.0) {
        obtuse = true;
        obtuse_at = k;
      }
    }
    for (int k = 0; k < 3; ++k) {
      // Edge opposite corner k joins i and j.
      const VertexId i = t.v[(k + 1) % 3];
      const VertexId j = t.v[(k + 2) % 3];
      const double w = 0.5 * cot[k];
      lap[i] += w * (value[j] - value[i]);
      lap[j] += w * (value[i] - value[j]);
    }
    for (int k = 0; k < 3; ++k) {
      const VertexId v = t.v[k];
      if (!obtuse) {
        const Eigen::Vector3d e1 = p[(k + 1) % 3] - p[k];
        const Eigen::Vector3d e2 = p[(k + 2) % 3] - p[k];
        area[v] += (e1.squaredNorm() * cot[(k + 2) % 3] + e2.squaredNorm() * cot[(k + 1) % 3]) / 8.0;
      } else {
        area[v] += (k == obtuse_at) ? 0.5 * tri_area : 0.25 * tri_area;
      }
    }
  }

  double worst = 0.0;
  double sum = 0.0;
  std::size_t counted = 0;
  Complex worst_z = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    if (excluded[v] || !(area[v] > 0.0)) continue;
    const double residual = std::abs(lap[v] / area[v] - 4.0);
    sum += residual;
    ++counted;
    if (residual > worst) {
      worst = residual;
      worst_z = mesh.z(static_cast<VertexId>(v));
    }
  }

  VerificationReport rep;
  rep.check = "laplacian";
  rep.surface = surface_name;
  rep.params = {{"interior_vertices", static_cast<double>(counted)},
                {"mean_residual", counted ? sum / counted : 0.0},
                {"worst_re", worst_z.real()},
                {"worst_im", worst_z.imag()},
                {"branch_halo", kBranchHalo}};
  rep.measured = worst;
  rep.bound = tolerance;
  rep.relation = "<";
  rep.n_r = mesh.n_r();
  rep.n_theta = mesh.n_theta();
  rep.stencil_order = mesh.stencil_order();
  rep.settle();
  rep.note = "max |cotangent Laplacian of |f|^2 - 4| over interior vertices";
  if (mesh.has_center()) rep.note += "; ring next to the disk center excluded";
  if (!weierstrass::branch_points(mesh.surface()).empty()) {
    rep.note += "; branch points excluded with a (log r, theta) halo of branch_halo";
  }
  return rep;
}

}  // namespace minlab::intrinsic
