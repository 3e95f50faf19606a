#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11/CLI11.hpp>

#include "minlab/bounds.hpp"
#include "minlab/henneberg.hpp"
#include "minlab/intrinsic.hpp"
#include "minlab/io.hpp"
#include "minlab/surfaces.hpp"

namespace minlab::cli {

namespace {

// Thrown for configuration problems detected after parsing; maps to exit 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

constexpr int kMinResolution = 16;
constexpr int kMaxRing = 8192;
constexpr int kMaxColumns = 16384;

// Stencil used when --stencil is absent. Ball areas need the finer angular
// resolution of a wide stencil; the other checks do not.
constexpr int kMonotonicityStencil = 6;
constexpr int kDefaultStencil = 3;

struct RunConfig {
  std::string surface = "catenoid";
  std::vector<std::string> checks;
  std::vector<double> radii{0.25, 0.5, 1.0, 2.0};
  double R = 1.0;
  int n_r = 256;
  int n_theta = 512;
  std::optional<int> stencil;
  std::optional<int> index;
  std::optional<int> branch;
  std::vector<double> domain;
  int quad = 1024;
  int samples = 0;
  std::string format = "json";
  std::string output;
  bool attach_dist = false;
};

surfaces::NamedSurface resolve_surface(const std::string& spec) {
  if (auto b = surfaces::builtin(spec)) return *b;
  return {spec, io::load_surface(spec), std::nullopt};
}

// Morse index of the built-in examples; JSON surfaces must pass --index.
std::optional<int> known_index(const surfaces::NamedSurface& s) {
  if (s.henneberg_m) return 0;
  if (s.name == "plane") return 0;
  if (s.name == "catenoid" || s.name == "enneper") return 1;
  return std::nullopt;
}

void validate_resolution(const RunConfig& c) {
  if (c.n_r < kMinResolution || c.n_r > kMaxRing) {
    throw UsageError("--nr must be in [16, 8192]");
  }
  if (c.n_theta < 2 * kMinResolution || c.n_theta > kMaxColumns) {
    throw UsageError("--ntheta must be in [32, 16384]");
  }
  if (c.stencil && (*c.stencil < 1 || *c.stencil > intrinsic::kMaxStencilOrder)) {
    throw UsageError("--stencil must be in [1, " + std::to_string(intrinsic::kMaxStencilOrder) + "]");
  }
}

weierstrass::WeierstrassData with_domain(weierstrass::WeierstrassData data,
                                         const std::vector<double>& domain) {
  if (domain.empty()) return data;
  if (domain.size() != 2) throw UsageError("--domain takes r_min,r_max");
  data.domain = {domain[0], domain[1]};
  try {
    data.domain.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--domain: ") + e.what());
  }
  return data;
}

VerificationReport curvature_report(const surfaces::NamedSurface& named, const RunConfig& c) {
  weierstrass::WeierstrassData data = named.data;
  if (!c.domain.empty()) {
    data = with_domain(data, c.domain);
  } else if (surfaces::builtin(named.name)) {
    // Built-in domains are sized for meshing; integrate over a wide one.
    data.domain = data.domain.is_disk() ? weierstrass::Annulus{0.0, 50.0}
                                        : weierstrass::Annulus{1.0 / 50.0, 50.0};
  }
  const weierstrass::MinimalSurface surface(data);
  const auto tc = weierstrass::total_curvature(surface, c.quad);
  const double expected = -4.0 * std::numbers::pi * henneberg::gauss_degree(data.g) *
                          (data.quotient ? 0.5 : 1.0);
  VerificationReport rep;
  rep.check = "curvature";
  rep.surface = named.name;
  rep.params = {{"value", tc.value},
                {"expected", expected},
                {"tail_estimate", tc.tail_estimate},
                {"r_min", data.domain.r_min},
                {"r_max", data.domain.r_max},
                {"quad_resolution", static_cast<double>(c.quad)}};
  rep.measured = std::abs(tc.value - expected) / std::max(std::abs(expected), 1.0);
  rep.bound = 0.02;
  rep.relation = "<=";
  rep.settle();
  rep.note = "relative error against -4 pi deg(g), halved for one-sided quotients";
  if (tc.tail_warning) rep.note += "; " + tc.message;
  return rep;
}

std::vector<VerificationReport> run_verify(const RunConfig& c) {
  validate_resolution(c);
  if (c.checks.empty()) throw UsageError("verify: at least one --check is required");
  for (std::size_t k = 0; k < c.radii.size(); ++k) {
    if (!(c.radii[k] > 0.0)) throw UsageError("--radii must be positive");
    if (k > 0 && !(c.radii[k] > c.radii[k - 1])) throw UsageError("--radii must be increasing");
  }
  if (!(c.R > 0.0)) throw UsageError("--R must be positive");

  const surfaces::NamedSurface named = resolve_surface(c.surface);
  const weierstrass::MinimalSurface surface(with_domain(named.data, c.domain));

  std::map<int, intrinsic::IntrinsicMesh> meshes;
  auto mesh_for = [&](int default_stencil) -> const intrinsic::IntrinsicMesh& {
    const int order = c.stencil.value_or(default_stencil);
    auto it = meshes.find(order);
    if (it == meshes.end()) {
      intrinsic::MeshOptions opt;
      opt.n_r = c.n_r;
      opt.n_theta = c.n_theta;
      opt.stencil_order = order;
      it = meshes.emplace(order, intrinsic::IntrinsicMesh::build(surface, opt)).first;
    }
    return it->second;
  };
  auto require_henneberg = [&](const std::string& check) {
    if (!named.henneberg_m) throw UsageError("--check " + check + " needs --surface henneberg:<m>");
    return henneberg::make(*named.henneberg_m);
  };

  std::vector<VerificationReport> reports;
  for (const std::string& check : c.checks) {
    if (check == "monotonicity") {
      const auto& mesh = mesh_for(kMonotonicityStencil);
      const auto p0 = mesh.nearest_vertex(surface.data().base_point);
      auto r = intrinsic::verify_monotonicity(mesh, p0, c.radii, named.name);
      reports.insert(reports.end(), r.begin(), r.end());
    } else if (check == "chord-arc") {
      const auto index = c.index ? c.index : known_index(named);
      if (!index) throw UsageError("--check chord-arc on a surface file needs --index");
      const int branch = c.branch.value_or(weierstrass::total_branching_order(surface));
      if (*index < 0 || branch < 0) throw UsageError("--index and --branch must be >= 0");
      const auto& mesh = mesh_for(kDefaultStencil);
      const auto p0 = mesh.nearest_vertex(surface.data().base_point);
      auto r = intrinsic::verify_chord_arc(mesh, p0, c.R, *index, branch, named.name);
      reports.insert(reports.end(), r.begin(), r.end());
    } else if (check == "laplacian") {
      reports.push_back(intrinsic::laplacian_identity_check(mesh_for(kDefaultStencil), named.name));
    } else if (check == "oracle") {
      const auto h = require_henneberg(check);
      reports.push_back(henneberg::oracle_match(h, c.samples > 0 ? c.samples : 1000));
    } else if (check == "symmetry") {
      const auto h = require_henneberg(check);
      reports.push_back(henneberg::symmetry_check(h, c.samples > 0 ? c.samples : 200));
    } else if (check == "curvature") {
      reports.push_back(curvature_report(named, c));
    } else if (check == "stability") {
      reports.push_back(henneberg::stability_report(surface, named.name));
    } else {
      throw UsageError("unknown check '" + check + "'");
    }
  }
  return reports;
}

void emit(const RunConfig& c, const std::string& content, std::ostream& out) {
  if (c.output.empty() || c.output == "-") {
    out << content;
  } else {
    io::write_file_atomic(c.output, content);
  }
}

std::string summary_line(const VerificationReport& r) {
  std::ostringstream os;
  os << (r.vacuous ? "VACUOUS" : (r.pass ? "PASS" : "FAIL")) << "  " << r.check << " ["
     << r.surface << "] measured " << io::format_double(r.measured) << ' ' << r.relation << ' '
     << io::format_double(r.bound);
  return os.str();
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto reports = run_verify(c);
  if (c.format != "json" && c.format != "csv") {
    throw UsageError("verify: --format must be json or csv");
  }
  emit(c, c.format == "json" ? io::reports_to_json(reports) : io::reports_to_csv(reports), out);
  bool ok = true;
  for (const auto& r : reports) {
    if (!c.output.empty() && c.output != "-") out << summary_line(r) << '\n';
    if (!r.vacuous && !r.pass) ok = false;
  }
  if (!ok) err << "minlab: at least one check failed\n";
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_export(const RunConfig& c, std::ostream& out) {
  validate_resolution(c);
  if (c.format != "ply" && c.format != "obj") throw UsageError("export: --format must be ply or obj");
  if (c.attach_dist && c.format != "ply") throw UsageError("export: --dist needs --format ply");
  const surfaces::NamedSurface named = resolve_surface(c.surface);
  const weierstrass::MinimalSurface surface(with_domain(named.data, c.domain));
  intrinsic::MeshOptions opt;
  opt.n_r = c.n_r;
  opt.n_theta = c.n_theta;
  opt.stencil_order = c.stencil.value_or(kDefaultStencil);
  const auto mesh = intrinsic::IntrinsicMesh::build(surface, opt);
  std::string content;
  if (c.format == "obj") {
    content = io::mesh_to_obj(mesh);
  } else if (c.attach_dist) {
    const auto field = intrinsic::geodesic_distances(mesh, mesh.nearest_vertex(surface.data().base_point));
    content = io::mesh_to_ply(mesh, field.dist);
  } else {
    content = io::mesh_to_ply(mesh);
  }
  emit(c, content, out);
  return kExitPass;
}

struct BoundsConfig {
  int index = 0;
  int branch = 0;
  std::string profile;
  std::string format = "text";
};

int cmd_bounds(const BoundsConfig& b, std::ostream& out) {
  if (b.index < 0 || b.branch < 0) throw UsageError("bounds: --index and --branch must be >= 0");
  if (b.format != "text" && b.format != "json") throw UsageError("bounds: --format must be text or json");
  std::optional<bounds::TopologyProfile> profile;
  if (!b.profile.empty()) {
    const auto named = resolve_surface(b.profile);
    profile = surfaces::topology_profile(weierstrass::MinimalSurface(named.data));
  }
  const auto set = bounds::bound_set(b.index, b.branch, profile ? &*profile : nullptr);
  const bool c_vacuous = set.C_hat <= 0.0;
  const bool b_vacuous = set.b_max < 0;
  if (b.format == "json") {
    io::Json j;
    j["I"] = b.index;
    j["B"] = b.branch;
    j["L_hat"] = set.L_hat;
    j["C_hat"] = set.C_hat;
    j["C_hat_vacuous"] = c_vacuous;
    j["b_max"] = set.b_max;
    j["b_max_vacuous"] = b_vacuous;
    j["spinning_2S_ub"] = set.spinning_2S_ub;
    if (profile) {
      j["index_lb"] = set.index_lb;
      j["profile"] = {{"orientable", profile->orientable},
                      {"genus", profile->genus},
                      {"ends", profile->ends},
                      {"branching", profile->branching}};
    }
    out << j.dump(2) << '\n';
    return kExitPass;
  }
  out << "I = " << b.index << ", B = " << b.branch << '\n'
      << "L_hat = " << io::format_double(set.L_hat) << '\n'
      << "C_hat = " << io::format_double(set.C_hat) << (c_vacuous ? "  (vacuous)" : "") << '\n'
      << "b_max = " << set.b_max << (b_vacuous ? "  (vacuous: only the plane qualifies)" : "") << '\n'
      << "2S <= " << set.spinning_2S_ub << '\n';
  if (profile) out << "index_lb = " << set.index_lb << '\n';
  return kExitPass;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"minlab: branched minimal surfaces and their intrinsic estimates"};
  app.require_subcommand(1);

  BoundsConfig bcfg;
  auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form bounds for index I and branching B");
  bounds_cmd->add_option("--index", bcfg.index, "Morse index I");
  bounds_cmd->add_option("--branch", bcfg.branch, "Total branching order B");
  bounds_cmd->add_option("--profile", bcfg.profile,
                         "Surface (built-in name or JSON file) for the index lower bound");
  bounds_cmd->add_option("--format", bcfg.format, "text or json");

  RunConfig vcfg;
  auto* verify_cmd = app.add_subcommand("verify", "Run numerical checks and write JSON reports");
  RunConfig ecfg;
  ecfg.format = "ply";
  auto* export_cmd = app.add_subcommand("export", "Write the meshed surface as PLY or OBJ");

  for (auto [cmd, cfg] : {std::pair{verify_cmd, &vcfg}, std::pair{export_cmd, &ecfg}}) {
    cmd->add_option("--surface", cfg->surface,
                    "plane, enneper, catenoid, henneberg:<m> or a surface JSON file")
        ->capture_default_str();
    cmd->add_option("--nr", cfg->n_r, "Radial rings")->capture_default_str();
    cmd->add_option("--ntheta", cfg->n_theta, "Angular columns")->capture_default_str();
    cmd->add_option("--stencil", cfg->stencil,
                    "Stencil order 1-6 (default 6 for monotonicity, 3 otherwise)");
    cmd->add_option("--domain", cfg->domain, "Override the domain: r_min,r_max")->delimiter(',');
    cmd->add_option("--format", cfg->format, "verify: json|csv; export: ply|obj")
        ->capture_default_str();
    cmd->add_option("-o,--output", cfg->output, "Output path (default stdout)");
  }
  verify_cmd
      ->add_option("--check", vcfg.checks,
                   "monotonicity, chord-arc, laplacian, oracle, symmetry, curvature, stability")
      ->delimiter(',');
  verify_cmd->add_option("--radii", vcfg.radii, "Increasing ball radii")->delimiter(',');
  verify_cmd->add_option("--R", vcfg.R, "Extrinsic radius for chord-arc")->capture_default_str();
  verify_cmd->add_option("--index", vcfg.index, "Index hypothesis I for chord-arc");
  verify_cmd->add_option("--branch", vcfg.branch, "Branching hypothesis B for chord-arc");
  verify_cmd->add_option("--quad", vcfg.quad, "Quadrature resolution for curvature")
      ->capture_default_str();
  verify_cmd->add_option("--samples", vcfg.samples, "Samples for oracle and symmetry checks");
  export_cmd->add_flag("--dist", ecfg.attach_dist, "Attach distances from the base vertex (PLY)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*bounds_cmd) return cmd_bounds(bcfg, out);
    if (*verify_cmd) return cmd_verify(vcfg, out, err);
    return cmd_export(ecfg, out);
  } catch (const intrinsic::ComponentError& e) {
    err << "minlab: numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::domain_error& e) {
    err << "minlab: numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "minlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "minlab: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace minlab::cli
