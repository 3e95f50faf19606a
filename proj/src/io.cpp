#include "minlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace minlab::io {

namespace {

LaurentPoly parse_poly(const Json& j, const char* field) {
  if (!j.is_array()) {
    throw std::invalid_argument(std::string("surface: '") + field + "' must be an array");
  }
  std::vector<std::pair<int, Complex>> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number() ||
        !t[2].is_number()) {
      throw std::invalid_argument(std::string("surface: entries of '") + field +
                                  "' must be [int exponent, re, im]");
    }
    terms.emplace_back(t[0].get<int>(), Complex(t[1].get<double>(), t[2].get<double>()));
  }
  try {
    return LaurentPoly::from_pairs(terms);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("surface: '") + field + "': " + e.what());
  }
}

Json poly_to_json(const LaurentPoly& p) {
  Json out = Json::array();
  for (const auto& [exp, c] : p.terms()) out.push_back({exp, c.real(), c.imag()});
  return out;
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

weierstrass::WeierstrassData parse_surface(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("surface: top level must be an object");
  for (const char* key : {"g", "omega", "domain"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("surface: missing '") + key + "'");
  }
  weierstrass::WeierstrassData data;
  data.g = parse_poly(j["g"], "g");
  data.omega = parse_poly(j["omega"], "omega");
  const Json& dom = j["domain"];
  if (!dom.is_object() || !dom.contains("r_min") || !dom.contains("r_max") ||
      !dom["r_min"].is_number() || !dom["r_max"].is_number()) {
    throw std::invalid_argument("surface: 'domain' must hold numeric r_min and r_max");
  }
  data.domain = {dom["r_min"].get<double>(), dom["r_max"].get<double>()};
  data.domain.validate();
  if (j.contains("quotient")) {
    if (!j["quotient"].is_boolean()) throw std::invalid_argument("surface: 'quotient' must be bool");
    data.quotient = j["quotient"].get<bool>();
  }
  if (j.contains("base_point")) {
    const Json& b = j["base_point"];
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
      throw std::invalid_argument("surface: 'base_point' must be [re, im]");
    }
    data.base_point = Complex(b[0].get<double>(), b[1].get<double>());
  }
  return data;
}

weierstrass::WeierstrassData load_surface(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("surface: cannot open '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("surface: '" + path.string() + "': " + e.what());
  }
  return parse_surface(j);
}

Json surface_to_json(const weierstrass::WeierstrassData& data) {
  Json j;
  j["g"] = poly_to_json(data.g);
  j["omega"] = poly_to_json(data.omega);
  j["domain"] = {{"r_min", data.domain.r_min}, {"r_max", data.domain.r_max}};
  j["quotient"] = data.quotient;
  j["base_point"] = {data.base_point.real(), data.base_point.imag()};
  return j;
}

Json report_to_json(const VerificationReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = number(v);
  Json j;
  j["check"] = r.check;
  j["surface"] = r.surface;
  j["params"] = std::move(params);
  j["measured"] = number(r.measured);
  j["bound"] = number(r.bound);
  j["margin"] = number(r.margin);
  j["relation"] = r.relation;
  j["resolution"] = {{"n_r", r.n_r}, {"n_theta", r.n_theta}, {"stencil_order", r.stencil_order}};
  j["pass"] = r.pass;
  j["vacuous"] = r.vacuous;
  j["note"] = r.note;
  return j;
}

std::string reports_to_json(std::span<const VerificationReport> reports) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(std::span<const VerificationReport> reports) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "check,surface,measured,bound,margin,relation,n_r,n_theta,stencil_order,pass,vacuous,params,"
        "note\n";
  for (const auto& r : reports) {
    std::string params;
    for (const auto& [k, v] : r.params) {
      if (!params.empty()) params += ';';
      params += k + "=" + format_double(v);
    }
    os << quote(r.check) << ',' << quote(r.surface) << ',' << format_double(r.measured) << ','
       << format_double(r.bound) << ',' << format_double(r.margin) << ',' << quote(r.relation)
       << ',' << r.n_r << ',' << r.n_theta << ',' << r.stencil_order << ','
       << (r.pass ? "true" : "false") << ',' << (r.vacuous ? "true" : "false") << ','
       << quote(params) << ',' << quote(r.note) << '\n';
  }
  return os.str();
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string mesh_to_ply(const intrinsic::IntrinsicMesh& mesh, std::span<const double> dist) {
  if (!dist.empty() && dist.size() != mesh.size()) {
    throw std::invalid_argument("mesh_to_ply: distance field size does not match the mesh");
  }
  std::string out;
  out.reserve(mesh.size() * 96);
  out += "ply\nformat ascii 1.0\ncomment minlab intrinsic mesh\n";
  out += "element vertex " + std::to_string(mesh.size()) + "\n";
  out += "property double x\nproperty double y\nproperty double z\nproperty double lambda\n";
  if (!dist.empty()) out += "property double dist\n";
  out += "element face " + std::to_string(mesh.triangles().size()) + "\n";
  out += "property list uchar int vertex_indices\nend_header\n";
  for (std::size_t v = 0; v < mesh.size(); ++v) {
    const auto id = static_cast<intrinsic::VertexId>(v);
    const auto& p = mesh.position(id);
    out += format_double(p.x()) + ' ' + format_double(p.y()) + ' ' + format_double(p.z()) + ' ' +
           format_double(mesh.lambda(id));
    if (!dist.empty()) out += ' ' + format_double(std::isfinite(dist[v]) ? dist[v] : -1.0);
    out += '\n';
  }
  for (const auto& t : mesh.triangles()) {
    out += "3 " + std::to_string(t.v[0]) + ' ' + std::to_string(t.v[1]) + ' ' +
           std::to_string(t.v[2]) + '\n';
  }
  return out;
}

std::string mesh_to_obj(const intrinsic::IntrinsicMesh& mesh) {
  std::string out;
  out.reserve(mesh.size() * 72);
  out += "# minlab intrinsic mesh\n";
  for (const auto& p : mesh.positions()) {
    out += "v " + format_double(p.x()) + ' ' + format_double(p.y()) + ' ' + format_double(p.z()) +
           '\n';
  }
  for (const auto& t : mesh.triangles()) {
    out += "f " + std::to_string(t.v[0] + 1) + ' ' + std::to_string(t.v[1] + 1) + ' ' +
           std::to_string(t.v[2] + 1) + '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into place at '" + path.string() +
                             "': " + ec.message());
  }
}

}  // namespace minlab::io
