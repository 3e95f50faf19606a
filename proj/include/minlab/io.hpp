#pragma once

// Surface definitions, verification reports and mesh files on disk.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "minlab/intrinsic.hpp"
#include "minlab/report.hpp"
#include "minlab/weierstrass.hpp"

namespace minlab::io {

using Json = nlohmann::ordered_json;

/// Surface file layout:
///   {"g": [[exp, re, im], ...], "omega": [[exp, re, im], ...],
///    "domain": {"r_min": x, "r_max": y}, "quotient": bool, "base_point": [re, im]}
/// "quotient" and "base_point" are optional (false and 1).
/// Throws std::invalid_argument on malformed input or duplicate exponents.
weierstrass::WeierstrassData parse_surface(const Json& j);
weierstrass::WeierstrassData load_surface(const std::filesystem::path& path);
Json surface_to_json(const weierstrass::WeierstrassData& data);

/// {check, surface, params, measured, bound, margin, relation, resolution,
///  pass, vacuous, note}. Non-finite numbers serialize as null.
Json report_to_json(const VerificationReport& report);
std::string reports_to_json(std::span<const VerificationReport> reports);
/// One header line plus one row per report; params are packed as k=v;k=v.
std::string reports_to_csv(std::span<const VerificationReport> reports);

/// ASCII PLY with vertex x y z lambda, plus dist when `dist` is non-empty,
/// and the mesh triangles as faces.
std::string mesh_to_ply(const intrinsic::IntrinsicMesh& mesh, std::span<const double> dist = {});
/// Positions and 1-based triangle faces.
std::string mesh_to_obj(const intrinsic::IntrinsicMesh& mesh);

/// Writes through a sibling temporary file and renames it into place.
/// Throws std::runtime_error naming the path on failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Shortest decimal form that reads back to the same double ("%.17g").
std::string format_double(double x);

}  // namespace minlab::io
