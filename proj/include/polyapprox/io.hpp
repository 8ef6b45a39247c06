#pragma once

// JSON and SVG formats.
//
//   polytope: {"dim": d, "points": [[...], ...]}
//          or {"dim": d, "halfspaces": [{"normal": [...], "offset": b}, ...]}
//   index:    {"eps", "kernel", "body": {"center", "generators", "lambda"},
//              "map": {"matrix", "translation"}, "dim", "points"}
//
// Doubles are written in shortest round-trip form, so parse(render(x)) == x.

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "polyapprox/geometry.hpp"
#include "polyapprox/width_index.hpp"

namespace polyapprox {

using Json = nlohmann::json;
using AnyPolytope = std::variant<PointPolytope, HalfspacePolytope>;

Json to_json(const Vec& v);
Json to_json(const PointPolytope& p);
Json to_json(const HalfspacePolytope& h);
Json to_json(const AnyPolytope& p);
Json to_json(const AffineMap& m);
Json to_json(const SymmetricBody& b);
/// Includes the source points so the index can be restored on its own.
Json to_json(const WidthIndex& idx, const PointPolytope& source);

/// Parse JSON text; syntax errors carry line and column.
Json parse_json_text(std::string_view text, std::string_view origin = "input");
/// Read and parse a file; errors name the file.
Json read_json_file(const std::string& path);

/// Structural readers; errors name the offending field path, e.g. points[3][1].
PointPolytope point_polytope_from_json(const Json& j);
HalfspacePolytope halfspace_polytope_from_json(const Json& j);
AnyPolytope polytope_from_json(const Json& j);
WidthIndex index_from_json(const Json& j);
/// The source points stored with an index.
PointPolytope index_source_from_json(const Json& j);

/// Deterministic text with a trailing newline.
std::string dump(const Json& j);

/// 2D drawings: hull outlines of point sets, clipped regions for halfspaces.
std::string svg_render_2d(const std::vector<AnyPolytope>& layers);

}  // namespace polyapprox
