#pragma once

#include <filesystem>
#include <variant>

#include <nlohmann/json.hpp>

#include "polypdd/geom.hpp"

namespace polypdd {

/// A region read from a geometry document:
///   {"angles": [deg, deg, deg]}          canonical triangle, longest side 1
///   {"vertices": [[x, y], ...]}          triangle (3 vertices) or simple polygon
///   {"disk": {"center": [x, y], "radius": r, "sides": n}}
///                                        regular n-gon inscribed in the circle
/// Every form accepts an optional positive "scale". For angles it sets the
/// longest side; otherwise it multiplies every coordinate.
struct GeometryInput {
  std::variant<Triangle, SimplePolygon> shape;
  nlohmann::json source;

  bool is_triangle() const { return std::holds_alternative<Triangle>(shape); }
  /// The region as a polygon (a triangle becomes a 3-gon).
  SimplePolygon polygon() const;
  double diameter() const;
};

/// Throws GeometryError on malformed or degenerate documents.
GeometryInput parse_geometry(const nlohmann::json& doc);
GeometryInput load_geometry(const std::filesystem::path& path);

nlohmann::json to_json(const Triangle& tri);
nlohmann::json to_json(const SimplePolygon& poly);

}  // namespace polypdd
