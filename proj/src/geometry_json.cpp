#include "polypdd/geometry_json.hpp"

#include <fstream>

#include "polypdd/errors.hpp"

namespace polypdd {

namespace {

double read_number(const nlohmann::json& v, const char* what) {
  if (!v.is_number()) throw GeometryError(std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace

SimplePolygon GeometryInput::polygon() const {
  if (const auto* tri = std::get_if<Triangle>(&shape)) {
    const auto& v = tri->vertices();
    return SimplePolygon({v[0], v[1], v[2]});
  }
  return std::get<SimplePolygon>(shape);
}

double GeometryInput::diameter() const {
  return std::visit([](const auto& s) { return s.diameter(); }, shape);
}

GeometryInput parse_geometry(const nlohmann::json& doc) {
  if (!doc.is_object()) throw GeometryError("geometry must be a JSON object");
  std::optional<double> scale;
  if (doc.contains("scale")) {
    scale = read_number(doc.at("scale"), "scale");
    if (!(*scale > 0.0)) throw GeometryError("scale must be positive");
  }
  const bool has_angles = doc.contains("angles");
  const bool has_vertices = doc.contains("vertices");
  const bool has_disk = doc.contains("disk");
  if (int(has_angles) + int(has_vertices) + int(has_disk) != 1) {
    throw GeometryError("geometry needs exactly one of \"angles\", \"vertices\" or \"disk\"");
  }

  if (has_disk) {
    const auto& disk = doc.at("disk");
    if (!disk.is_object() || !disk.contains("radius") || !disk.contains("sides")) {
      throw GeometryError("\"disk\" needs \"radius\" and \"sides\"");
    }
    Point2 center{};
    if (disk.contains("center")) {
      const auto& c = disk.at("center");
      if (!c.is_array() || c.size() != 2) throw GeometryError("disk center must be [x, y]");
      center = {read_number(c[0], "x"), read_number(c[1], "y")};
    }
    const double radius = read_number(disk.at("radius"), "radius");
    if (!disk.at("sides").is_number_integer()) throw GeometryError("disk sides must be an integer");
    const double s = scale.value_or(1.0);
    return {approximate_disk(s * center, s * radius, disk.at("sides").get<int>()), doc};
  }

  if (has_angles) {
    const auto& arr = doc.at("angles");
    if (!arr.is_array() || arr.size() != 3) throw GeometryError("\"angles\" must hold 3 numbers");
    AngleSpec spec{};
    for (std::size_t i = 0; i < 3; ++i) spec.radians[i] = read_number(arr[i], "angle") * kPi / 180.0;
    return {canonicalize_triangle(spec, scale), doc};
  }

  const auto& arr = doc.at("vertices");
  if (!arr.is_array()) throw GeometryError("\"vertices\" must be an array of [x, y] pairs");
  const double s = scale.value_or(1.0);
  std::vector<Point2> pts;
  for (const auto& v : arr) {
    if (!v.is_array() || v.size() != 2) throw GeometryError("each vertex must be [x, y]");
    pts.push_back({s * read_number(v[0], "x"), s * read_number(v[1], "y")});
  }
  if (pts.size() == 3) return {Triangle(pts[0], pts[1], pts[2]), doc};
  return {SimplePolygon(std::move(pts)), doc};
}

GeometryInput load_geometry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open geometry file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw GeometryError("malformed geometry file " + path.string() + ": " + e.what());
  }
  return parse_geometry(doc);
}

nlohmann::json to_json(const Triangle& tri) {
  nlohmann::json verts = nlohmann::json::array();
  for (Point2 p : tri.vertices()) verts.push_back({p.x, p.y});
  return {{"vertices", verts}};
}

nlohmann::json to_json(const SimplePolygon& poly) {
  nlohmann::json verts = nlohmann::json::array();
  for (Point2 p : poly.vertices()) verts.push_back({p.x, p.y});
  return {{"vertices", verts}};
}

}  // namespace polypdd
