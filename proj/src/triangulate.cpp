#include <algorithm>
#include <numeric>

#include "polypdd/errors.hpp"
#include "polypdd/geom.hpp"

namespace polypdd {

namespace {

bool same_point(Point2 a, Point2 b) { return distance(a, b) <= kGeomEps; }

bool inside_or_on(Point2 p, Point2 a, Point2 b, Point2 c) {
  return orient(a, b, p) >= -kGeomEps && orient(b, c, p) >= -kGeomEps &&
         orient(c, a, p) >= -kGeomEps;
}

}  // namespace

std::vector<Triangle> triangulate_fan(const SimplePolygon& poly, std::size_t apex) {
  if (!poly.is_convex()) throw GeometryError("fan triangulation needs a strictly convex polygon");
  const std::size_t n = poly.size();
  if (apex >= n) throw GeometryError("fan apex out of range");
  std::vector<Triangle> out;
  out.reserve(n - 2);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    out.emplace_back(poly[apex], poly[(apex + k) % n], poly[(apex + k + 1) % n]);
  }
  return out;
}

std::vector<Triangle> ear_clip(std::span<const Point2> ring) {
  const std::size_t n = ring.size();
  if (n < 3) throw GeometryError("ring needs at least 3 vertices");
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) twice += cross(ring[i], ring[(i + 1) % n]);
  if (twice <= kGeomEps) throw GeometryError("ring must be counter-clockwise with positive area");

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<Triangle> out;
  out.reserve(n - 2);

  std::size_t cursor = 0;
  while (idx.size() > 3) {
    const std::size_t m = idx.size();
    bool clipped = false;
    for (std::size_t step = 0; step < m; ++step) {
      const std::size_t k = (cursor + step) % m;
      const Point2 a = ring[idx[(k + m - 1) % m]];
      const Point2 b = ring[idx[k]];
      const Point2 c = ring[idx[(k + 1) % m]];
      if (orient(a, b, c) <= kGeomEps) continue;

      bool blocked = false;
      for (std::size_t r = 0; r < m && !blocked; ++r) {
        if (r == k || r == (k + 1) % m || r == (k + m - 1) % m) continue;
        const Point2 q = ring[idx[r]];
        // Bridge duplicates coincide with an ear corner and do not block it.
        if (same_point(q, a) || same_point(q, b) || same_point(q, c)) continue;
        blocked = inside_or_on(q, a, b, c);
      }
      if (blocked) continue;

      out.emplace_back(a, b, c);
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
      cursor = k % idx.size();
      clipped = true;
      break;
    }
    if (!clipped) throw GeometryError("ear clipping failed: degenerate (collinear) polygon");
  }
  out.emplace_back(ring[idx[0]], ring[idx[1]], ring[idx[2]]);
  return out;
}

std::vector<Triangle> triangulate(const SimplePolygon& poly) {
  if (poly.size() == 3) return {Triangle(poly[0], poly[1], poly[2])};
  if (poly.is_convex()) return triangulate_fan(poly, 0);
  return ear_clip(poly.vertices());
}

}  // namespace polypdd
