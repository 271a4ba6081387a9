#include "polypdd/geom.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "polypdd/errors.hpp"

namespace polypdd {

namespace {

double angle_between(Point2 u, Point2 v) { return std::atan2(std::abs(cross(u, v)), dot(u, v)); }

bool on_segment(Point2 p, Point2 a, Point2 b) {
  return std::min(a.x, b.x) - kGeomEps <= p.x && p.x <= std::max(a.x, b.x) + kGeomEps &&
         std::min(a.y, b.y) - kGeomEps <= p.y && p.y <= std::max(a.y, b.y) + kGeomEps;
}

int sign_of(double v) { return v > kGeomEps ? 1 : (v < -kGeomEps ? -1 : 0); }

// Closed segments ab and cd share at least one point.
bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int o1 = sign_of(orient(a, b, c));
  const int o2 = sign_of(orient(a, b, d));
  const int o3 = sign_of(orient(c, d, a));
  const int o4 = sign_of(orient(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return false;
}

double signed_area(std::span<const Point2> pts) {
  double twice = 0.0;
  for (std::size_t i = 0, n = pts.size(); i < n; ++i) {
    twice += cross(pts[i], pts[(i + 1) % n]);
  }
  return 0.5 * twice;
}

double max_pairwise_distance(std::span<const Point2> a, std::span<const Point2> b) {
  double best = 0.0;
  for (Point2 p : a)
    for (Point2 q : b) best = std::max(best, distance(p, q));
  return best;
}

Triangle place_canonical(double a, double b, double c) {
  // Angle at C from the law of cosines; the longest side lies on the x-axis.
  const double cos_gamma = std::clamp((a * a + b * b - c * c) / (2.0 * a * b), -1.0, 1.0);
  const double gamma = std::acos(cos_gamma);
  const Point2 C{0.0, 0.0};
  const Point2 B{a, 0.0};
  const Point2 A{b * std::cos(gamma), b * std::sin(gamma)};
  return Triangle(A, B, C);
}

}  // namespace

bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// ---------------------------------------------------------------------------

Triangle::Triangle(Point2 a, Point2 b, Point2 c) : v_{a, b, c}, area_(0.0) {
  if (!is_finite(a) || !is_finite(b) || !is_finite(c)) {
    throw GeometryError("triangle has a non-finite vertex");
  }
  double twice = orient(a, b, c);
  if (std::abs(twice) <= kGeomEps) {
    throw GeometryError("degenerate triangle: zero area");
  }
  if (twice < 0.0) {
    std::swap(v_[1], v_[2]);
    twice = -twice;
  }
  area_ = 0.5 * twice;
}

double Triangle::diameter() const {
  return std::max({distance(v_[0], v_[1]), distance(v_[1], v_[2]), distance(v_[2], v_[0])});
}

TriangleShape Triangle::shape() const {
  struct SideAngle {
    double side;
    double angle;
  };
  std::array<SideAngle, 3> sa;
  for (int i = 0; i < 3; ++i) {
    const Point2 p = v_[i];
    const Point2 q = v_[(i + 1) % 3];
    const Point2 r = v_[(i + 2) % 3];
    sa[i] = {distance(q, r), angle_between(q - p, r - p)};
  }
  std::sort(sa.begin(), sa.end(), [](const SideAngle& l, const SideAngle& r) {
    return l.side > r.side;
  });
  TriangleShape s;
  s.a = sa[0].side;
  s.b = sa[1].side;
  s.c = sa[2].side;
  s.alpha = sa[0].angle;
  s.beta = sa[1].angle;
  s.gamma = sa[2].angle;
  s.area = area_;
  return s;
}

bool Triangle::contains(Point2 p, double eps) const {
  return orient(v_[0], v_[1], p) >= -eps && orient(v_[1], v_[2], p) >= -eps &&
         orient(v_[2], v_[0], p) >= -eps;
}

// ---------------------------------------------------------------------------

SimplePolygon::SimplePolygon(std::vector<Point2> vertices)
    : vertices_(std::move(vertices)), area_(0.0) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
  for (Point2 p : vertices_) {
    if (!is_finite(p)) throw GeometryError("polygon has a non-finite vertex");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(vertices_[i], vertices_[(i + 1) % n]) <= kGeomEps) {
      throw GeometryError("polygon has repeated consecutive vertices");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[(i + 1) % n];
    // Adjacent edges may only share their common endpoint.
    const Point2 c = vertices_[(i + 2) % n];
    if (n > 3 && sign_of(orient(a, b, c)) == 0 && dot(b - a, c - b) < 0.0) {
      throw GeometryError("polygon is self-intersecting (edge folds back)");
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_touch(a, b, vertices_[j], vertices_[(j + 1) % n])) {
        std::ostringstream msg;
        msg << "polygon is self-intersecting (edges " << i << " and " << j << ")";
        throw GeometryError(msg.str());
      }
    }
  }
  area_ = signed_area(vertices_);
  if (std::abs(area_) <= kGeomEps) throw GeometryError("degenerate polygon: zero area");
  if (area_ < 0.0) {
    std::reverse(vertices_.begin(), vertices_.end());
    area_ = -area_;
  }
}

double SimplePolygon::diameter() const { return max_pairwise_distance(vertices_, vertices_); }

bool SimplePolygon::is_convex() const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (orient(vertices_[(i + n - 1) % n], vertices_[i], vertices_[(i + 1) % n]) <= kGeomEps) {
      return false;
    }
  }
  return true;
}

bool SimplePolygon::contains(Point2 p) const {
  const std::size_t n = vertices_.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[j];
    if (sign_of(orient(a, b, p)) == 0 && on_segment(p, a, b)) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double polygon_area(const SimplePolygon& poly) { return poly.area(); }

// ---------------------------------------------------------------------------

Triangle canonicalize_triangle(const TriangleSpec& spec, std::optional<double> scale) {
  if (scale && !(*scale > 0.0 && std::isfinite(*scale))) {
    throw GeometryError("scale must be positive");
  }
  const double a = scale.value_or(1.0);

  if (const auto* angles = std::get_if<AngleSpec>(&spec)) {
    auto r = angles->radians;
    for (double x : r) {
      if (!(x > 0.0) || !std::isfinite(x)) {
        throw GeometryError("degenerate triangle: every angle must be positive");
      }
    }
    if (std::abs(r[0] + r[1] + r[2] - kPi) > 1e-9) {
      throw GeometryError("triangle angles must sum to pi");
    }
    std::sort(r.begin(), r.end(), std::greater<>());
    if (!(r[0] < kPi)) throw GeometryError("degenerate triangle: straight angle");
    const double sin_alpha = std::sin(r[0]);
    return place_canonical(a, a * std::sin(r[1]) / sin_alpha, a * std::sin(r[2]) / sin_alpha);
  }

  std::array<double, 3> sides{};
  if (const auto* s = std::get_if<SideSpec>(&spec)) {
    sides = s->lengths;
  } else {
    const auto& sas = std::get<SasSpec>(spec);
    if (!(sas.included_angle > 0.0 && sas.included_angle < kPi)) {
      throw GeometryError("degenerate triangle: included angle must lie in (0, pi)");
    }
    const double third = std::sqrt(sas.side1 * sas.side1 + sas.side2 * sas.side2 -
                                   2.0 * sas.side1 * sas.side2 * std::cos(sas.included_angle));
    sides = {sas.side1, sas.side2, third};
  }
  for (double x : sides) {
    if (!(x > 0.0) || !std::isfinite(x)) throw GeometryError("side lengths must be positive");
  }
  std::sort(sides.begin(), sides.end(), std::greater<>());
  if (!(sides[0] < (sides[1] + sides[2]) * (1.0 - 1e-12))) {
    throw GeometryError("degenerate triangle: triangle inequality violated");
  }
  const double k = a / sides[0];
  return place_canonical(a, k * sides[1], k * sides[2]);
}

SimplePolygon approximate_disk(Point2 center, double radius, int n) {
  if (!(radius > 0.0)) throw GeometryError("disk radius must be positive");
  if (n < 8) throw GeometryError("disk approximation needs at least 8 vertices");
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double phi = 2.0 * kPi * k / n;
    pts.push_back({center.x + radius * std::cos(phi), center.y + radius * std::sin(phi)});
  }
  return SimplePolygon(std::move(pts));
}

// ---------------------------------------------------------------------------

LineCoord::LineCoord(double theta_, double p_) : theta(theta_), p(p_) {
  if (!(theta >= 0.0 && theta < kPi)) throw GeometryError("line orientation must lie in [0, pi)");
  if (!std::isfinite(p)) throw GeometryError("line offset must be finite");
}

SupportInterval support_interval(std::span<const Point2> points, double theta) {
  const Point2 n{-std::sin(theta), std::cos(theta)};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Point2 v : points) {
    const double s = dot(n, v);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return {lo, hi};
}

SupportInterval support_interval(const Triangle& tri, double theta) {
  return support_interval(tri.vertices(), theta);
}

SupportInterval support_interval(const Triangle& a, const Triangle& b, double theta) {
  const SupportInterval sa = support_interval(a, theta);
  const SupportInterval sb = support_interval(b, theta);
  return {std::max(sa.lo, sb.lo), std::min(sa.hi, sb.hi)};
}

double ChordSet::total_length() const {
  return std::accumulate(intervals.begin(), intervals.end(), 0.0,
                         [](double acc, const Chord& c) { return acc + c.length(); });
}

// ---------------------------------------------------------------------------

std::string to_string(PairKind kind) {
  switch (kind) {
    case PairKind::shared_side_convex: return "shared-side-convex";
    case PairKind::shared_side_concave: return "shared-side-concave";
    case PairKind::shared_vertex: return "shared-vertex";
    case PairKind::disjoint: return "disjoint";
  }
  return "unknown";
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  const double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return distance(p, a + t * ab);
}

bool interiors_overlap(const Triangle& a, const Triangle& b) {
  const double scale = std::max({1.0, a.diameter(), b.diameter()});
  const double eps = kGeomEps * scale;
  for (const Triangle* t : {&a, &b}) {
    for (int i = 0; i < 3; ++i) {
      const Point2 e = (*t)[(i + 1) % 3] - (*t)[i];
      const Point2 n{-e.y, e.x};
      double amin = std::numeric_limits<double>::infinity(), amax = -amin;
      double bmin = amin, bmax = -amin;
      for (Point2 v : a.vertices()) {
        amin = std::min(amin, dot(n, v));
        amax = std::max(amax, dot(n, v));
      }
      for (Point2 v : b.vertices()) {
        bmin = std::min(bmin, dot(n, v));
        bmax = std::max(bmax, dot(n, v));
      }
      const double tol = eps * norm(n);
      if (amax <= bmin + tol || bmax <= amin + tol) return false;
    }
  }
  return true;
}

double TrianglePairSpec::max_distance() const {
  return max_pairwise_distance(first.vertices(), second.vertices());
}

double TrianglePairSpec::min_distance() const {
  if (kind != PairKind::disjoint) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [from, to] : {std::pair{&first, &second}, std::pair{&second, &first}}) {
    for (Point2 p : from->vertices()) {
      for (int i = 0; i < 3; ++i) {
        best = std::min(best, segment_distance(p, (*to)[i], (*to)[(i + 1) % 3]));
      }
    }
  }
  return best;
}

TrianglePairSpec classify_pair(const Triangle& first, const Triangle& second) {
  if (interiors_overlap(first, second)) {
    throw GeometryError("triangle interiors overlap");
  }
  const double tol = 1e-9 * std::max({1.0, first.diameter(), second.diameter()});
  std::array<bool, 3> shared_in_first{};
  std::array<int, 3> match_in_second{-1, -1, -1};
  int shared = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (distance(first[i], second[j]) <= tol) {
        shared_in_first[i] = true;
        match_in_second[i] = j;
        ++shared;
        break;
      }
    }
  }

  if (shared == 0) return {first, second, PairKind::disjoint, std::nullopt};
  if (shared == 1) return {first, second, PairKind::shared_vertex, std::nullopt};
  if (shared == 3) throw GeometryError("triangle interiors overlap");

  // Two shared vertices: first = (P, Q, X) counter-clockwise.
  int x_idx = 0;
  while (shared_in_first[x_idx]) ++x_idx;
  const Point2 P = first[(x_idx + 1) % 3];
  const Point2 Q = first[(x_idx + 2) % 3];
  const Point2 X = first[x_idx];
  int y_idx = 0;
  for (int j = 0; j < 3; ++j) {
    if (j != match_in_second[(x_idx + 1) % 3] && j != match_in_second[(x_idx + 2) % 3]) y_idx = j;
  }
  const Point2 Y = second[y_idx];

  const double op = orient(X, Y, P);
  const double oq = orient(X, Y, Q);
  const bool concave = sign_of(op) * sign_of(oq) > 0;

  QuadrangleInfo quad;
  quad.shared_p = P;
  quad.shared_q = Q;
  quad.apex_first = X;
  quad.apex_second = Y;
  quad.shared_side = distance(P, Q);
  quad.other_diagonal = distance(X, Y);
  quad.corner_angles = {angle_between(Q - P, X - P), angle_between(Q - P, Y - P),
                        angle_between(P - Q, X - Q), angle_between(P - Q, Y - Q)};
  return {first, second, concave ? PairKind::shared_side_concave : PairKind::shared_side_convex,
          quad};
}

}  // namespace polypdd
