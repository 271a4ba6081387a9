#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace polypdd {

inline constexpr double kPi = 3.14159265358979323846;

// Absolute tolerance on orientation cross products and on signed line
// offsets. Vertices closer than this to a clipping line snap onto it.
inline constexpr double kGeomEps = 1e-12;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Twice the signed area of (a, b, c); positive when counter-clockwise.
inline double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

bool is_finite(Point2 p);

/// Side lengths sorted a >= b >= c and the opposite angles alpha >= beta >= gamma.
struct TriangleShape {
  double a = 0.0, b = 0.0, c = 0.0;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  double area = 0.0;
};

/// Nondegenerate triangle with counter-clockwise vertex order.
class Triangle {
 public:
  /// Reorders clockwise input; throws GeometryError on non-finite or
  /// zero-area input.
  Triangle(Point2 a, Point2 b, Point2 c);

  const std::array<Point2, 3>& vertices() const { return v_; }
  Point2 operator[](std::size_t i) const { return v_[i]; }
  double area() const { return area_; }
  /// Longest side.
  double diameter() const;
  TriangleShape shape() const;
  bool contains(Point2 p, double eps = kGeomEps) const;

 private:
  std::array<Point2, 3> v_;
  double area_;
};

/// Simple polygon stored counter-clockwise. Construction rejects fewer than
/// three vertices, repeated consecutive vertices, self-intersections and
/// zero area; clockwise input is reversed.
class SimplePolygon {
 public:
  explicit SimplePolygon(std::vector<Point2> vertices);

  std::span<const Point2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Point2 operator[](std::size_t i) const { return vertices_[i]; }
  double area() const { return area_; }
  double diameter() const;
  bool is_convex() const;
  /// Even-odd containment; boundary points count as inside.
  bool contains(Point2 p) const;

 private:
  std::vector<Point2> vertices_;
  double area_;
};

// ---------------------------------------------------------------------------
// Triangle construction

struct AngleSpec {
  std::array<double, 3> radians;
};
struct SideSpec {
  std::array<double, 3> lengths;
};
/// Two sides and the angle between them.
struct SasSpec {
  double side1;
  double side2;
  double included_angle;
};
using TriangleSpec = std::variant<AngleSpec, SideSpec, SasSpec>;

/// Canonical placement: sides a >= b >= c, C = (0,0), B = (a,0), A in the
/// upper half plane. The longest side is 1 unless `scale` is given, in which
/// case it equals `scale`.
Triangle canonicalize_triangle(const TriangleSpec& spec,
                               std::optional<double> scale = std::nullopt);

// ---------------------------------------------------------------------------
// Polygons

double polygon_area(const SimplePolygon& poly);

/// Ear clipping for general polygons, fan from vertex 0 for convex ones.
/// Always returns size() - 2 counter-clockwise triangles.
std::vector<Triangle> triangulate(const SimplePolygon& poly);

/// Fan triangulation of a convex polygon from vertex `apex`.
std::vector<Triangle> triangulate_fan(const SimplePolygon& poly, std::size_t apex = 0);

/// Ear clipping on a raw counter-clockwise ring. Unlike triangulate() the ring
/// may touch itself at duplicated vertices, as produced by bridging a hole
/// into its outer boundary.
std::vector<Triangle> ear_clip(std::span<const Point2> ring);

/// Regular n-gon inscribed in the circle; n >= 8.
SimplePolygon approximate_disk(Point2 center, double radius, int n);

// ---------------------------------------------------------------------------
// Lines in (theta, p) coordinates

/// The line {(x, y) : -x sin(theta) + y cos(theta) = p}, theta in [0, pi).
/// Arc length along the line is measured in the direction (cos theta, sin theta).
struct LineCoord {
  double theta;
  double p;

  LineCoord(double theta, double p);
  Point2 direction() const { return {std::cos(theta), std::sin(theta)}; }
  Point2 normal() const { return {-std::sin(theta), std::cos(theta)}; }
};

struct SupportInterval {
  double lo;
  double hi;
  double width() const { return hi - lo; }
  bool empty() const { return hi <= lo; }
};

SupportInterval support_interval(std::span<const Point2> points, double theta);
SupportInterval support_interval(const Triangle& tri, double theta);
/// Lines meeting both triangles: the intersection of the two supports.
SupportInterval support_interval(const Triangle& a, const Triangle& b, double theta);

struct Chord {
  double start;
  double end;
  double length() const { return end - start; }
};

/// Maximal interior intervals of a line, ordered by arc length.
struct ChordSet {
  std::vector<Chord> intervals;

  bool empty() const { return intervals.empty(); }
  double total_length() const;
};

/// Chords of a line through a pair of interior-disjoint triangles.
/// l1 is the length inside the first triangle, l3 inside the second and
/// l2 the gap between them along the line (0 when the chords touch).
struct PairChords {
  ChordSet chords;
  std::optional<Chord> first;
  std::optional<Chord> second;
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;

  bool hits_both() const { return first.has_value() && second.has_value(); }
};

ChordSet clip_line(const SimplePolygon& poly, const LineCoord& line);
ChordSet clip_line(const Triangle& tri, const LineCoord& line);
PairChords clip_line(const Triangle& first, const Triangle& second, const LineCoord& line);

/// A triangle projected onto the frame of one line orientation. Clipping a
/// family of parallel lines only needs the per-offset step, which this
/// caches.
class TriangleProjection {
 public:
  TriangleProjection(const Triangle& tri, double theta);

  SupportInterval support() const { return {lo_, hi_}; }
  /// Chord of the line at offset p; empty when the line misses or grazes.
  std::optional<Chord> chord(double p) const;

 private:
  std::array<double, 3> offset_;  // signed distance of each vertex along the normal
  std::array<double, 3> along_;   // arc-length coordinate of each vertex
  double lo_;
  double hi_;
};

// ---------------------------------------------------------------------------
// Triangle pairs

enum class PairKind { shared_side_convex, shared_side_concave, shared_vertex, disjoint };

std::string to_string(PairKind kind);

/// Quadrangle formed by two triangles sharing the side PQ. The first
/// triangle is (P, Q, X), the second (Q, P, Y).
struct QuadrangleInfo {
  Point2 shared_p;
  Point2 shared_q;
  Point2 apex_first;
  Point2 apex_second;
  double shared_side;     // e = |PQ|
  double other_diagonal;  // f = |XY|
  // Angles the shared side makes with the other sides, in the order
  // (first at P, second at P, first at Q, second at Q).
  std::array<double, 4> corner_angles;
};

struct TrianglePairSpec {
  Triangle first;
  Triangle second;
  PairKind kind;
  std::optional<QuadrangleInfo> quad;

  double area_first() const { return first.area(); }
  double area_second() const { return second.area(); }
  /// Largest distance between a point of the first and a point of the second.
  double max_distance() const;
  /// Smallest such distance; zero when the triangles touch.
  double min_distance() const;
};

/// Throws GeometryError when the interiors overlap.
TrianglePairSpec classify_pair(const Triangle& first, const Triangle& second);

bool interiors_overlap(const Triangle& a, const Triangle& b);

double segment_distance(Point2 p, Point2 a, Point2 b);

}  // namespace polypdd
