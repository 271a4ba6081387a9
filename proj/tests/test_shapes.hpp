#pragma once

// Geometries shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "polypdd/geom.hpp"

namespace test_shapes {

using polypdd::kPi;
using polypdd::Point2;
using polypdd::SimplePolygon;
using polypdd::Triangle;

inline constexpr double kDeg = kPi / 180.0;

/// Regular n-gon with the given side, vertex k at angle 2 pi k / n.
inline SimplePolygon regular_polygon(int n, double side) {
  const double r = side / (2.0 * std::sin(kPi / n));
  std::vector<Point2> pts;
  for (int k = 0; k < n; ++k) {
    pts.push_back({r * std::cos(2.0 * kPi * k / n), r * std::sin(2.0 * kPi * k / n)});
  }
  return SimplePolygon(std::move(pts));
}

/// Triangles ABD and BCD on the diagonal BD = 1 with B = (0,0), D = (1,0):
/// angle A = 120, ABD = 35, ADB = 25; angle C = 80, CBD = CDB = 50.
struct ConvexPair {
  Point2 a, b, c, d;
  Triangle abd, bcd;
};

inline ConvexPair convex_pair() {
  const Point2 b{0, 0}, d{1, 0};
  const double ba = std::sin(25 * kDeg) / std::sin(120 * kDeg);
  const Point2 a{ba * std::cos(35 * kDeg), ba * std::sin(35 * kDeg)};
  const Point2 c{0.5, -0.5 * std::tan(50 * kDeg)};
  return {a, b, c, d, Triangle(a, b, d), Triangle(b, c, d)};
}

/// Triangles ABD (ABD = 110, DAB = 40, ADB = 30) and CBD (CBD = 160,
/// BCD = 15, CDB = 5) on BD = 1; the quadrangle ABCD is reflex at B.
struct ConcavePair {
  Point2 a, b, c, d;
  Triangle abd, cbd;
};

inline ConcavePair concave_pair() {
  const Point2 b{0, 0}, d{1, 0};
  const double ba = std::sin(30 * kDeg) / std::sin(40 * kDeg);
  const Point2 a{ba * std::cos(110 * kDeg), ba * std::sin(110 * kDeg)};
  const double bc = std::sin(5 * kDeg) / std::sin(15 * kDeg);
  const Point2 c{bc * std::cos(160 * kDeg), -bc * std::sin(160 * kDeg)};
  return {a, b, c, d, Triangle(a, b, d), Triangle(c, b, d)};
}

inline SimplePolygon concave_quadrangle() {
  const ConcavePair q = concave_pair();
  return SimplePolygon({q.a, q.b, q.c, q.d});
}

/// Vertices uniform in [-1, 1]^2, redrawn until every angle is at least
/// `min_angle_deg`.
inline Triangle random_triangle(std::mt19937_64& rng, double min_angle_deg) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const Point2 p{u(rng), u(rng)}, q{u(rng), u(rng)}, r{u(rng), u(rng)};
    if (std::abs(polypdd::orient(p, q, r)) < 1e-9) continue;
    const Triangle t(p, q, r);
    if (t.shape().gamma >= min_angle_deg * kDeg) return t;
  }
}

}  // namespace test_shapes
