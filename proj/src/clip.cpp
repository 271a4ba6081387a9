#include <algorithm>

#include "polypdd/geom.hpp"

namespace polypdd {

namespace {

// Arc-length positions where the line crosses the boundary of a closed ring.
// Vertices within kGeomEps of the line snap onto it and count as lying
// below, so a line through a vertex crosses exactly the edges that change
// side and grazing contacts produce zero or two coincident crossings.
template <class Offset, class Along>
void ring_crossings(std::size_t n, Offset offset, Along along, std::vector<double>& out) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double si = offset(i);
    const double sj = offset(j);
    if ((si > 0.0) == (sj > 0.0)) continue;
    const double ti = along(i);
    const double tj = along(j);
    out.push_back(si == 0.0 ? ti : (sj == 0.0 ? tj : ti + (tj - ti) * si / (si - sj)));
  }
}

double snap(double s) { return std::abs(s) <= kGeomEps ? 0.0 : s; }

ChordSet pair_up(std::vector<double>& crossings) {
  std::sort(crossings.begin(), crossings.end());
  ChordSet out;
  for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
    const double start = crossings[k];
    const double end = crossings[k + 1];
    if (!out.intervals.empty() && std::abs(start - out.intervals.back().end) <= kGeomEps) {
      out.intervals.back().end = end;  // touching at a reflex vertex: one maximal chord
    } else {
      out.intervals.push_back({start, end});
    }
  }
  std::erase_if(out.intervals, [](const Chord& c) { return !(c.length() > 0.0); });
  return out;
}

}  // namespace

TriangleProjection::TriangleProjection(const Triangle& tri, double theta) {
  const Point2 u{std::cos(theta), std::sin(theta)};
  const Point2 n{-u.y, u.x};
  for (int i = 0; i < 3; ++i) {
    offset_[i] = dot(n, tri[i]);
    along_[i] = dot(u, tri[i]);
  }
  lo_ = std::min({offset_[0], offset_[1], offset_[2]});
  hi_ = std::max({offset_[0], offset_[1], offset_[2]});
}

std::optional<Chord> TriangleProjection::chord(double p) const {
  if (!(p > lo_ - kGeomEps && p < hi_ + kGeomEps)) return std::nullopt;
  std::array<double, 3> s;
  for (int i = 0; i < 3; ++i) s[i] = snap(offset_[i] - p);
  double t[2];
  int count = 0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    if ((s[i] > 0.0) == (s[j] > 0.0)) continue;
    t[count++] = s[i] == 0.0 ? along_[i]
                 : s[j] == 0.0 ? along_[j]
                               : along_[i] + (along_[j] - along_[i]) * s[i] / (s[i] - s[j]);
  }
  if (count != 2) return std::nullopt;
  Chord c{std::min(t[0], t[1]), std::max(t[0], t[1])};
  if (!(c.length() > 0.0)) return std::nullopt;
  return c;
}

ChordSet clip_line(const SimplePolygon& poly, const LineCoord& line) {
  const Point2 u = line.direction();
  const Point2 n = line.normal();
  const auto verts = poly.vertices();
  std::vector<double> crossings;
  ring_crossings(
      verts.size(), [&](std::size_t i) { return snap(dot(n, verts[i]) - line.p); },
      [&](std::size_t i) { return dot(u, verts[i]); }, crossings);
  return pair_up(crossings);
}

ChordSet clip_line(const Triangle& tri, const LineCoord& line) {
  ChordSet out;
  if (auto c = TriangleProjection(tri, line.theta).chord(line.p)) out.intervals.push_back(*c);
  return out;
}

PairChords clip_line(const Triangle& first, const Triangle& second, const LineCoord& line) {
  PairChords out;
  out.first = TriangleProjection(first, line.theta).chord(line.p);
  out.second = TriangleProjection(second, line.theta).chord(line.p);
  if (out.first) {
    out.l1 = out.first->length();
    out.chords.intervals.push_back(*out.first);
  }
  if (out.second) {
    out.l3 = out.second->length();
    out.chords.intervals.push_back(*out.second);
  }
  if (out.hits_both()) {
    auto& iv = out.chords.intervals;
    if (iv[1].start < iv[0].start) std::swap(iv[0], iv[1]);
    out.l2 = std::max(0.0, iv[1].start - iv[0].end);
  }
  return out;
}

}  // namespace polypdd
