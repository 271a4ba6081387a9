#include "polypdd/compose.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "parallel.hpp"
#include "polypdd/errors.hpp"

namespace polypdd {

namespace {

constexpr double kWeightTolerance = 1e-9;
constexpr double kRingTolerance = 5e-3;

void check_weights(std::size_t curves, std::span<const double> weights) {
  if (curves == 0 || curves != weights.size()) {
    throw std::invalid_argument("mixture needs one weight per curve and at least one curve");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("mixture weights must be >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "mixture weights sum to " << total;
    throw std::invalid_argument(msg.str());
  }
}

template <class Curve>
void check_mixture(std::span<const Curve> curves, std::span<const double> weights) {
  check_weights(curves.size(), weights);
  const Curve& ref = curves.front();
  for (const Curve& c : curves) {
    if (c.cells() != ref.cells() ||
        std::abs(c.d_max() - ref.d_max()) > 1e-12 * std::max(1.0, ref.d_max())) {
      throw std::invalid_argument("mixture curves must share one grid");
    }
  }
}

template <class Curve>
std::vector<double> mix_values(std::span<const Curve> curves, std::span<const double> weights) {
  std::vector<double> out(curves.front().values().size(), 0.0);
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto v = curves[c].values();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += weights[c] * v[k];
  }
  return out;
}

double max_vertex_distance(std::span<const Triangle> a, std::span<const Triangle> b) {
  double out = 0.0;
  for (const Triangle& s : a) {
    for (const Triangle& t : b) {
      for (Point2 p : s.vertices()) {
        for (Point2 q : t.vertices()) out = std::max(out, distance(p, q));
      }
    }
  }
  return out;
}

bool same_grid(double d_max_a, int cells_a, double d_max_b, int cells_b) {
  return cells_a == cells_b && d_max_a == d_max_b;
}

bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double d1 = orient(c, d, a);
  const double d2 = orient(c, d, b);
  const double d3 = orient(a, b, c);
  const double d4 = orient(a, b, d);
  auto on = [](Point2 p, Point2 q, Point2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return (d1 == 0 && on(c, d, a)) || (d2 == 0 && on(c, d, b)) || (d3 == 0 && on(a, b, c)) ||
         (d4 == 0 && on(a, b, d));
}

double boundary_distance(const SimplePolygon& poly, Point2 p) {
  double out = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    out = std::min(out, segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
  }
  return out;
}

// Does segment (p, q) meet an edge of `poly` other than the two edges at
// vertex `skip`?
bool hits_boundary(const SimplePolygon& poly, std::size_t skip, Point2 p, Point2 q) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (i == skip || j == skip) continue;
    if (segments_cross(p, q, poly[i], poly[j])) return true;
  }
  return false;
}

}  // namespace

CdfCurve weighted_mixture(std::span<const CdfCurve> curves, std::span<const double> weights) {
  check_mixture(curves, weights);
  std::vector<double> v = mix_values(curves, weights);
  // Rounding of a convex combination of monotone curves can dip by an ulp.
  v.front() = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = std::clamp(v[k], 0.0, 1.0);
    if (k > 0) v[k] = std::max(v[k], v[k - 1]);
  }
  const CdfCurve& ref = curves.front();
  return CdfCurve(ref.d_max(), std::move(v), "mixture", ref.config());
}

DensityCurve weighted_mixture(std::span<const DensityCurve> curves,
                              std::span<const double> weights) {
  check_mixture(curves, weights);
  std::vector<double> v = mix_values(curves, weights);
  const DensityCurve& ref = curves.front();
  return DensityCurve(ref.d_max(), std::move(v), "mixture", ref.config());
}

DensityCurve mixture_on_grid(std::span<const DensityCurve> curves, std::span<const double> weights,
                             double d_max, int cells) {
  check_weights(curves.size(), weights);
  std::vector<double> v(static_cast<std::size_t>(cells) + 1, 0.0);
  const double h = d_max / cells;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const DensityCurve& f = curves[c];
    const bool same = same_grid(f.d_max(), f.cells(), d_max, cells);
    for (int k = 1; k <= cells; ++k) v[k] += weights[c] * (same ? f.values()[k] : f(k * h));
  }
  return DensityCurve(d_max, std::move(v), "mixture", curves.front().config());
}

DensityCurve resample(const DensityCurve& curve, double d_max, int cells) {
  if (same_grid(curve.d_max(), curve.cells(), d_max, cells)) return curve;
  std::vector<double> v(static_cast<std::size_t>(cells) + 1, 0.0);
  const double h = d_max / cells;
  for (int k = 1; k <= cells; ++k) v[k] = curve(k * h);
  return DensityCurve(d_max, std::move(v), curve.region(), curve.config());
}

CdfCurve resample(const CdfCurve& curve, double d_max, int cells) {
  if (same_grid(curve.d_max(), curve.cells(), d_max, cells)) return curve;
  std::vector<double> v(static_cast<std::size_t>(cells) + 1, 0.0);
  const double h = d_max / cells;
  for (int k = 1; k <= cells; ++k) v[k] = curve(k * h);
  return CdfCurve(d_max, std::move(v), curve.region(), curve.config());
}

DensityCurve scale_curve(const DensityCurve& curve, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("scale factor must be positive");
  std::vector<double> v(curve.values().begin(), curve.values().end());
  for (double& x : v) x /= s;
  return DensityCurve(s * curve.d_max(), std::move(v), curve.region(), curve.config());
}

CdfCurve scale_curve(const CdfCurve& curve, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("scale factor must be positive");
  std::vector<double> v(curve.values().begin(), curve.values().end());
  return CdfCurve(s * curve.d_max(), std::move(v), curve.region(), curve.config());
}

// ---------------------------------------------------------------------------

std::size_t RegionPartition::slot(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw std::out_of_range("triangle index out of range");
  if (i > j) std::swap(i, j);
  // Row i of the upper triangle starts after i rows of decreasing length.
  return i * size() - i * (i - 1) / 2 + (j - i);
}

const DensityCurve& RegionPartition::pdf(std::size_t i, std::size_t j) const {
  return pdfs_[slot(i, j)];
}

const CdfCurve& RegionPartition::cdf(std::size_t i, std::size_t j) const {
  return cdfs_[slot(i, j)];
}

std::vector<double> RegionPartition::weights() const {
  const double s2 = total_area_ * total_area_;
  std::vector<double> w;
  w.reserve(size() * size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) w.push_back(areas_[i] * areas_[j] / s2);
  }
  return w;
}

RegionPartition partition_region(std::vector<Triangle> triangles, const KMConfig& cfg,
                                 double d_max) {
  if (triangles.empty()) throw GeometryError("region has no triangles");
  cfg.validate();
  RegionPartition part;
  part.triangles_ = std::move(triangles);
  for (const Triangle& t : part.triangles_) part.areas_.push_back(t.area());
  part.total_area_ = std::accumulate(part.areas_.begin(), part.areas_.end(), 0.0);
  part.d_max_ = d_max > 0.0 ? d_max : max_vertex_distance(part.triangles_, part.triangles_);

  const std::size_t n = part.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
  }
  // Overlap is a geometry error; find it before the expensive part.
  std::vector<std::optional<TrianglePairSpec>> specs(pairs.size());
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    const auto [i, j] = pairs[s];
    if (i != j) specs[s] = classify_pair(part.triangles_[i], part.triangles_[j]);
  }

  std::vector<std::optional<DensityCurve>> pdfs(pairs.size());
  std::vector<std::optional<CdfCurve>> cdfs(pairs.size());
  detail::parallel_for(pairs.size(), [&](std::size_t s) {
    const auto [i, j] = pairs[s];
    const DensityCurve own = i == j ? within_triangle_pdf(part.triangles_[i], cfg)
                                    : cross_pair_pdf(*specs[s], cfg);
    cdfs[s] = resample(pdf_to_cdf(own), part.d_max_, cfg.grid_points);
    pdfs[s] = own;
  });
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    part.pdfs_.push_back(std::move(*pdfs[s]));
    part.cdfs_.push_back(std::move(*cdfs[s]));
  }
  return part;
}

Distribution assemble(const RegionPartition& part) {
  const double s2 = part.total_area() * part.total_area();
  std::vector<double> w;
  std::vector<DensityCurve> pdfs;
  std::vector<CdfCurve> cdfs;
  for (std::size_t i = 0; i < part.size(); ++i) {
    for (std::size_t j = i; j < part.size(); ++j) {
      const double sym = i == j ? 1.0 : 2.0;
      w.push_back(sym * part.areas()[i] * part.areas()[j] / s2);
      pdfs.push_back(part.pdf(i, j));
      cdfs.push_back(part.cdf(i, j));
    }
  }
  const int cells = part.cdf(0, 0).cells();
  return {mixture_on_grid(pdfs, w, part.d_max(), cells),
          weighted_mixture(std::span<const CdfCurve>(cdfs), w)};
}

Distribution triangles_distribution(std::span<const Triangle> triangles, const KMConfig& cfg,
                                    double d_max) {
  return assemble(
      partition_region(std::vector<Triangle>(triangles.begin(), triangles.end()), cfg, d_max));
}

Distribution polygon_distribution(const SimplePolygon& poly, const KMConfig& cfg) {
  const std::vector<Triangle> tris = triangulate(poly);
  return triangles_distribution(tris, cfg, poly.diameter());
}

CdfCurve polygon_pdd(const SimplePolygon& poly, const KMConfig& cfg) {
  return polygon_distribution(poly, cfg).cdf;
}

Distribution between_regions_distribution(std::span<const Triangle> first,
                                          std::span<const Triangle> second, const KMConfig& cfg,
                                          double d_max) {
  if (first.empty() || second.empty()) throw GeometryError("region has no triangles");
  cfg.validate();
  if (!(d_max > 0.0)) d_max = max_vertex_distance(first, second);
  double area_a = 0.0;
  double area_b = 0.0;
  for (const Triangle& t : first) area_a += t.area();
  for (const Triangle& t : second) area_b += t.area();

  std::vector<TrianglePairSpec> specs;
  std::vector<double> w;
  for (const Triangle& a : first) {
    for (const Triangle& b : second) {
      specs.push_back(classify_pair(a, b));
      w.push_back(a.area() * b.area() / (area_a * area_b));
    }
  }
  std::vector<std::optional<DensityCurve>> pdf_slots(specs.size());
  std::vector<std::optional<CdfCurve>> cdf_slots(specs.size());
  detail::parallel_for(specs.size(), [&](std::size_t s) {
    const DensityCurve own = cross_pair_pdf(specs[s], cfg);
    cdf_slots[s] = resample(pdf_to_cdf(own), d_max, cfg.grid_points);
    pdf_slots[s] = own;
  });
  std::vector<DensityCurve> pdfs;
  std::vector<CdfCurve> cdfs;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    pdfs.push_back(std::move(*pdf_slots[s]));
    cdfs.push_back(std::move(*cdf_slots[s]));
  }
  return {mixture_on_grid(pdfs, w, d_max, cfg.grid_points),
          weighted_mixture(std::span<const CdfCurve>(cdfs), w)};
}

CdfCurve between_regions_pdd(std::span<const Triangle> first, std::span<const Triangle> second,
                             const KMConfig& cfg) {
  return between_regions_distribution(first, second, cfg).cdf;
}

// ---------------------------------------------------------------------------

RingSpec::RingSpec(SimplePolygon outer, SimplePolygon hole)
    : outer_(std::move(outer)), hole_(std::move(hole)) {
  const double tol = 1e-9 * outer_.diameter();
  for (Point2 v : hole_.vertices()) {
    if (!outer_.contains(v) || boundary_distance(outer_, v) <= tol) {
      throw GeometryError("hole vertex is not strictly inside the outer polygon");
    }
  }
  for (Point2 v : outer_.vertices()) {
    if (hole_.contains(v)) throw GeometryError("outer vertex lies inside the hole");
  }
  for (std::size_t i = 0; i < outer_.size(); ++i) {
    for (std::size_t j = 0; j < hole_.size(); ++j) {
      if (segments_cross(outer_[i], outer_[(i + 1) % outer_.size()], hole_[j],
                         hole_[(j + 1) % hole_.size()])) {
        throw GeometryError("hole boundary crosses the outer boundary");
      }
    }
  }
}

std::vector<Triangle> ring_triangles(const RingSpec& ring) {
  const SimplePolygon& outer = ring.outer();
  const SimplePolygon& hole = ring.hole();
  std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    for (std::size_t j = 0; j < hole.size(); ++j) {
      candidates.emplace_back(distance(outer[i], hole[j]), i, j);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  for (const auto& [len, i, j] : candidates) {
    const Point2 o = outer[i];
    const Point2 h = hole[j];
    const Point2 mid = 0.5 * (o + h);
    if (!outer.contains(mid) || hole.contains(mid)) continue;
    if (hits_boundary(outer, i, o, h) || hits_boundary(hole, j, o, h)) continue;

    // Outer counter-clockwise from o back to o, across to h, the hole
    // clockwise back to h; the bridge is walked in both directions.
    std::vector<Point2> cut;
    for (std::size_t k = 0; k <= outer.size(); ++k) cut.push_back(outer[(i + k) % outer.size()]);
    for (std::size_t k = 0; k <= hole.size(); ++k) {
      cut.push_back(hole[(j + hole.size() - k % hole.size()) % hole.size()]);
    }
    return ear_clip(cut);
  }
  throw GeometryError("no admissible bridge between the hole and the outer boundary");
}

RingResult ring_pdd(const RingSpec& ring, const KMConfig& cfg) {
  cfg.validate();
  const double s1 = ring.outer_area();
  const double s2 = ring.hole_area();
  const double s3 = ring.ring_area();
  const double d_max = ring.outer().diameter();
  const int n = cfg.grid_points;

  const std::vector<Triangle> outer_tris = triangulate(ring.outer());
  const std::vector<Triangle> hole_tris = triangulate(ring.hole());
  const std::vector<Triangle> ring_tris = ring_triangles(ring);

  Distribution f11 = triangles_distribution(outer_tris, cfg, d_max);
  Distribution f22 = triangles_distribution(hole_tris, cfg, d_max);
  Distribution f23 = between_regions_distribution(hole_tris, ring_tris, cfg, d_max);

  const double a = s1 * s1 / (s3 * s3);
  const double b = s2 * s2 / (s3 * s3);
  const double c = 2.0 * s2 * s3 / (s3 * s3);

  std::vector<double> raw(static_cast<std::size_t>(n) + 1);
  std::vector<double> F(raw.size());
  std::vector<double> f(raw.size());
  double running = 0.0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    raw[k] = a * f11.cdf.values()[k] - b * f22.cdf.values()[k] - c * f23.cdf.values()[k];
    if (raw[k] < -kRingTolerance || raw[k] > 1.0 + kRingTolerance ||
        running - raw[k] > kRingTolerance) {
      std::ostringstream msg;
      msg << "solved ring CDF " << raw[k] << " at d = " << k * d_max / n
          << " is out of range or decreasing; inputs inconsistent or resolution too coarse";
      throw DiagnosticError(msg.str());
    }
    running = std::max(running, raw[k]);
    F[k] = std::clamp(running, 0.0, 1.0);
    const double dens =
        a * f11.pdf.values()[k] - b * f22.pdf.values()[k] - c * f23.pdf.values()[k];
    f[k] = std::max(0.0, dens);
  }
  F.front() = 0.0;
  f.front() = 0.0;

  Distribution f33{DensityCurve(d_max, std::move(f), "ring", cfg),
                   CdfCurve(d_max, std::move(F), "ring", cfg)};

  const std::array<double, 2> w{s2 / s1, s3 / s1};
  auto mix = [&](const Distribution& x, const Distribution& y) {
    const std::array<DensityCurve, 2> pdfs{x.pdf, y.pdf};
    const std::array<CdfCurve, 2> cdfs{x.cdf, y.cdf};
    return Distribution{weighted_mixture(std::span<const DensityCurve>(pdfs), w),
                        weighted_mixture(std::span<const CdfCurve>(cdfs), w)};
  };
  Distribution f12 = mix(f22, f23);
  Distribution f13 = mix(f23, f33);

  return {s1,
          s2,
          s3,
          std::move(f11),
          std::move(f22),
          std::move(f23),
          std::move(f33),
          std::move(f12),
          std::move(f13),
          std::move(raw)};
}

}  // namespace polypdd
