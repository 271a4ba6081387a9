#pragma once

#include <span>
#include <vector>

#include "polypdd/geom.hpp"
#include "polypdd/km_engine.hpp"

namespace polypdd {

/// A density together with its CDF on the same grid.
struct Distribution {
  DensityCurve pdf;
  CdfCurve cdf;
};

/// Pointwise convex combination. Weights must be non-negative and sum to 1
/// within 1e-9; all curves must share d_max and cell count.
CdfCurve weighted_mixture(std::span<const CdfCurve> curves, std::span<const double> weights);
DensityCurve weighted_mixture(std::span<const DensityCurve> curves,
                              std::span<const double> weights);

/// Pointwise convex combination of densities on different grids, sampled
/// at the nodes of [0, d_max]; only the combination is checked for
/// normalization.
DensityCurve mixture_on_grid(std::span<const DensityCurve> curves, std::span<const double> weights,
                             double d_max, int cells);

/// Linear resampling onto [0, d_max] with `cells` cells. Beyond its own
/// d_max a density is 0 and a CDF keeps its final value. An identical grid
/// is copied unchanged.
DensityCurve resample(const DensityCurve& curve, double d_max, int cells);
CdfCurve resample(const CdfCurve& curve, double d_max, int cells);

/// f_s(d) = f(d / s) / s on [0, s d_max]; the samples are divided by s.
DensityCurve scale_curve(const DensityCurve& curve, double s);
/// F_s(d) = F(d / s); the samples are unchanged.
CdfCurve scale_curve(const CdfCurve& curve, double s);

/// Triangles of a region with every within- and between-triangle curve.
/// CDFs share one grid; densities keep the grid they were computed on, since
/// point resampling a thin triangle's narrow density loses mass. Curves are
/// stored once per unordered pair.
class RegionPartition {
 public:
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<double>& areas() const { return areas_; }
  double total_area() const { return total_area_; }
  double d_max() const { return d_max_; }
  std::size_t size() const { return triangles_.size(); }

  const DensityCurve& pdf(std::size_t i, std::size_t j) const;
  const CdfCurve& cdf(std::size_t i, std::size_t j) const;
  /// S_i S_j / S^2 for ordered pairs, row-major; sums to 1.
  std::vector<double> weights() const;

 private:
  friend RegionPartition partition_region(std::vector<Triangle>, const KMConfig&, double);
  std::size_t slot(std::size_t i, std::size_t j) const;

  std::vector<Triangle> triangles_;
  std::vector<double> areas_;
  double total_area_ = 0.0;
  double d_max_ = 0.0;
  std::vector<DensityCurve> pdfs_;
  std::vector<CdfCurve> cdfs_;
};

/// Computes every pair curve. d_max defaults to the largest vertex distance.
RegionPartition partition_region(std::vector<Triangle> triangles, const KMConfig& cfg = {},
                                 double d_max = 0.0);

/// F = sum over ordered pairs of S_i S_j / S^2 F_ij.
Distribution assemble(const RegionPartition& part);

/// Distance distribution of a polygon through its triangulation.
Distribution polygon_distribution(const SimplePolygon& poly, const KMConfig& cfg = {});
CdfCurve polygon_pdd(const SimplePolygon& poly, const KMConfig& cfg = {});

/// Same, for a region given by interior-disjoint triangles.
Distribution triangles_distribution(std::span<const Triangle> triangles, const KMConfig& cfg = {},
                                    double d_max = 0.0);

/// Distance between a point of region A and a point of region B:
/// F = sum S_i S_j / (S_A S_B) F_ij. Throws GeometryError on overlap.
Distribution between_regions_distribution(std::span<const Triangle> first,
                                          std::span<const Triangle> second,
                                          const KMConfig& cfg = {}, double d_max = 0.0);
CdfCurve between_regions_pdd(std::span<const Triangle> first, std::span<const Triangle> second,
                             const KMConfig& cfg = {});

/// Outer region K1 with a hole K2 strictly inside; K3 is the ring between them.
class RingSpec {
 public:
  /// Throws GeometryError unless the hole lies strictly inside the outer
  /// polygon.
  RingSpec(SimplePolygon outer, SimplePolygon hole);

  const SimplePolygon& outer() const { return outer_; }
  const SimplePolygon& hole() const { return hole_; }
  double outer_area() const { return outer_.area(); }
  double hole_area() const { return hole_.area(); }
  double ring_area() const { return outer_.area() - hole_.area(); }

 private:
  SimplePolygon outer_;
  SimplePolygon hole_;
};

/// The ring cut open along the shortest admissible segment between an outer
/// and a hole vertex, then ear-clipped.
std::vector<Triangle> ring_triangles(const RingSpec& ring);

/// Curves of the ring decomposition; 1 = outer region, 2 = hole, 3 = ring.
struct RingResult {
  double s1, s2, s3;
  Distribution f11, f22, f23, f33, f12, f13;
  /// Solved F33 before clamping and monotone repair.
  std::vector<double> f33_raw;
};

/// Solves S1^2 F11 = S2^2 F22 + 2 S2 S3 F23 + S3^2 F33 for F33 and forms
/// F12 and F13. Throws DiagnosticError when the solved F33 leaves [0, 1] or
/// decreases by more than 5e-3.
RingResult ring_pdd(const RingSpec& ring, const KMConfig& cfg = {});

}  // namespace polypdd
