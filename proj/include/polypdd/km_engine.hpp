#pragma once

#include <span>
#include <string>
#include <vector>

#include "polypdd/geom.hpp"

namespace polypdd {

/// Resolution of the kinematic-measure quadrature.
struct KMConfig {
  /// Orientation step; theta runs over [0, pi) in equal cells of at most this size.
  double d_theta = kPi / 720.0;
  /// Offset step as a fraction of the region diameter.
  double d_p = 1.0 / 2000.0;
  /// Number of grid cells N; curves hold N + 1 samples on [0, d_max].
  int grid_points = 500;
  /// Lower bound on offset cells per orientation. Keeps thin triangles,
  /// whose width is a small fraction of the diameter, resolved.
  int min_p_samples = 200;
  /// Lower bound on orientation cells that meet both triangles of a pair.
  /// Far-apart pairs are only visible from a narrow range of orientations.
  int min_theta_samples = 90;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
  KMConfig refined(double factor) const;
};

/// Samples of a distance density at d_k = k * d_max / N, k = 0..N.
class DensityCurve {
 public:
  /// Checks f >= 0 and f(0) = 0, and that the trapezoid integral lies within
  /// 5e-3 of one; throws DiagnosticError otherwise.
  DensityCurve(double d_max, std::vector<double> values, std::string region = {},
               KMConfig config = {});

  double d_max() const { return d_max_; }
  int cells() const { return static_cast<int>(values_.size()) - 1; }
  double step() const { return d_max_ / cells(); }
  double node(int k) const { return k * step(); }
  std::span<const double> values() const { return values_; }
  const std::string& region() const { return region_; }
  const KMConfig& config() const { return config_; }

  /// Linear interpolation; zero outside [0, d_max].
  double operator()(double d) const;
  double integral() const;

 private:
  double d_max_;
  std::vector<double> values_;
  std::string region_;
  KMConfig config_;
};

/// Samples of a distance CDF on the same kind of grid.
class CdfCurve {
 public:
  /// Checks F(0) = 0, values in [0, 1], non-decreasing and F(d_max) >= 0.995;
  /// throws DiagnosticError otherwise.
  CdfCurve(double d_max, std::vector<double> values, std::string region = {},
           KMConfig config = {});

  double d_max() const { return d_max_; }
  int cells() const { return static_cast<int>(values_.size()) - 1; }
  double step() const { return d_max_ / cells(); }
  double node(int k) const { return k * step(); }
  std::span<const double> values() const { return values_; }
  const std::string& region() const { return region_; }
  const KMConfig& config() const { return config_; }

  /// Linear interpolation; 0 below the grid and F(d_max) above it.
  double operator()(double d) const;
  /// Smallest grid-interpolated d with F(d) >= q.
  double quantile(double q) const;

 private:
  double d_max_;
  std::vector<double> values_;
  std::string region_;
  KMConfig config_;
};

/// Trapezoid integral of a density over its grid.
double trapezoid_integral(const DensityCurve& curve);

/// Density of the distance between two uniform points of one triangle:
/// f(d) = sum over lines with chord l >= d of 2 d (l - d) / S^2 dp dtheta.
/// The orientation step shrinks for thin triangles (by at most 256x) so
/// that the narrow range of orientations with long chords stays resolved.
DensityCurve within_triangle_pdf(const Triangle& tri, const KMConfig& cfg = {});

/// Length of {t in I1 : t + d in I3} for I1 = [0, l1] and
/// I3 = [l1 + l2, l1 + l2 + l3]: a trapezoid in d that rises from l2,
/// plateaus at min(l1, l3) and falls to zero at l1 + l2 + l3.
double trapezoid_kernel(double l1, double l2, double l3, double d);

/// Density of the distance between a uniform point of the first triangle
/// and an independent uniform point of the second:
/// f(d) = sum over lines meeting both of d T(l1, l2, l3, d) / (S1 S2) dp dtheta.
/// The grid spans [0, max vertex-pair distance].
DensityCurve cross_pair_pdf(const TrianglePairSpec& pair, const KMConfig& cfg = {});
DensityCurve cross_pair_pdf(const Triangle& first, const Triangle& second,
                            const KMConfig& cfg = {});

/// Cumulative trapezoid integration, final value clamped to at most 1.
CdfCurve pdf_to_cdf(const DensityCurve& curve);

}  // namespace polypdd
