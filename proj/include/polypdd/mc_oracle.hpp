#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "polypdd/geom.hpp"
#include "polypdd/km_engine.hpp"

namespace polypdd {

struct SampleConfig {
  std::int64_t n_pairs = 50'000;
  std::uint64_t seed = 20240521;
  /// Pairs drawn from one stream; streams are merged in index order.
  std::int64_t batch = 10'000;

  /// Throws std::invalid_argument unless n_pairs >= 1000 and batch >= 1.
  void validate() const;
};

/// Random stream number `index` of a seed. Streams with different indices
/// are independent and each is reproducible on its own.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

Point2 sample_uniform_triangle(const Triangle& tri, Stream& stream);

/// Uniform points of a union of interior-disjoint triangles, optionally with
/// an excluded set removed by rejection.
class RegionSampler {
 public:
  explicit RegionSampler(std::vector<Triangle> triangles,
                         std::function<bool(Point2)> excluded = {});
  explicit RegionSampler(const SimplePolygon& poly, std::function<bool(Point2)> excluded = {});
  explicit RegionSampler(const Triangle& tri);

  Point2 sample(Stream& stream) const;
  /// Index of the triangle the next sample comes from, drawn with
  /// probability S_i / S.
  std::size_t pick(Stream& stream) const;
  const std::vector<Triangle>& triangles() const { return triangles_; }
  bool contains(Point2 p) const;

 private:
  std::vector<Triangle> triangles_;
  std::vector<double> cumulative_;  // running area fractions, last = 1
  std::function<bool(Point2)> excluded_;
};

Point2 sample_uniform_polygon(const SimplePolygon& poly, Stream& stream);

/// Right-continuous step function of sorted samples.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  std::span<const double> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  /// Fraction of samples <= x.
  double operator()(double x) const;
  /// Fraction of samples < x.
  double left_limit(double x) const;
  /// (F(d + w) - F(d - w)) / (2 w).
  double density(double d, double half_window) const;

 private:
  std::vector<double> samples_;
};

/// n_pairs distances between a point of `first` and an independent point of
/// `second` (the same region for a within-region distribution).
EmpiricalCdf pdd_mc(const RegionSampler& first, const RegionSampler& second,
                    const SampleConfig& cfg = {});
EmpiricalCdf pdd_mc(const SimplePolygon& first, const SimplePolygon& second,
                    const SampleConfig& cfg = {});

/// Supremum of |a - b| over the grid nodes and sample points of both inputs,
/// using both one-sided values at each sample point.
double ks_distance(const CdfCurve& a, const CdfCurve& b);
double ks_distance(const CdfCurve& a, const EmpiricalCdf& b);
double ks_distance(const EmpiricalCdf& a, const CdfCurve& b);
double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b);

}  // namespace polypdd
