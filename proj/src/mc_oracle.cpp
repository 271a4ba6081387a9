#include "polypdd/mc_oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "parallel.hpp"
#include "polypdd/errors.hpp"

namespace polypdd {

void SampleConfig::validate() const {
  if (n_pairs < 1000) throw std::invalid_argument("n_pairs must be at least 1000");
  if (batch < 1) throw std::invalid_argument("batch must be positive");
}

Stream::Stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

double Stream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Point2 sample_uniform_triangle(const Triangle& tri, Stream& stream) {
  double u = stream.uniform();
  double v = stream.uniform();
  if (u + v > 1.0) {
    u = 1.0 - u;
    v = 1.0 - v;
  }
  const Point2 o = tri[0];
  return o + u * (tri[1] - o) + v * (tri[2] - o);
}

RegionSampler::RegionSampler(std::vector<Triangle> triangles, std::function<bool(Point2)> excluded)
    : triangles_(std::move(triangles)), excluded_(std::move(excluded)) {
  if (triangles_.empty()) throw GeometryError("sampling region has no triangles");
  double total = 0.0;
  for (const Triangle& t : triangles_) total += t.area();
  double run = 0.0;
  for (const Triangle& t : triangles_) {
    run += t.area();
    cumulative_.push_back(run / total);
  }
  cumulative_.back() = 1.0;
}

RegionSampler::RegionSampler(const SimplePolygon& poly, std::function<bool(Point2)> excluded)
    : RegionSampler(triangulate(poly), std::move(excluded)) {}

RegionSampler::RegionSampler(const Triangle& tri) : RegionSampler(std::vector<Triangle>{tri}) {}

std::size_t RegionSampler::pick(Stream& stream) const {
  if (triangles_.size() == 1) return 0;
  const double u = stream.uniform();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min<std::size_t>(it - cumulative_.begin(), triangles_.size() - 1);
}

Point2 RegionSampler::sample(Stream& stream) const {
  for (;;) {
    const Point2 p = sample_uniform_triangle(triangles_[pick(stream)], stream);
    if (!excluded_ || !excluded_(p)) return p;
  }
}

bool RegionSampler::contains(Point2 p) const {
  if (excluded_ && excluded_(p)) return false;
  return std::any_of(triangles_.begin(), triangles_.end(),
                     [&](const Triangle& t) { return t.contains(p, 1e-12); });
}

Point2 sample_uniform_polygon(const SimplePolygon& poly, Stream& stream) {
  return RegionSampler(poly).sample(stream);
}

// ---------------------------------------------------------------------------

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("empirical CDF needs samples");
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / samples_.size();
}

double EmpiricalCdf::left_limit(double x) const {
  const auto it = std::lower_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / samples_.size();
}

double EmpiricalCdf::density(double d, double half_window) const {
  return ((*this)(d + half_window) - (*this)(d - half_window)) / (2.0 * half_window);
}

EmpiricalCdf pdd_mc(const RegionSampler& first, const RegionSampler& second,
                    const SampleConfig& cfg) {
  cfg.validate();
  const std::size_t n = static_cast<std::size_t>(cfg.n_pairs);
  const std::size_t batch = static_cast<std::size_t>(cfg.batch);
  const std::size_t batches = (n + batch - 1) / batch;
  std::vector<double> out(n);
  detail::parallel_for(batches, [&](std::size_t b) {
    Stream stream(cfg.seed, b);
    const std::size_t end = std::min(n, (b + 1) * batch);
    for (std::size_t k = b * batch; k < end; ++k) {
      const Point2 p = first.sample(stream);
      const Point2 q = second.sample(stream);
      out[k] = distance(p, q);
    }
  });
  return EmpiricalCdf(std::move(out));
}

EmpiricalCdf pdd_mc(const SimplePolygon& first, const SimplePolygon& second,
                    const SampleConfig& cfg) {
  return pdd_mc(RegionSampler(first), RegionSampler(second), cfg);
}

// ---------------------------------------------------------------------------

double ks_distance(const CdfCurve& a, const CdfCurve& b) {
  double out = 0.0;
  for (int k = 0; k <= a.cells(); ++k) out = std::max(out, std::abs(a.values()[k] - b(a.node(k))));
  for (int k = 0; k <= b.cells(); ++k) out = std::max(out, std::abs(a(b.node(k)) - b.values()[k]));
  return out;
}

double ks_distance(const CdfCurve& a, const EmpiricalCdf& b) {
  // Between consecutive samples b is constant and a is monotone, so the
  // supremum sits at a sample point on one side or the other.
  double out = 0.0;
  for (double x : b.samples()) {
    const double fa = a(x);
    out = std::max(out, std::abs(fa - b.left_limit(x)));
    out = std::max(out, std::abs(fa - b(x)));
  }
  for (int k = 0; k <= a.cells(); ++k) {
    const double d = a.node(k);
    out = std::max(out, std::abs(a.values()[k] - b(d)));
    out = std::max(out, std::abs(a.values()[k] - b.left_limit(d)));
  }
  return out;
}

double ks_distance(const EmpiricalCdf& a, const CdfCurve& b) { return ks_distance(b, a); }

double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b) {
  double out = 0.0;
  for (double x : a.samples()) out = std::max(out, std::abs(a(x) - b(x)));
  for (double x : b.samples()) out = std::max(out, std::abs(a(x) - b(x)));
  return out;
}

}  // namespace polypdd
