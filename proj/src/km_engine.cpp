#include "polypdd/km_engine.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "polypdd/errors.hpp"

namespace polypdd {

namespace {

constexpr double kNormalizationTolerance = 5e-3;
constexpr int kMaxThetaRefinement = 256;
// Orientation cells across the window in which a thin triangle has long
// chords; that window is about as wide as altitude / diameter.
constexpr double kSliverThetaCells = 8.0;

struct UniformCells {
  double lo;
  double step;
  int count;
  double midpoint(int i) const { return lo + (i + 0.5) * step; }
};

UniformCells theta_cells(double d_theta, int refinement = 1) {
  const int base = static_cast<int>(std::ceil(kPi / d_theta - 1e-9));
  const int count = base * refinement;
  return {0.0, kPi / count, count};
}

UniformCells offset_cells(SupportInterval s, double d_p, int min_samples) {
  const double width = s.width();
  const int count = std::max(min_samples, static_cast<int>(std::ceil(width / d_p - 1e-9)));
  return {s.lo, width / count, count};
}

std::string describe(const Triangle& tri) {
  std::ostringstream os;
  os.precision(17);
  os << "triangle[";
  for (int i = 0; i < 3; ++i) os << (i ? ";" : "") << tri[i].x << "," << tri[i].y;
  os << "]";
  return os.str();
}

}  // namespace

void KMConfig::validate() const {
  if (!(d_theta > 0.0 && d_theta <= kPi / 90.0 * (1.0 + 1e-12))) {
    throw std::invalid_argument("d_theta must lie in (0, pi/90]");
  }
  if (!(d_p > 0.0 && d_p <= 1.0 / 200.0 * (1.0 + 1e-12))) {
    throw std::invalid_argument("d_p must lie in (0, 1/200] of the diameter");
  }
  if (grid_points < 50) throw std::invalid_argument("grid_points must be at least 50");
  if (min_p_samples < 1 || min_theta_samples < 1) {
    throw std::invalid_argument("minimum sample counts must be positive");
  }
}

KMConfig KMConfig::refined(double factor) const {
  KMConfig out = *this;
  out.d_theta /= factor;
  out.d_p /= factor;
  return out;
}

// ---------------------------------------------------------------------------

DensityCurve::DensityCurve(double d_max, std::vector<double> values, std::string region,
                           KMConfig config)
    : d_max_(d_max), values_(std::move(values)), region_(std::move(region)), config_(config) {
  if (!(d_max_ > 0.0) || values_.size() < 2) {
    throw DiagnosticError("density curve needs d_max > 0 and at least two samples");
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DiagnosticError("density curve has a negative or non-finite sample");
    }
  }
  if (values_.front() != 0.0) throw DiagnosticError("density curve must vanish at d = 0");
  const double mass = integral();
  if (std::abs(mass - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg << "density integrates to " << mass << " (tolerance " << kNormalizationTolerance
        << "); resolution too coarse for " << (region_.empty() ? "region" : region_);
    throw DiagnosticError(msg.str());
  }
}

double DensityCurve::operator()(double d) const {
  if (!(d >= 0.0) || d > d_max_) return 0.0;
  const double x = d / step();
  const int k = std::min(static_cast<int>(x), cells() - 1);
  const double frac = x - k;
  return values_[k] + frac * (values_[k + 1] - values_[k]);
}

double DensityCurve::integral() const {
  double sum = 0.0;
  for (std::size_t k = 1; k < values_.size(); ++k) sum += values_[k - 1] + values_[k];
  return 0.5 * step() * sum;
}

double trapezoid_integral(const DensityCurve& curve) { return curve.integral(); }

CdfCurve::CdfCurve(double d_max, std::vector<double> values, std::string region,
                   KMConfig config)
    : d_max_(d_max), values_(std::move(values)), region_(std::move(region)), config_(config) {
  if (!(d_max_ > 0.0) || values_.size() < 2) {
    throw DiagnosticError("CDF curve needs d_max > 0 and at least two samples");
  }
  if (values_.front() != 0.0) throw DiagnosticError("CDF must start at 0");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double v = values_[k];
    if (!(v >= 0.0 && v <= 1.0)) throw DiagnosticError("CDF value outside [0, 1]");
    if (k > 0 && v < values_[k - 1]) throw DiagnosticError("CDF is not non-decreasing");
  }
  if (values_.back() < 1.0 - kNormalizationTolerance) {
    std::ostringstream msg;
    msg << "CDF reaches only " << values_.back() << " at d_max";
    throw DiagnosticError(msg.str());
  }
}

double CdfCurve::operator()(double d) const {
  if (!(d > 0.0)) return 0.0;
  if (d >= d_max_) return values_.back();
  const double x = d / step();
  const int k = std::min(static_cast<int>(x), cells() - 1);
  const double frac = x - k;
  return values_[k] + frac * (values_[k + 1] - values_[k]);
}

double CdfCurve::quantile(double q) const {
  const auto it = std::lower_bound(values_.begin(), values_.end(), q);
  if (it == values_.end()) return d_max_;
  const int k = static_cast<int>(it - values_.begin());
  if (k == 0) return 0.0;
  const double lo = values_[k - 1];
  const double hi = values_[k];
  const double frac = hi > lo ? (q - lo) / (hi - lo) : 1.0;
  return node(k - 1) + frac * step();
}

// ---------------------------------------------------------------------------

DensityCurve within_triangle_pdf(const Triangle& tri, const KMConfig& cfg) {
  cfg.validate();
  const int n = cfg.grid_points;
  const double d_max = tri.diameter();
  const double h = d_max / n;
  const double d_p = cfg.d_p * d_max;
  const double area = tri.area();

  // Per grid cell: total weight and weighted length of the chords ending in it.
  std::vector<double> weight(n + 1, 0.0);
  std::vector<double> length(n + 1, 0.0);

  const double window = 2.0 * area / (d_max * d_max);
  const double wanted = std::ceil(theta_cells(cfg.d_theta).step * kSliverThetaCells / window - 1e-9);
  const int refinement =
      static_cast<int>(std::clamp(wanted, 1.0, static_cast<double>(kMaxThetaRefinement)));
  const UniformCells thetas = theta_cells(cfg.d_theta, refinement);
  for (int j = 0; j < thetas.count; ++j) {
    const TriangleProjection proj(tri, thetas.midpoint(j));
    const UniformCells offsets = offset_cells(proj.support(), d_p, cfg.min_p_samples);
    const double w = offsets.step * thetas.step;
    for (int i = 0; i < offsets.count; ++i) {
      const auto chord = proj.chord(offsets.midpoint(i));
      if (!chord) continue;
      const double l = chord->length();
      const int k = std::min(n, static_cast<int>(l / h));
      weight[k] += w;
      length[k] += w * l;
    }
  }

  // f(d_k) = 2 d_k / S^2 * sum_{l >= d_k} w (l - d_k), via suffix sums.
  std::vector<double> f(n + 1, 0.0);
  double tail_w = 0.0;
  double tail_l = 0.0;
  for (int k = n; k >= 1; --k) {
    tail_w += weight[k];
    tail_l += length[k];
    const double d = k * h;
    f[k] = std::max(0.0, 2.0 * d * (tail_l - d * tail_w) / (area * area));
  }
  return DensityCurve(d_max, std::move(f), describe(tri), cfg);
}

double trapezoid_kernel(double l1, double l2, double l3, double d) {
  const double rise = d - l2;
  const double fall = l1 + l2 + l3 - d;
  return std::max(0.0, std::min({rise, l1, l3, fall}));
}

DensityCurve cross_pair_pdf(const Triangle& first, const Triangle& second, const KMConfig& cfg) {
  return cross_pair_pdf(classify_pair(first, second), cfg);
}

DensityCurve cross_pair_pdf(const TrianglePairSpec& pair, const KMConfig& cfg) {
  cfg.validate();
  const int n = cfg.grid_points;
  const double d_max = pair.max_distance();
  const double h = d_max / n;
  const double d_p = cfg.d_p * d_max;
  const double s1s2 = pair.area_first() * pair.area_second();

  int refinement = 1;
  {
    const UniformCells base = theta_cells(cfg.d_theta);
    int active = 0;
    for (int j = 0; j < base.count; ++j) {
      if (support_interval(pair.first, pair.second, base.midpoint(j)).width() > 0.0) ++active;
    }
    if (active < cfg.min_theta_samples) {
      refinement = std::min(kMaxThetaRefinement,
                            (cfg.min_theta_samples + std::max(active, 1) - 1) / std::max(active, 1));
    }
  }

  // T(d) = r(d - l2) - r(d - l2 - m) - r(d - l2 - M) + r(d - l2 - m - M), r = max(0, .),
  // m = min(l1, l3), M = max(l1, l3). Each ramp lands in the first grid node at or
  // beyond its breakpoint; prefix sums then give sum w T(d_k) = d_k C_k - B_k.
  std::vector<long double> slope(n + 2, 0.0L);
  std::vector<long double> offset(n + 2, 0.0L);
  auto add_ramp = [&](double b, double w) {
    const double x = std::ceil(b / h);
    if (x > n) return;
    const int k = static_cast<int>(x);
    slope[k] += w;
    offset[k] += static_cast<long double>(w) * b;
  };
  double support_lo = std::numeric_limits<double>::infinity();
  double support_hi = 0.0;

  const UniformCells thetas = theta_cells(cfg.d_theta, refinement);
  for (int j = 0; j < thetas.count; ++j) {
    const double theta = thetas.midpoint(j);
    const TriangleProjection pa(pair.first, theta);
    const TriangleProjection pb(pair.second, theta);
    const SupportInterval sa = pa.support();
    const SupportInterval sb = pb.support();
    const SupportInterval both{std::max(sa.lo, sb.lo), std::min(sa.hi, sb.hi)};
    if (!(both.width() > 0.0)) continue;
    const UniformCells offsets = offset_cells(both, d_p, cfg.min_p_samples);
    const double w = offsets.step * thetas.step;
    for (int i = 0; i < offsets.count; ++i) {
      const double p = offsets.midpoint(i);
      const auto ca = pa.chord(p);
      if (!ca) continue;
      const auto cb = pb.chord(p);
      if (!cb) continue;
      const double l1 = ca->length();
      const double l3 = cb->length();
      const double gap = ca->start <= cb->start ? cb->start - ca->end : ca->start - cb->end;
      const double l2 = std::max(0.0, gap);
      const double lo = std::min(l1, l3);
      const double hi = std::max(l1, l3);
      add_ramp(l2, w);
      add_ramp(l2 + lo, -w);
      add_ramp(l2 + hi, -w);
      add_ramp(l2 + lo + hi, w);
      support_lo = std::min(support_lo, l2);
      support_hi = std::max(support_hi, l2 + lo + hi);
    }
  }

  std::vector<double> f(n + 1, 0.0);
  long double c = 0.0L;
  long double b = 0.0L;
  for (int k = 0; k <= n; ++k) {
    c += slope[k];
    b += offset[k];
    const double d = k * h;
    if (k == 0 || d <= support_lo || d >= support_hi) continue;
    const double t = static_cast<double>(d * c - b);
    f[k] = std::max(0.0, d * t / s1s2);
  }
  std::string region = describe(pair.first) + "x" + describe(pair.second);
  return DensityCurve(d_max, std::move(f), std::move(region), cfg);
}

CdfCurve pdf_to_cdf(const DensityCurve& curve) {
  const auto f = curve.values();
  std::vector<double> F(f.size(), 0.0);
  const double h = curve.step();
  for (std::size_t k = 1; k < f.size(); ++k) {
    F[k] = std::min(1.0, F[k - 1] + 0.5 * h * (f[k - 1] + f[k]));
  }
  return CdfCurve(curve.d_max(), std::move(F), curve.region(), curve.config());
}

}  // namespace polypdd
