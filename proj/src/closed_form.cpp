#include "polypdd/closed_form.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <string>

#include "polypdd/errors.hpp"

namespace polypdd {

namespace {

constexpr double kArcsinSlack = 1e-12;
constexpr double kEndpointNudge = 1e-9;
constexpr double kNegativeSlack = 1e-9;

const char* name_of(Antiderivative which) {
  switch (which) {
    case Antiderivative::h1_i: return "h1_i";
    case Antiderivative::h2_i: return "h2_i";
    case Antiderivative::h1_ii: return "h1_ii";
    case Antiderivative::h2_ii: return "h2_ii";
    case Antiderivative::h1_iii: return "h1_iii";
    case Antiderivative::h2_iii: return "h2_iii";
  }
  return "h";
}

// ln|x| where x must carry `expected_sign` on the case range.
double log_of(double x, int expected_sign, const char* term) {
  if (x == 0.0 || !std::isfinite(x) || (x > 0.0 ? 1 : -1) != expected_sign) {
    std::ostringstream msg;
    msg << "logarithm argument " << x << " in " << term << " outside its domain";
    throw DomainError(msg.str());
  }
  return std::log(std::abs(x));
}

double sq(double x) { return x * x; }

// arcsin of a ratio that may exceed 1; beyond the slack every chord qualifies,
// which the branch guards express through the clamped value pi/2.
double arcsin_ratio(double x) { return std::asin(std::min(1.0, x)); }

std::optional<double> defined_arcsin(double x) {
  if (x > 1.0 + kArcsinSlack) return std::nullopt;
  return std::asin(std::min(1.0, x));
}

double h1_i(const TriangleParams& t, double d, double th) {
  const double sa = std::sin(t.alpha);
  const double bg = t.beta + t.gamma;
  return d / (2.0 * sa) *
         (sq(d) / 2.0 * std::sin(t.beta - t.gamma + 2.0 * th) -
          d * (4.0 * t.b * sa * std::cos(t.gamma - th) + d * th * std::cos(bg)) +
          sq(t.b) / 2.0 *
              log_of(-std::sin(t.beta + th) / std::cos(t.gamma - th), -1, "h1_i") *
              (2.0 * std::sin(bg) - std::sin(2.0 * t.alpha + bg) + std::sin(2.0 * t.alpha - bg)) +
          sq(sa) * (2.0 * sq(t.b) * (t.gamma - th) * std::cos(bg) -
                    sq(t.b) * std::log(sq(std::tan(t.gamma - th)) + 1.0) * std::sin(bg)));
}

double h2_i(const TriangleParams& t, double d, double th) {
  const double sa = std::sin(t.alpha);
  return t.a * d / (t.b * sa) *
         (sq(d) * th / 2.0 * std::cos(t.beta) - sq(d) / 4.0 * std::sin(t.beta + 2.0 * th) +
          sq(t.b) * th * std::cos(t.beta) * sq(sa) + 2.0 * t.b * d * sa * std::cos(th) -
          sq(t.b) * log_of(std::sin(t.beta + th), 1, "h2_i") * std::sin(t.beta) * sq(sa));
}

double h1_ii(const TriangleParams& t, double d, double th) {
  const double sb = std::sin(t.beta);
  return t.b * d / (4.0 * t.c * sb) *
         (sq(d) * std::sin(t.gamma - 2.0 * th) + 2.0 * sq(d) * th * std::cos(t.gamma) -
          4.0 * sq(t.c) * sq(sb) *
              (log_of(std::sin(th), 1, "h1_ii") * std::sin(t.gamma) - th * std::cos(t.gamma)) +
          8.0 * t.c * d * sb * std::cos(t.gamma - th));
}

double h2_ii(const TriangleParams& t, double d, double th) {
  const double sb = std::sin(t.beta);
  return d / (4.0 * sb) *
         (2.0 * sq(d) * th * std::cos(t.beta) - sq(d) * std::sin(t.beta + 2.0 * th) +
          4.0 * sq(t.c) * sq(sb) *
              (log_of(std::sin(th), 1, "h2_ii") * sb + th * std::cos(t.beta)) +
          8.0 * t.c * d * std::cos(t.beta + th) * sb);
}

double h1_iii(const TriangleParams& t, double d, double th) {
  const double sa = std::sin(t.alpha);
  return t.a * d / (4.0 * t.c * sa) *
         (sq(d) * std::sin(t.gamma - 2.0 * th) + 2.0 * sq(d) * th * std::cos(t.gamma) +
          8.0 * t.c * d * sa * std::cos(th) +
          4.0 * sq(t.c) * sq(sa) *
              (th * std::cos(t.gamma) +
               std::sin(t.gamma) * log_of(-std::sin(t.gamma - th), 1, "h1_iii")));
}

double h2_iii(const TriangleParams& t, double d, double th) {
  const double sa = std::sin(t.alpha);
  const double bg = t.beta + t.gamma;
  return 2.0 * d / sa *
         (sq(d) / 8.0 * std::sin(t.beta - t.gamma + 2.0 * th) -
          th / 4.0 * std::cos(bg) * (2.0 * sq(t.c) * sq(sa) + sq(d)) -
          t.c * d * std::cos(t.beta + th) * sa -
          sq(t.c) / 2.0 * log_of(std::sin(t.gamma - th), -1, "h2_iii") * std::sin(bg) * sq(sa));
}

using Pieces = std::array<Antiderivative, 2>;

Pieces pieces_of(ThetaCase c) {
  switch (c) {
    case ThetaCase::i: return {Antiderivative::h1_i, Antiderivative::h2_i};
    case ThetaCase::ii: return {Antiderivative::h1_ii, Antiderivative::h2_ii};
    case ThetaCase::iii: return {Antiderivative::h1_iii, Antiderivative::h2_iii};
  }
  return {Antiderivative::h1_i, Antiderivative::h2_i};
}

// H1(X, Y) + H2(X, Y) for one case.
double both(ThetaCase c, const TriangleParams& t, double d, double from, double to) {
  const Pieces p = pieces_of(c);
  return antiderivative_difference(p[0], t, d, from, to) +
         antiderivative_difference(p[1], t, d, from, to);
}

void check_distance(const TriangleParams& t, double d) {
  if (!(d > 0.0 && d < t.a)) {
    std::ostringstream msg;
    msg << "closed form needs 0 < d < a, got d = " << d;
    throw DomainError(msg.str());
  }
}

}  // namespace

TriangleParams TriangleParams::from_triangle(const Triangle& tri) {
  const TriangleShape s = tri.shape();
  const double k = 1.0 / s.a;
  return {1.0, s.b * k, s.c * k, s.alpha, s.beta, s.gamma, s.area * k * k};
}

TriangleParams TriangleParams::from_angles(double a1, double a2, double a3) {
  std::array<double, 3> r{a1, a2, a3};
  std::sort(r.begin(), r.end(), std::greater<>());
  if (!(r[2] > 0.0) || std::abs(r[0] + r[1] + r[2] - kPi) > 1e-9) {
    throw GeometryError("triangle angles must be positive and sum to pi");
  }
  TriangleParams t;
  t.alpha = r[0];
  t.beta = r[1];
  t.gamma = r[2];
  t.a = 1.0;
  t.b = std::sin(t.beta) / std::sin(t.alpha);
  t.c = std::sin(t.gamma) / std::sin(t.alpha);
  t.area = 0.5 * t.a * t.b * std::sin(t.gamma);
  return t;
}

CaseThresholds case_thresholds(const TriangleParams& t, double d) {
  CaseThresholds out;
  if (auto s = defined_arcsin(t.b * std::sin(t.alpha) / d)) {
    out.theta1_i = *s - t.beta;
    out.theta2_i = kPi - *s - t.beta;
  }
  if (auto s = defined_arcsin(t.c * std::sin(t.beta) / d)) {
    out.theta1_ii = *s;
    out.theta2_ii = kPi - *s;
  }
  if (auto s = defined_arcsin(t.c * std::sin(t.alpha) / d)) {
    out.theta1_iii = kPi - *s + t.gamma;
    out.theta2_iii = *s + t.gamma;
  }
  return out;
}

double antiderivative(Antiderivative which, const TriangleParams& t, double d, double theta) {
  switch (which) {
    case Antiderivative::h1_i: return h1_i(t, d, theta);
    case Antiderivative::h2_i: return h2_i(t, d, theta);
    case Antiderivative::h1_ii: return h1_ii(t, d, theta);
    case Antiderivative::h2_ii: return h2_ii(t, d, theta);
    case Antiderivative::h1_iii: return h1_iii(t, d, theta);
    case Antiderivative::h2_iii: return h2_iii(t, d, theta);
  }
  throw DomainError(std::string("unknown antiderivative ") + name_of(which));
}

double antiderivative_difference(Antiderivative which, const TriangleParams& t, double d,
                                 double from, double to) {
  if (from == to) return 0.0;
  // Removable singularities at a range endpoint are approached from inside.
  auto eval = [&](double theta, double inward) {
    try {
      return antiderivative(which, t, d, theta);
    } catch (const DomainError&) {
      return antiderivative(which, t, d, theta + inward);
    }
  };
  const double dir = to > from ? 1.0 : -1.0;
  const double s2 = t.area * t.area;
  return (eval(to, -dir * kEndpointNudge) - eval(from, dir * kEndpointNudge)) / s2;
}

double pdf_case(ThetaCase which, const TriangleParams& t, double d) {
  check_distance(t, d);
  const double half_pi = kPi / 2.0;
  switch (which) {
    case ThetaCase::i: {
      const double s = arcsin_ratio(t.b * std::sin(t.alpha) / d);
      const double th1 = s - t.beta;
      const double th2 = kPi - s - t.beta;
      if (t.gamma <= half_pi - t.beta) {
        if (0.0 <= th1 && th1 <= t.gamma) return both(ThetaCase::i, t, d, 0.0, th1);
        if (th1 > t.gamma) return both(ThetaCase::i, t, d, 0.0, t.gamma);
        return 0.0;
      }
      double f = 0.0;
      if (0.0 <= th1 && th1 <= half_pi - t.beta) f += both(ThetaCase::i, t, d, 0.0, th1);
      if (th2 <= t.gamma) f += both(ThetaCase::i, t, d, th2, t.gamma);
      return f;
    }
    case ThetaCase::ii: {
      const double s = arcsin_ratio(t.c * std::sin(t.beta) / d);
      const double th1 = s;
      const double th2 = kPi - s;
      double f = 0.0;
      if (t.gamma <= th1 && th1 <= half_pi) f += both(ThetaCase::ii, t, d, t.gamma, th1);
      if (th2 <= kPi - t.beta) f += both(ThetaCase::ii, t, d, th2, kPi - t.beta);
      return f;
    }
    case ThetaCase::iii: {
      const double s = arcsin_ratio(t.c * std::sin(t.alpha) / d);
      const double th1 = kPi - s + t.gamma;
      const double th2 = s + t.gamma;
      if (t.beta <= half_pi - t.gamma) {
        if (th1 < kPi - t.beta) return both(ThetaCase::iii, t, d, kPi - t.beta, kPi);
        if (th1 <= kPi) return both(ThetaCase::iii, t, d, th1, kPi);
        return 0.0;
      }
      double f = 0.0;
      if (kPi - t.beta <= th2 && th2 <= half_pi + t.gamma) {
        f += both(ThetaCase::iii, t, d, kPi - t.beta, th2);
      }
      if (th1 <= kPi) f += both(ThetaCase::iii, t, d, th1, kPi);
      return f;
    }
  }
  return 0.0;
}

double closed_form_pdf(const TriangleParams& t, double d) {
  const double f =
      pdf_case(ThetaCase::i, t, d) + pdf_case(ThetaCase::ii, t, d) + pdf_case(ThetaCase::iii, t, d);
  if (f < -kNegativeSlack) {
    std::ostringstream msg;
    msg << "closed-form density " << f << " is negative at d = " << d;
    throw DiagnosticError(msg.str());
  }
  return std::max(0.0, f);
}

DensityCurve closed_form_curve(const Triangle& tri, int cells) {
  if (cells < 2) throw std::invalid_argument("closed-form curve needs at least 2 cells");
  const TriangleParams t = TriangleParams::from_triangle(tri);
  const double scale = tri.diameter();
  std::vector<double> f(static_cast<std::size_t>(cells) + 1, 0.0);
  for (int k = 1; k < cells; ++k) {
    const double u = static_cast<double>(k) / cells;
    f[k] = closed_form_pdf(t, u) / scale;
  }
  KMConfig cfg;
  cfg.grid_points = cells;
  return DensityCurve(scale, std::move(f), "closed-form", cfg);
}

namespace detail {

double h1_iii_as_printed(const TriangleParams& t, double d, double th) {
  const double sa = std::sin(t.alpha);
  return t.a * d / (4.0 * t.c * sa) *
         (sq(d) * std::sin(t.beta - 2.0 * th) + 2.0 * sq(d) * th * std::cos(t.beta) +
          8.0 * t.c * d * sa * std::cos(th) +
          4.0 * sq(t.c) * sq(sa) *
              (th * std::cos(t.beta) +
               std::sin(t.beta) * std::log(std::abs(std::sin(t.beta - th)))));
}

}  // namespace detail

}  // namespace polypdd
