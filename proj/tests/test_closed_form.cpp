#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>

#include "polypdd/closed_form.hpp"
#include "polypdd/compose.hpp"
#include "polypdd/errors.hpp"
#include "polypdd/km_engine.hpp"
#include "test_shapes.hpp"

using namespace polypdd;
using test_shapes::kDeg;

namespace {

TriangleParams paper_a() { return TriangleParams::from_angles(60 * kDeg, 60 * kDeg, 60 * kDeg); }
TriangleParams paper_b() { return TriangleParams::from_angles(80 * kDeg, 70 * kDeg, 30 * kDeg); }
TriangleParams paper_c() { return TriangleParams::from_angles(130 * kDeg, 30 * kDeg, 20 * kDeg); }

// Orientation case ranges.
std::array<double, 2> range_of(ThetaCase c, const TriangleParams& t) {
  switch (c) {
    case ThetaCase::i: return {0.0, t.gamma};
    case ThetaCase::ii: return {t.gamma, kPi - t.beta};
    case ThetaCase::iii: return {kPi - t.beta, kPi};
  }
  return {0.0, 0.0};
}

// Independent geometry: C = (0,0), B = (1,0), A = b (cos gamma, sin gamma).
// For the lines of orientation theta the chord length is a tent in p with
// its peak at the middle vertex; each flank of width w contributes
// int 2 d (l - d)+ dp = d w (lmax - d)+^2 / lmax.
struct Flanks {
  double lo;  // flank toward the vertex with the smaller offset
  double hi;
};

Flanks flank_integrands(const TriangleParams& t, double d, double theta) {
  const std::array<Point2, 3> v{Point2{0, 0}, Point2{t.a, 0},
                                Point2{t.b * std::cos(t.gamma), t.b * std::sin(t.gamma)}};
  const Point2 dir{std::cos(theta), std::sin(theta)};
  const Point2 nrm{-std::sin(theta), std::cos(theta)};
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return dot(v[i], nrm) < dot(v[j], nrm); });
  const Point2 u = v[order[0]], m = v[order[1]], w = v[order[2]];
  const double pu = dot(u, nrm), pm = dot(m, nrm), pw = dot(w, nrm);
  const double s = (pm - pu) / (pw - pu);
  const Point2 hit = u + s * (w - u);
  const double lmax = std::abs(dot(hit - m, dir));
  auto flank = [&](double width) {
    const double r = std::max(0.0, lmax - d);
    return lmax > 0.0 ? d * width * r * r / lmax : 0.0;
  };
  return {flank(pm - pu), flank(pw - pm)};
}

double integrate(const auto& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 10, 1e-12);
}

// Case contribution by quadrature over the case range, split where the
// longest chord equals d.
double case_by_quadrature(ThetaCase c, const TriangleParams& t, double d) {
  const auto [lo, hi] = range_of(c, t);
  std::vector<double> cuts{lo, hi};
  const CaseThresholds th = case_thresholds(t, d);
  for (const auto& x : {th.theta1_i, th.theta2_i, th.theta1_ii, th.theta2_ii, th.theta1_iii,
                        th.theta2_iii, std::optional<double>(kPi / 2.0),
                        std::optional<double>(kPi / 2.0 + t.gamma),
                        std::optional<double>(kPi / 2.0 - t.beta)}) {
    if (x && *x > lo && *x < hi) cuts.push_back(*x);
  }
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    sum += integrate(
        [&](double th) {
          const Flanks f = flank_integrands(t, d, th);
          return f.lo + f.hi;
        },
        cuts[k], cuts[k + 1]);
  }
  return sum / (t.area * t.area);
}

double derivative(Antiderivative which, const TriangleParams& t, double d, double th) {
  const double h = 1e-4;
  return (-antiderivative(which, t, d, th + 2 * h) + 8 * antiderivative(which, t, d, th + h) -
          8 * antiderivative(which, t, d, th - h) + antiderivative(which, t, d, th - 2 * h)) /
         (12 * h);
}

double min_altitude(const TriangleParams& t) { return 2.0 * t.area / t.a; }

std::array<Antiderivative, 2> pieces(ThetaCase c) {
  switch (c) {
    case ThetaCase::i: return {Antiderivative::h1_i, Antiderivative::h2_i};
    case ThetaCase::ii: return {Antiderivative::h1_ii, Antiderivative::h2_ii};
    case ThetaCase::iii: return {Antiderivative::h1_iii, Antiderivative::h2_iii};
  }
  return {};
}

const ThetaCase kCases[] = {ThetaCase::i, ThetaCase::ii, ThetaCase::iii};

TriangleParams random_params(std::mt19937_64& rng, double min_angle_deg) {
  return TriangleParams::from_triangle(test_shapes::random_triangle(rng, min_angle_deg));
}

}  // namespace

TEST(TriangleParams, FromAnglesAndTriangleAgree) {
  const TriangleParams p = paper_b();
  EXPECT_DOUBLE_EQ(p.a, 1.0);
  EXPECT_NEAR(p.alpha + p.beta + p.gamma, kPi, 1e-12);
  EXPECT_NEAR(p.a / std::sin(p.alpha), p.b / std::sin(p.beta), 1e-12);
  EXPECT_NEAR(p.a / std::sin(p.alpha), p.c / std::sin(p.gamma), 1e-12);
  const Triangle big =
      canonicalize_triangle(AngleSpec{{30 * kDeg, 80 * kDeg, 70 * kDeg}}, 4.0);
  const TriangleParams q = TriangleParams::from_triangle(big);
  EXPECT_NEAR(q.b, p.b, 1e-12);
  EXPECT_NEAR(q.c, p.c, 1e-12);
  EXPECT_NEAR(q.area, p.area, 1e-12);
  EXPECT_NEAR(q.gamma, p.gamma, 1e-12);
  EXPECT_THROW(TriangleParams::from_angles(1.0, 1.0, 1.0), GeometryError);
}

TEST(ClosedForm, EachAntiderivativeDifferentiatesToOneFlank) {
  std::mt19937_64 rng(5);
  std::vector<TriangleParams> tris{paper_a(), paper_b(), paper_c()};
  for (int k = 0; k < 10; ++k) tris.push_back(random_params(rng, 5.0));
  for (const TriangleParams& t : tris) {
    const double d = 0.6 * min_altitude(t);
    for (ThetaCase c : kCases) {
      const auto [lo, hi] = range_of(c, t);
      const auto [p1, p2] = pieces(c);
      // The flank each antiderivative belongs to must not change inside a case.
      int assignment = -1;
      for (int s = 1; s < 10; ++s) {
        const double th = lo + (hi - lo) * s / 10.0;
        const Flanks f = flank_integrands(t, d, th);
        const double g1 = derivative(p1, t, d, th), g2 = derivative(p2, t, d, th);
        const double scale = std::max({1.0, std::abs(f.lo), std::abs(f.hi)});
        const double direct = std::max(std::abs(g1 - f.lo), std::abs(g2 - f.hi));
        const double swapped = std::max(std::abs(g1 - f.hi), std::abs(g2 - f.lo));
        if (std::abs(direct - swapped) > 1e-6 * scale) {  // flanks differ
          const int here = direct < swapped ? 0 : 1;
          if (assignment < 0) assignment = here;
          EXPECT_EQ(here, assignment);
        }
        EXPECT_LT(std::min(direct, swapped), 1e-7 * scale)
            << "case " << static_cast<int>(c) << " theta " << th;
      }
    }
  }
}

TEST(ClosedForm, HIntegralsMatchQuadrature) {
  std::mt19937_64 rng(6);
  std::vector<TriangleParams> tris{paper_a(), paper_b(), paper_c()};
  for (int k = 0; k < 10; ++k) tris.push_back(random_params(rng, 5.0));
  for (const TriangleParams& t : tris) {
    const double s2 = t.area * t.area;
    for (double frac : {0.2, 0.9}) {
      const double d = frac * min_altitude(t);
      for (ThetaCase c : kCases) {
        auto [lo, hi] = range_of(c, t);
        lo += 1e-6;
        hi -= 1e-6;
        const double x = lo + 0.1 * (hi - lo), y = hi - 0.05 * (hi - lo);
        const double qlo = integrate([&](double th) { return flank_integrands(t, d, th).lo; }, x, y) / s2;
        const double qhi = integrate([&](double th) { return flank_integrands(t, d, th).hi; }, x, y) / s2;
        const auto [p1, p2] = pieces(c);
        const double h1 = antiderivative_difference(p1, t, d, x, y);
        const double h2 = antiderivative_difference(p2, t, d, x, y);
        const double err = std::min(std::max(std::abs(h1 - qlo), std::abs(h2 - qhi)),
                                    std::max(std::abs(h1 - qhi), std::abs(h2 - qlo)));
        EXPECT_LT(err, 1e-6) << "case " << static_cast<int>(c) << " d " << d;
      }
    }
  }
}

TEST(ClosedForm, PrintedCaseThreeTermIsDefective) {
  // The typeset h1 of case iii has beta where gamma belongs; it only agrees
  // with its integrand for beta == gamma.
  const TriangleParams t = paper_b();
  const double d = 0.6 * min_altitude(t);
  const auto [lo, hi] = range_of(ThetaCase::iii, t);
  const double th = 0.5 * (lo + hi);
  const double h = 1e-5;
  const double printed = (detail::h1_iii_as_printed(t, d, th + h) -
                          detail::h1_iii_as_printed(t, d, th - h)) / (2 * h);
  const double fixed = derivative(Antiderivative::h1_iii, t, d, th);
  const Flanks f = flank_integrands(t, d, th);
  EXPECT_TRUE(std::abs(fixed - f.lo) < 1e-7 || std::abs(fixed - f.hi) < 1e-7);
  EXPECT_GT(std::min(std::abs(printed - f.lo), std::abs(printed - f.hi)), 1e-3);

  // Isosceles with beta == gamma: both forms coincide.
  const TriangleParams iso = TriangleParams::from_angles(100 * kDeg, 40 * kDeg, 40 * kDeg);
  const double th2 = kPi - 0.5 * iso.beta;
  EXPECT_NEAR(detail::h1_iii_as_printed(iso, 0.1, th2), antiderivative(Antiderivative::h1_iii, iso, 0.1, th2), 1e-12);
}

TEST(ClosedForm, CasesMatchQuadratureAcrossBranches) {
  std::mt19937_64 rng(7);
  std::vector<TriangleParams> tris{paper_a(), paper_b(), paper_c(),
                                   TriangleParams::from_angles(95 * kDeg, 60 * kDeg, 25 * kDeg),
                                   TriangleParams::from_angles(90 * kDeg, 45 * kDeg, 45 * kDeg)};
  for (int k = 0; k < 10; ++k) tris.push_back(random_params(rng, 3.0));
  for (const TriangleParams& t : tris) {
    for (double d = 0.01; d < 1.0; d += 0.0613) {
      for (ThetaCase c : kCases) {
        EXPECT_NEAR(pdf_case(c, t, d), case_by_quadrature(c, t, d), 1e-6)
            << "angles " << t.alpha / kDeg << "," << t.beta / kDeg << " case "
            << static_cast<int>(c) << " d " << d;
      }
    }
  }
}

TEST(ClosedForm, FrozenHighPrecisionValues) {
  // One-dimensional orientation integral of the chord kernel, evaluated with
  // 30-digit quadrature split at its kinks.
  const double ds[] = {0.05, 0.3, 0.5, 0.8, 0.95};
  const double ref[3][5] = {
      {0.64772894526984329, 1.9503055826118502, 1.4643970330930166, 0.17719739503456512,
       0.002088688703375702},
      {1.1100319799472367, 2.1406338445110432, 0.91561756859567775, 0.11217111470563181,
       0.0012976659537934373},
      {2.0447334244316126, 1.7540054038761884, 0.72714695817773572, 0.045770981955648425,
       0.0007051904947773905}};
  const TriangleParams tris[] = {paper_a(), paper_b(), paper_c()};
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 5; ++k) {
      EXPECT_NEAR(closed_form_pdf(tris[i], ds[k]), ref[i][k], 1e-9 * std::max(1.0, ref[i][k]))
          << i << " d=" << ds[k];
    }
  }
}

TEST(ClosedForm, ContinuousAcrossBranchBoundaries) {
  std::mt19937_64 rng(8);
  std::vector<TriangleParams> tris{paper_a(), paper_b(), paper_c()};
  for (int k = 0; k < 10; ++k) tris.push_back(random_params(rng, 3.0));
  for (const TriangleParams& t : tris) {
    // Distances at which a threshold crosses a case boundary.
    const double kinks[] = {t.b * std::sin(t.alpha), t.c * std::sin(t.beta),
                            t.c * std::sin(t.alpha), t.b, t.c,
                            t.c * std::sin(t.beta) / std::sin(t.gamma)};
    for (double k : kinks) {
      if (!(k > 1e-3 && k < 1.0 - 1e-3)) continue;
      const double below = closed_form_pdf(t, k - 1e-9);
      const double at = closed_form_pdf(t, k);
      const double above = closed_form_pdf(t, k + 1e-9);
      EXPECT_NEAR(below, at, 1e-6);
      EXPECT_NEAR(above, at, 1e-6);
    }
    // Steps stay below the steepest slope, 2 pi / S at d = 0.
    const double bound = 1e-4 * 2.0 * kPi / t.area * 1.01;
    double prev = closed_form_pdf(t, 1e-4);
    for (int k = 2; k < 10000; ++k) {
      const double f = closed_form_pdf(t, k * 1e-4);
      EXPECT_LT(std::abs(f - prev), bound) << "d=" << k * 1e-4;
      prev = f;
    }
  }
}

TEST(ClosedForm, LimitsAtBothEnds) {
  for (const TriangleParams& t : {paper_a(), paper_b(), paper_c()}) {
    // Small distances see a full disc: f ~ 2 pi d / S.
    const double d = 1e-5;
    EXPECT_NEAR(closed_form_pdf(t, d) / d, 2.0 * kPi / t.area, 1e-2 * 2.0 * kPi / t.area);
    EXPECT_LT(closed_form_pdf(t, 1.0 - 1e-6), 1e-6);
    EXPECT_THROW(closed_form_pdf(t, 0.0), DomainError);
    EXPECT_THROW(closed_form_pdf(t, 1.0), DomainError);
  }
}

TEST(ClosedForm, SymmetricTrianglesHaveMirroredCases) {
  // Reflection swaps the roles of cases i and iii when beta == gamma.
  for (double apex : {60.0, 100.0, 150.0}) {
    const double base = (180.0 - apex) / 2.0;
    const TriangleParams t = TriangleParams::from_angles(apex * kDeg, base * kDeg, base * kDeg);
    for (double d : {0.1, 0.3, 0.55, 0.9}) {
      EXPECT_NEAR(pdf_case(ThetaCase::i, t, d), pdf_case(ThetaCase::iii, t, d), 1e-10);
    }
  }
  // Equilateral: gamma > pi/2 - beta, so case i takes its second branch.
  const TriangleParams eq = paper_a();
  EXPECT_GT(eq.gamma, kPi / 2.0 - eq.beta);
  EXPECT_GT(pdf_case(ThetaCase::i, eq, 0.5), 0.0);
}

TEST(ClosedForm, PaperTriangleBMatchesEngineAtHalf) {
  const Triangle tri = canonicalize_triangle(AngleSpec{{80 * kDeg, 70 * kDeg, 30 * kDeg}});
  const double sum = pdf_case(ThetaCase::i, paper_b(), 0.5) + pdf_case(ThetaCase::ii, paper_b(), 0.5) +
                     pdf_case(ThetaCase::iii, paper_b(), 0.5);
  EXPECT_NEAR(sum, within_triangle_pdf(tri)(0.5), 1e-3);
}

TEST(ClosedForm, NormalizedOnFineGrid) {
  std::mt19937_64 rng(9);
  std::vector<TriangleParams> tris{paper_a(), paper_b(), paper_c()};
  for (int k = 0; k < 5; ++k) tris.push_back(random_params(rng, 3.0));
  for (const TriangleParams& t : tris) {
    const int n = 2000;
    double sum = 0.0;
    for (int k = 1; k < n; ++k) sum += closed_form_pdf(t, static_cast<double>(k) / n);
    EXPECT_NEAR(sum / n, 1.0, 2e-3);
  }
}

TEST(ClosedForm, AgreesWithEngineOnRandomTriangles) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 25; ++trial) {
    const Triangle tri = test_shapes::random_triangle(rng, 3.0);
    const DensityCurve km = within_triangle_pdf(tri);
    const DensityCurve cf = closed_form_curve(tri, km.cells());
    double worst = 0.0;
    for (int k = 0; k <= km.cells(); ++k) {
      const double u = static_cast<double>(k) / km.cells();
      if (u < 0.02 || u > 0.98) continue;
      // Compare on the normalized triangle, where densities are O(1).
      worst = std::max(worst, std::abs(km.values()[k] - cf.values()[k]) * tri.diameter());
    }
    EXPECT_LE(worst, 2e-3) << "trial " << trial;
  }
}

TEST(ClosedForm, ScaledCurveMatchesEngine) {
  for (double s : {0.37, 7.5}) {
    const Triangle tri = canonicalize_triangle(AngleSpec{{130 * kDeg, 30 * kDeg, 20 * kDeg}}, s);
    const DensityCurve km = within_triangle_pdf(tri);
    const DensityCurve cf = closed_form_curve(tri, km.cells());
    const DensityCurve unit = closed_form_curve(
        canonicalize_triangle(AngleSpec{{130 * kDeg, 30 * kDeg, 20 * kDeg}}), km.cells());
    const DensityCurve rescaled = scale_curve(unit, s);
    for (int k = 10; k <= 490; ++k) {
      EXPECT_NEAR(cf.values()[k], rescaled.values()[k], 1e-12 / s);
      EXPECT_NEAR(s * km.values()[k], s * cf.values()[k], 2e-3);
    }
  }
}

TEST(ClosedForm, CurveShape) {
  const DensityCurve cf = closed_form_curve(canonicalize_triangle(AngleSpec{{kPi / 3, kPi / 3, kPi / 3}}));
  EXPECT_EQ(cf.cells(), 500);
  EXPECT_EQ(cf.values().front(), 0.0);
  EXPECT_EQ(cf.values().back(), 0.0);
  EXPECT_THROW(closed_form_curve(canonicalize_triangle(AngleSpec{{kPi / 3, kPi / 3, kPi / 3}}), 1),
               std::invalid_argument);
}
