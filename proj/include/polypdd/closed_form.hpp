#pragma once

#include <optional>

#include "polypdd/geom.hpp"
#include "polypdd/km_engine.hpp"

namespace polypdd {

/// Triangle normalized so that a = 1 >= b >= c and alpha >= beta >= gamma.
struct TriangleParams {
  double a = 1.0, b = 0.0, c = 0.0;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  double area = 0.0;

  /// Longest side of the original triangle divided out.
  static TriangleParams from_triangle(const Triangle& tri);
  /// Law of sines with a = 1; the angles may be given in any order.
  static TriangleParams from_angles(double a1, double a2, double a3);
};

/// Orientation ranges: (i) [0, gamma], (ii) [gamma, pi - beta], (iii) [pi - beta, pi].
enum class ThetaCase { i, ii, iii };

enum class Antiderivative { h1_i, h2_i, h1_ii, h2_ii, h1_iii, h2_iii };

/// Orientations at which the longest chord of a case equals d. Empty when the
/// arcsin argument exceeds 1, i.e. every chord of the case is at least d long.
struct CaseThresholds {
  std::optional<double> theta1_i, theta2_i;
  std::optional<double> theta1_ii, theta2_ii;
  std::optional<double> theta1_iii, theta2_iii;
};

CaseThresholds case_thresholds(const TriangleParams& t, double d);

/// Antiderivative in theta of the inner offset integral
///   int 2 d (l - d) dp  over the part of the chord family on one side of the
/// longest chord, without the 1/S^2 factor. Logarithms of quantities with a
/// fixed sign on the case range are taken of the magnitude; a sign flip or a
/// zero argument throws DomainError naming the term.
double antiderivative(Antiderivative which, const TriangleParams& t, double d, double theta);

/// H(X, Y) = (h(Y) - h(X)) / S^2.
double antiderivative_difference(Antiderivative which, const TriangleParams& t, double d,
                                 double from, double to);

/// Contribution of one orientation case to the density at 0 < d < 1.
double pdf_case(ThetaCase which, const TriangleParams& t, double d);

/// Sum of the three cases; tiny negative round-off is clamped to zero.
double closed_form_pdf(const TriangleParams& t, double d);

/// Closed-form density of a triangle of any size on a grid of `cells` cells
/// over [0, diameter], rescaled from the normalized triangle.
DensityCurve closed_form_curve(const Triangle& tri, int cells = 500);

namespace detail {
/// h1 of case iii as typeset in the source derivation, which has beta where
/// gamma belongs. Only differentiates to its integrand when beta == gamma;
/// kept for regression tests.
double h1_iii_as_printed(const TriangleParams& t, double d, double theta);
}  // namespace detail

}  // namespace polypdd
