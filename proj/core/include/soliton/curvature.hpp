#pragma once

#include <optional>
#include <string>
#include <vector>

#include "soliton/curve.hpp"
#include "soliton/linalg.hpp"

namespace soliton {

enum class CurveKind { kLine, kParabola, kEllipse, kHyperbola, kConstantKga };

enum class FamilyType { kScaling, kSimilarity, kShear, kHomothetyShear, kTranslationComposite };

std::string to_string(CurveKind kind);
std::string to_string(FamilyType type);
CurveKind curve_kind_from_string(const std::string& s);
FamilyType family_type_from_string(const std::string& s);

/// Planar classification of a curve soliton.
/// k and kga are absent exactly when undefined (trace zero resp. kind != constant-kga).
struct CurvatureReport {
  double beta = 0.0;
  double tau = 0.0;
  double detB = 0.0;
  std::optional<double> k;
  int epsilon = 0;
  CurveKind kind = CurveKind::kLine;
  std::optional<double> kga;
  FamilyType family_type = FamilyType::kTranslationComposite;
};

/// beta = |c'(0) c''(0)|^{1/3} = |det(Bv+d, B(Bv+d))|^{1/3} after orientation
/// correction; 0 when Bv+d is an eigenvector of B.
double beta(const SolitonSpec& spec);

/// k(B) = -2 + 9 det(B)/trace(B)^2; absent when |trace| <= tau_eig.
std::optional<double> k_invariant(const Matrix& b);

/// Full planar classification (conic trichotomy for traceless B, otherwise
/// parabola or the constant general-affine curvature class).
CurvatureReport classify(const SolitonSpec& spec);

/// kga = -2 |k(B)|^{-1/2}; requires n == 2, trace != 0 and k(B) != 0.
double general_affine_curvature(const Matrix& b);

/// Equi-affine arc length of the (orientation-corrected) curve, expressed as a
/// function of the spec's own parameter t, plus the general-affine rate when defined.
struct ArcLengthMap {
  enum class Kind { kProportionalLinear, kExponential };

  Kind kind = Kind::kProportionalLinear;
  double beta = 0.0;
  double tau = 0.0;    // trace of the spec's B, unflipped
  bool flipped = false;
  std::optional<double> sga_rate;  // sigma_ga(t) = sga_rate * t

  double sigma_ea(double t) const;
  double t_from_sigma(double sigma) const;
  std::optional<double> sigma_ga(double t) const;
};

/// Throws DegenerateCurve when beta vanishes.
ArcLengthMap arclength_map(const SolitonSpec& spec);

struct NumericCurvaturePoint {
  double sigma = 0.0;
  double kappa = 0.0;
};

struct NumericCurvatureResult {
  std::vector<NumericCurvaturePoint> points;
  bool flipped = false;
  double u0 = 0.0;  // oriented start parameter; sigma is measured from u0
};

/**
 * Quadrature/finite-difference estimate of the equi-affine curvature along the
 * sampled range: sigma by composite Simpson of |c' c''|^{1/3}, positions
 * resampled uniformly in sigma, then kappa = det(c2, c3) from Richardson-
 * extrapolated central differences. Uses the samples' generator when present,
 * otherwise local polynomial interpolation of the stored columns.
 */
NumericCurvatureResult numeric_equi_affine_curvature(const CurveSamples& samples);

}  // namespace soliton
