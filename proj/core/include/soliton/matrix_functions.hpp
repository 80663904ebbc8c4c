#pragma once

#include "soliton/linalg.hpp"

namespace soliton {

enum class SpectrumKind {
  kRealDistinct,
  kRealRepeatedDiagonalizable,
  kRealRepeatedDefective,
  kComplexPair,
};

/// Eigenvalue classification of a 2x2 real matrix.
/// Real kinds fill lambda1 >= lambda2 (equal when repeated); the complex
/// kind fills re +- i*im with im > 0.
struct Spectrum2 {
  SpectrumKind kind;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double re = 0.0;
  double im = 0.0;
};

/// exp(B t) by scaling and squaring around a truncated Taylor sum.
/// Accurate to ~1e-13 relative in Frobenius norm for ||B t|| <= 50.
Matrix mat_exp(const Matrix& b, double t);

/**
 * The series F_B(t) = sum_{k>=1} t^k/k! B^{k-1}.
 *
 * Evaluated on a scaled argument (||B t||/2^m <= 0.5) with the Taylor sum
 * carried to the machine-precision tail, then doubled back through
 * F_B(2t) = (I + exp(B t)) F_B(t). For invertible B this equals
 * B^{-1}(exp(B t) - I); the series form stays well defined when B is not.
 */
Matrix f_b(const Matrix& b, double t);

/**
 * Principal real logarithm: returns B with exp(B) = A.
 *
 * 2x2 inputs use closed forms per Spectrum2 branch; larger inputs use
 * inverse scaling and squaring (Denman-Beavers square roots, then the
 * atanh series on (A - I)(A + I)^{-1}).
 *
 * Throws NotInvertible when |det A| <= tau_det, NoRealLog when a real
 * eigenvalue <= tau_eig is detected (directly for n <= 2, via square-root
 * divergence for n >= 3).
 */
Matrix real_log(const Matrix& a);

/// Trace/determinant discriminant classification; DimensionError unless n == 2.
Spectrum2 spectrum2(const Matrix& b);

}  // namespace soliton
