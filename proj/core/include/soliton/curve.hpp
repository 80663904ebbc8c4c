#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "soliton/affine.hpp"
#include "soliton/linalg.hpp"

namespace soliton {

/// Generator data of a curve soliton: the solution of dc/dt = B c + d with c(0) = v,
/// i.e. c(t) = v + F_B(t)(B v + d).
struct SolitonSpec {
  Matrix B;
  Vector d;
  Vector v;

  int dim() const { return B.dim(); }
  void validate() const;
};

/// Ordered samples of a smooth curve. Derivative columns are optional; the
/// generator, when set, evaluates (c, c', c'') at arbitrary parameters and is
/// never serialized.
struct CurveSamples {
  std::vector<double> ts;
  std::vector<Vector> points;
  std::vector<Vector> first_derivs;
  std::vector<Vector> second_derivs;
  std::function<std::array<Vector, 3>(double)> generator;

  int dim() const { return points.empty() ? 0 : points.front().dim(); }
  bool has_derivs() const { return !first_derivs.empty(); }
  void validate() const;
};

/// c(t) = v + F_B(t)(B v + d); equal to exp(B t) v + F_B(t) d.
Vector curve_point(const SolitonSpec& spec, double t);

/// Derivatives c^(k)(t) = B^{k-1} exp(B t) (B v + d) for k = 1..order (order <= 3).
std::vector<Vector> curve_derivatives(const SolitonSpec& spec, double t, int order);

/// The one-parameter family A(s) = (1-alpha) I + alpha exp(B s), b(s) = alpha F_B(s) d.
/// s == 0 short-circuits to the structural identity.
AffineMap family_map(const SolitonSpec& spec, double alpha, double s);

struct CurveResidual {
  double max_residual = 0.0;
  double scale = 1.0;  // 1 + max curve-point norm over the evaluated grid
};

/// Max over the grids of ||(1-alpha) c(t) + alpha c(t+s) - (A(s) c(t) + b(s))||.
CurveResidual verify_curve_soliton(const SolitonSpec& spec, double alpha,
                                   std::span<const double> s_grid,
                                   std::span<const double> t_grid);

/// Same check on the default 9x9 grid over [-2,2]^2.
CurveResidual verify_curve_soliton(const SolitonSpec& spec, double alpha);

/// (exp(B t), F_B(t) d): the one-parameter affine subgroup generated by [[B,d],[0,0]].
AffineMap subgroup_element(const SolitonSpec& spec, double t);

/// Uniform grid samples carrying first/second derivatives and an analytic generator.
CurveSamples sample(const SolitonSpec& spec, double t0, double t1, int count);

std::vector<double> uniform_grid(double lo, double hi, int count);

}  // namespace soliton
