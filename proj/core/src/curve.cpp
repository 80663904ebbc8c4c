#include "soliton/curve.hpp"

#include <algorithm>
#include <cmath>

#include "soliton/matrix_functions.hpp"

namespace soliton {

void SolitonSpec::validate() const {
  if (B.dim() != d.dim() || B.dim() != v.dim()) {
    throw DimensionError("spec fields B, d, v must share one dimension");
  }
}

void CurveSamples::validate() const {
  if (ts.size() != points.size()) throw DimensionError("ts/points length mismatch");
  if (!first_derivs.empty() && first_derivs.size() != ts.size()) {
    throw DimensionError("first_derivs length mismatch");
  }
  if (!second_derivs.empty() && second_derivs.size() != ts.size()) {
    throw DimensionError("second_derivs length mismatch");
  }
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i] > ts[i - 1])) throw Error("sample parameters must be strictly increasing");
  }
}

Vector curve_point(const SolitonSpec& spec, double t) {
  spec.validate();
  return spec.v + f_b(spec.B, t) * (spec.B * spec.v + spec.d);
}

std::vector<Vector> curve_derivatives(const SolitonSpec& spec, double t, int order) {
  spec.validate();
  if (order < 1 || order > 3) throw Error("derivative order must be 1, 2 or 3");
  Vector w = mat_exp(spec.B, t) * (spec.B * spec.v + spec.d);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(order));
  out.push_back(w);
  for (int k = 2; k <= order; ++k) {
    w = spec.B * w;
    out.push_back(w);
  }
  return out;
}

AffineMap family_map(const SolitonSpec& spec, double alpha, double s) {
  spec.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) throw AlphaOutOfRange("alpha must lie in (0,1)");
  const int n = spec.dim();
  if (s == 0.0) return AffineMap::identity(n);
  Matrix a = (1.0 - alpha) * Matrix::identity(n) + alpha * mat_exp(spec.B, s);
  Vector b = alpha * (f_b(spec.B, s) * spec.d);
  return {std::move(a), std::move(b)};
}

CurveResidual verify_curve_soliton(const SolitonSpec& spec, double alpha,
                                   std::span<const double> s_grid,
                                   std::span<const double> t_grid) {
  spec.validate();
  if (s_grid.empty() || t_grid.empty()) throw Error("verification grids must be non-empty");
  CurveResidual r;
  for (double s : s_grid) {
    const AffineMap map = family_map(spec, alpha, s);
    for (double t : t_grid) {
      const Vector ct = curve_point(spec, t);
      const Vector cts = curve_point(spec, t + s);
      r.scale = std::max({r.scale, 1.0 + ct.norm(), 1.0 + cts.norm()});
      const Vector blended = (1.0 - alpha) * ct + alpha * cts;
      const double residual = (blended - map(ct)).norm();
      r.max_residual = std::max(r.max_residual, residual);
    }
  }
  return r;
}

CurveResidual verify_curve_soliton(const SolitonSpec& spec, double alpha) {
  const std::vector<double> grid = uniform_grid(-2.0, 2.0, 9);
  return verify_curve_soliton(spec, alpha, grid, grid);
}

AffineMap subgroup_element(const SolitonSpec& spec, double t) {
  spec.validate();
  return {mat_exp(spec.B, t), f_b(spec.B, t) * spec.d};
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count < 2) throw Error("grid needs at least two points");
  if (!(hi > lo)) throw Error("grid range must be increasing");
  std::vector<double> g(static_cast<std::size_t>(count));
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo + step * i;
  g.back() = hi;
  return g;
}

CurveSamples sample(const SolitonSpec& spec, double t0, double t1, int count) {
  spec.validate();
  if (count < 2) throw Error("sampling needs count >= 2");
  if (!(t1 > t0)) throw Error("sampling range must satisfy t1 > t0");
  CurveSamples s;
  s.ts = uniform_grid(t0, t1, count);
  s.points.reserve(s.ts.size());
  s.first_derivs.reserve(s.ts.size());
  s.second_derivs.reserve(s.ts.size());
  for (double t : s.ts) {
    s.points.push_back(curve_point(spec, t));
    auto derivs = curve_derivatives(spec, t, 2);
    s.first_derivs.push_back(std::move(derivs[0]));
    s.second_derivs.push_back(std::move(derivs[1]));
  }
  s.generator = [spec](double t) -> std::array<Vector, 3> {
    auto derivs = curve_derivatives(spec, t, 2);
    return {curve_point(spec, t), std::move(derivs[0]), std::move(derivs[1])};
  };
  return s;
}

}  // namespace soliton
