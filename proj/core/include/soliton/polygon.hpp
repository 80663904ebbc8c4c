#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "soliton/affine.hpp"
#include "soliton/curve.hpp"
#include "soliton/linalg.hpp"

namespace soliton {

enum class Topology { kOpen, kCyclic };

/// Finite index window x_{jmin..jmax} of a bi-infinite polygon, or one period
/// of a cyclic one (indices then wrap modulo the period).
struct PolygonWindow {
  long jmin = 0;
  std::vector<Vector> vertices;
  Topology topology = Topology::kOpen;

  long jmax() const { return jmin + static_cast<long>(vertices.size()) - 1; }
  long size() const { return static_cast<long>(vertices.size()); }
  int dim() const { return vertices.empty() ? 0 : vertices.front().dim(); }

  const Vector& at(long j) const;

  void validate() const;
};

/// Per-vertex soliton residuals ||(1-alpha) x_j + alpha x_{j+1} - (A x_j + b)||.
struct SolitonResidual {
  double max_residual = 0.0;
  std::vector<std::pair<long, double>> per_index;
  double alpha = 0.0;
  double scale = 1.0;  // 1 + max vertex norm in the window
};

/// (M_alpha(x))_j = (1-alpha) x_j + alpha x_{j+1}. Open windows lose the top index.
PolygonWindow midpoints_map(const PolygonWindow& x, double alpha);

/// (T(x))_j = (x_{j-1} + 2 x_j + x_{j+1}) / 4; equals M^2 shifted by one index.
PolygonWindow t_map(const PolygonWindow& x);

/// One step of the soliton recursion: x_{j+1} = A_alpha x_j + b_alpha with
/// A_alpha = alpha^{-1}(A + (alpha-1) I), b_alpha = alpha^{-1} b.
/// Throws EigenvalueObstruction when 1-alpha is (numerically) an eigenvalue of A.
AffineMap step_map(const AffineMap& map, double alpha);

/// The unique soliton polygon with x_0 = v for the witness (A, b) under M_alpha,
/// generated by the recursion over [jmin, jmax].
PolygonWindow soliton_polygon(const AffineMap& map, double alpha, const Vector& v, long jmin,
                              long jmax);

/// Closed-form vertex x_j (geometric-series form). Cross-check only: returns
/// nullopt, with an info-level notice, when the inverse factor it needs is
/// near-singular; the recursion in soliton_polygon is the source of truth.
std::optional<Vector> soliton_vertex_closed_form(const AffineMap& map, double alpha,
                                                 const Vector& v, long j);

SolitonResidual verify_soliton(const PolygonWindow& x, const AffineMap& map, double alpha);

/// Lifts a polygon soliton onto the smooth curve through it: B_alpha = log A_alpha,
/// d_alpha = F_{B_alpha}(1)^{-1} b_alpha, so that curve_point(spec, j) = x_j.
SolitonSpec embed_on_curve(const AffineMap& map, double alpha, const Vector& v);

}  // namespace soliton
