#include "soliton/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "soliton/log.hpp"
#include "soliton/matrix_functions.hpp"

namespace soliton {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw AlphaOutOfRange("alpha must lie in (0,1)");
}

}  // namespace

const Vector& PolygonWindow::at(long j) const {
  if (topology == Topology::kCyclic) {
    const long period = size();
    long r = (j - jmin) % period;
    if (r < 0) r += period;
    return vertices[static_cast<std::size_t>(r)];
  }
  if (j < jmin || j > jmax()) throw Error("index outside the polygon window");
  return vertices[static_cast<std::size_t>(j - jmin)];
}

void PolygonWindow::validate() const {
  if (vertices.empty()) throw EmptyResult("polygon window has no vertices");
  const int n = vertices.front().dim();
  for (const Vector& v : vertices) {
    if (v.dim() != n) throw DimensionError("polygon vertices must share one dimension");
  }
}

PolygonWindow midpoints_map(const PolygonWindow& x, double alpha) {
  check_alpha(alpha);
  x.validate();
  PolygonWindow out;
  out.topology = x.topology;
  if (x.topology == Topology::kCyclic) {
    out.jmin = x.jmin;
    out.vertices.reserve(x.vertices.size());
    for (long j = x.jmin; j <= x.jmax(); ++j) {
      out.vertices.push_back((1.0 - alpha) * x.at(j) + alpha * x.at(j + 1));
    }
    return out;
  }
  if (x.size() < 2) throw EmptyResult("open window shrank below one vertex");
  out.jmin = x.jmin;
  out.vertices.reserve(x.vertices.size() - 1);
  for (long j = x.jmin; j < x.jmax(); ++j) {
    out.vertices.push_back((1.0 - alpha) * x.at(j) + alpha * x.at(j + 1));
  }
  return out;
}

PolygonWindow t_map(const PolygonWindow& x) {
  x.validate();
  PolygonWindow out;
  out.topology = x.topology;
  if (x.topology == Topology::kCyclic) {
    out.jmin = x.jmin;
    out.vertices.reserve(x.vertices.size());
    for (long j = x.jmin; j <= x.jmax(); ++j) {
      out.vertices.push_back(0.25 * (x.at(j - 1) + 2.0 * x.at(j) + x.at(j + 1)));
    }
    return out;
  }
  if (x.size() < 3) throw EmptyResult("t_map needs at least three vertices");
  out.jmin = x.jmin + 1;
  out.vertices.reserve(x.vertices.size() - 2);
  for (long j = x.jmin + 1; j < x.jmax(); ++j) {
    out.vertices.push_back(0.25 * (x.at(j - 1) + 2.0 * x.at(j) + x.at(j + 1)));
  }
  return out;
}

AffineMap step_map(const AffineMap& map, double alpha) {
  check_alpha(alpha);
  const int n = map.dim();
  if (map.b.dim() != n) throw DimensionError("witness (A, b) dimensions disagree");
  const Matrix a_alpha = (1.0 / alpha) * (map.A + (alpha - 1.0) * Matrix::identity(n));
  if (std::abs(det(a_alpha)) <= tau_det(a_alpha)) {
    throw EigenvalueObstruction("1 - alpha is an eigenvalue of A");
  }
  return {a_alpha, (1.0 / alpha) * map.b};
}

PolygonWindow soliton_polygon(const AffineMap& map, double alpha, const Vector& v, long jmin,
                              long jmax) {
  if (jmax < jmin) throw Error("jmax must be >= jmin");
  const AffineMap step = step_map(map, alpha);
  const Matrix step_inv = inverse(step.A);

  std::deque<Vector> verts;
  verts.push_back(v);
  Vector fwd = v;
  for (long j = 0; j < std::max(jmax, 0L); ++j) {
    fwd = step(fwd);
    verts.push_back(fwd);
  }
  Vector bwd = v;
  for (long j = 0; j > std::min(jmin, 0L); --j) {
    bwd = step_inv * (bwd - step.b);
    verts.push_front(bwd);
  }

  // verts now spans [min(jmin,0), max(jmax,0)]; slice the requested window.
  const long lo = std::min(jmin, 0L);
  PolygonWindow out;
  out.jmin = jmin;
  out.vertices.assign(verts.begin() + (jmin - lo), verts.begin() + (jmax - lo + 1));
  return out;
}

std::optional<Vector> soliton_vertex_closed_form(const AffineMap& map, double alpha,
                                                 const Vector& v, long j) {
  const AffineMap step = step_map(map, alpha);
  const int n = step.dim();
  const Matrix id = Matrix::identity(n);
  if (j == 0) return v;
  const Matrix power = pow_int(step.A, j);
  if (j > 0) {
    const Matrix factor = step.A - id;
    if (std::abs(det(factor)) <= tau_det(factor)) {
      log_info("closed form skipped: A_alpha - I is near-singular");
      return std::nullopt;
    }
    return v + (power - id) * (v + solve(factor, step.b));
  }
  const Matrix inv = inverse(step.A);
  const Matrix factor = inv - id;
  if (std::abs(det(factor)) <= tau_det(factor)) {
    log_info("closed form skipped: A_alpha^{-1} - I is near-singular");
    return std::nullopt;
  }
  return v + (power - id) * (v - solve(factor, inv * step.b));
}

SolitonResidual verify_soliton(const PolygonWindow& x, const AffineMap& map, double alpha) {
  check_alpha(alpha);
  x.validate();
  if (x.topology == Topology::kOpen && x.size() < 2) {
    throw EmptyResult("verification needs a window of length >= 2");
  }
  SolitonResidual r;
  r.alpha = alpha;
  for (const Vector& vtx : x.vertices) r.scale = std::max(r.scale, 1.0 + vtx.norm());
  const long last = x.topology == Topology::kCyclic ? x.jmax() : x.jmax() - 1;
  for (long j = x.jmin; j <= last; ++j) {
    const Vector lhs = (1.0 - alpha) * x.at(j) + alpha * x.at(j + 1);
    const double residual = (lhs - map(x.at(j))).norm();
    r.per_index.emplace_back(j, residual);
    r.max_residual = std::max(r.max_residual, residual);
  }
  return r;
}

SolitonSpec embed_on_curve(const AffineMap& map, double alpha, const Vector& v) {
  const AffineMap step = step_map(map, alpha);
  Matrix b_alpha = real_log(step.A);
  Vector d_alpha = solve(f_b(b_alpha, 1.0), step.b);
  return SolitonSpec{std::move(b_alpha), std::move(d_alpha), v};
}

}  // namespace soliton
