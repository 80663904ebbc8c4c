#pragma once

#include "soliton/linalg.hpp"

namespace soliton {

/// Element (A, b) of Aff(n): x -> A x + b.
struct AffineMap {
  Matrix A;
  Vector b;

  int dim() const { return A.dim(); }

  Vector operator()(const Vector& x) const { return A * x + b; }

  static AffineMap identity(int n) { return {Matrix::identity(n), Vector::zero(n)}; }
};

/// f after g: x -> f(g(x)).
inline AffineMap compose(const AffineMap& f, const AffineMap& g) {
  return {f.A * g.A, f.A * g.b + f.b};
}

}  // namespace soliton
