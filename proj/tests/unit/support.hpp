#pragma once

#include <cstdint>
#include <random>

#include "soliton/linalg.hpp"
#include "soliton/matrix_functions.hpp"

namespace test_support {

using soliton::Matrix;
using soliton::Vector;

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random matrix rescaled to a Frobenius norm drawn from (0.1, max_norm].
inline Matrix random_matrix(std::mt19937_64& rng, int n, double max_norm) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = uniform(rng, -1.0, 1.0);
  }
  const double target = uniform(rng, 0.1, max_norm);
  const double nrm = m.norm();
  return (target / (nrm > 0.0 ? nrm : 1.0)) * m;
}

inline Vector random_vector(std::mt19937_64& rng, int n, double amp) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(rng, -amp, amp);
  return v;
}

/// Retries until the draw is comfortably invertible.
inline Matrix random_invertible(std::mt19937_64& rng, int n, double max_norm) {
  for (;;) {
    Matrix m = random_matrix(rng, n, max_norm);
    if (std::abs(soliton::det(m)) > 1e-2) return m;
  }
}

inline double rel_err(const Matrix& got, const Matrix& want) {
  return (got - want).norm() / (1.0 + want.norm());
}

inline double rel_err(const Vector& got, const Vector& want) {
  return (got - want).norm() / (1.0 + want.norm());
}

/// Independent F_B oracle: the raw Taylor sum with no scaling or doubling.
/// Trustworthy for ||B t|| up to a few units.
inline Matrix fb_series_reference(const Matrix& b, double t, int terms = 60) {
  Matrix term = t * Matrix::identity(b.dim());
  Matrix sum = term;
  for (int k = 2; k <= terms; ++k) {
    term = (t / k) * (term * b);
    sum += term;
  }
  return sum;
}

/// Independent exp oracle on the same footing.
inline Matrix exp_series_reference(const Matrix& b, double t, int terms = 60) {
  Matrix term = Matrix::identity(b.dim());
  Matrix sum = term;
  for (int k = 1; k <= terms; ++k) {
    term = (t / k) * (term * b);
    sum += term;
  }
  return sum;
}

}  // namespace test_support
