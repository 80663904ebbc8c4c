#include "soliton/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <utility>

namespace soliton {

namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxDim) {
    throw DimensionError("dimension " + std::to_string(n) + " outside [1, " +
                         std::to_string(kMaxDim) + "]");
  }
}

void check_finite(const std::vector<double>& a, const char* what) {
  for (double x : a) {
    if (!std::isfinite(x)) throw InvalidEntry(std::string(what) + " entry is not finite");
  }
}

void check_same_dim(int a, int b) {
  if (a != b) {
    throw DimensionError("dimension mismatch: " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

// In-place LU with partial pivoting; returns the permutation sign.
// Zero pivots are left in place; det() reads them off the diagonal.
struct Lu {
  Matrix lu;
  std::vector<int> piv;
  double sign = 1.0;

  double determinant() const {
    double d = sign;
    for (int i = 0; i < lu.dim(); ++i) d *= lu(i, i);
    return d;
  }
};

Lu lu_factor(Matrix a) {
  const int n = a.dim();
  Lu f{std::move(a), std::vector<int>(static_cast<std::size_t>(n)), 1.0};
  for (int i = 0; i < n; ++i) f.piv[static_cast<std::size_t>(i)] = i;
  for (int col = 0; col < n; ++col) {
    int p = col;
    double best = std::abs(f.lu(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(f.lu(r, col));
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (p != col) {
      for (int c = 0; c < n; ++c) std::swap(f.lu(p, c), f.lu(col, c));
      std::swap(f.piv[static_cast<std::size_t>(p)], f.piv[static_cast<std::size_t>(col)]);
      f.sign = -f.sign;
    }
    const double pivot = f.lu(col, col);
    if (pivot == 0.0) continue;
    for (int r = col + 1; r < n; ++r) {
      const double m = f.lu(r, col) / pivot;
      f.lu(r, col) = m;
      for (int c = col + 1; c < n; ++c) f.lu(r, c) -= m * f.lu(col, c);
    }
  }
  return f;
}

// Solves P A x = b given the factorization of A.
Vector lu_solve(const Lu& f, const Vector& y) {
  const int n = f.lu.dim();
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = y[f.piv[static_cast<std::size_t>(i)]];
  for (int i = 1; i < n; ++i) {
    double s = x[i];
    for (int j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s / f.lu(i, i);
  }
  return x;
}

}  // namespace

Vector::Vector(int n) : v_(static_cast<std::size_t>(n), 0.0) { check_dim(n); }

Vector::Vector(std::initializer_list<double> entries) : v_(entries) {
  check_dim(dim());
  check_finite(v_, "vector");
}

Vector Vector::zero(int n) { return Vector(n); }

Vector& Vector::operator+=(const Vector& o) {
  check_same_dim(dim(), o.dim());
  for (int i = 0; i < dim(); ++i) v_[static_cast<std::size_t>(i)] += o[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  check_same_dim(dim(), o.dim());
  for (int i = 0; i < dim(); ++i) v_[static_cast<std::size_t>(i)] -= o[i];
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}

double Vector::norm() const {
  double s = 0.0;
  for (double x : v_) s += x * x;
  return std::sqrt(s);
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(double s, Vector a) { return a *= s; }
Vector operator-(Vector a) { return a *= -1.0; }

Matrix::Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {
  check_dim(n);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : Matrix(static_cast<int>(rows.size())) {
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) {
      throw DimensionError("matrix initializer rows must be square");
    }
    int j = 0;
    for (double x : row) (*this)(i, j++) = x;
    ++i;
  }
  check_finite(a_, "matrix");
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::zero(int n) { return Matrix(n); }

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.dim());
  for (int i = 0; i < d.dim(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<double> d) { return diagonal(Vector(d)); }

Matrix Matrix::from_rows(int n, const std::vector<double>& a) {
  Matrix m(n);
  if (static_cast<int>(a.size()) != n * n) {
    throw DimensionError("row buffer size does not match dimension");
  }
  check_finite(a, "matrix");
  m.a_ = a;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  check_same_dim(n_, o.n_);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  check_same_dim(n_, o.n_);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : a_) x *= s;
  return *this;
}

double Matrix::norm() const {
  double s = 0.0;
  for (double x : a_) s += x * x;
  return std::sqrt(s);
}

bool Matrix::all_finite() const {
  for (double x : a_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }
Matrix operator-(Matrix a) { return a *= -1.0; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_same_dim(a.dim(), b.dim());
  const int n = a.dim();
  Matrix c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  check_same_dim(a.dim(), x.dim());
  const int n = a.dim();
  Vector y(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double trace(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a(i, i);
  return s;
}

double det(const Matrix& a) { return lu_factor(a).determinant(); }

double tau_det(const Matrix& a) {
  return 1e-12 * std::pow(a.norm(), static_cast<double>(a.dim()));
}

double tau_eig(const Matrix& b) { return 1e-9 * (1.0 + b.norm()); }

Matrix inverse(const Matrix& a) {
  const Lu f = lu_factor(a);
  if (std::abs(f.determinant()) <= tau_det(a)) {
    throw NotInvertible("matrix is singular up to tau_det");
  }
  const int n = a.dim();
  Matrix inv(n);
  for (int c = 0; c < n; ++c) {
    Vector e(n);
    e[c] = 1.0;
    const Vector x = lu_solve(f, e);
    for (int r = 0; r < n; ++r) inv(r, c) = x[r];
  }
  return inv;
}

Vector solve(const Matrix& a, const Vector& y) {
  check_same_dim(a.dim(), y.dim());
  const Lu f = lu_factor(a);
  if (std::abs(f.determinant()) <= tau_det(a)) {
    throw NotInvertible("matrix is singular up to tau_det");
  }
  return lu_solve(f, y);
}

Matrix solve(const Matrix& a, const Matrix& y) {
  check_same_dim(a.dim(), y.dim());
  const Lu f = lu_factor(a);
  if (std::abs(f.determinant()) <= tau_det(a)) {
    throw NotInvertible("matrix is singular up to tau_det");
  }
  const int n = a.dim();
  Matrix x(n);
  for (int c = 0; c < n; ++c) {
    Vector col(n);
    for (int r = 0; r < n; ++r) col[r] = y(r, c);
    const Vector sol = lu_solve(f, col);
    for (int r = 0; r < n; ++r) x(r, c) = sol[r];
  }
  return x;
}

Matrix pow_int(const Matrix& a, long j) {
  const Matrix base = j < 0 ? inverse(a) : a;
  unsigned long e = j < 0 ? static_cast<unsigned long>(-j) : static_cast<unsigned long>(j);
  Matrix result = Matrix::identity(a.dim());
  Matrix sq = base;
  while (e > 0) {
    if (e & 1UL) result = result * sq;
    e >>= 1UL;
    if (e > 0) sq = sq * sq;
  }
  return result;
}

std::string to_string(const Matrix& a) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < a.dim(); ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < a.dim(); ++j) os << (j ? "," : "") << a(i, j);
  }
  os << "]";
  return os.str();
}

std::string to_string(const Vector& v) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < v.dim(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace soliton
