#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "soliton/errors.hpp"

namespace soliton {

/// Hard cap on matrix/vector dimension; the library targets small dense problems.
inline constexpr int kMaxDim = 16;

class Vector {
 public:
  Vector() = default;
  explicit Vector(int n);
  Vector(std::initializer_list<double> entries);

  static Vector zero(int n);

  int dim() const { return static_cast<int>(v_.size()); }
  double& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(double s);

  /// Euclidean norm.
  double norm() const;

  bool operator==(const Vector&) const = default;

  const std::vector<double>& entries() const { return v_; }

 private:
  std::vector<double> v_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector a);
Vector operator-(Vector a);

/// Dense square real matrix, row-major, dimension fixed at construction.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(int n);
  static Matrix zero(int n);
  static Matrix diagonal(const Vector& d);
  static Matrix diagonal(std::initializer_list<double> d);
  /// Builds from a flat row-major buffer; validates finiteness.
  static Matrix from_rows(int n, const std::vector<double>& a);

  int dim() const { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  /// Frobenius norm.
  double norm() const;
  bool all_finite() const;

  bool operator==(const Matrix&) const = default;

  const std::vector<double>& entries() const { return a_; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);
Matrix operator-(Matrix a);

double trace(const Matrix& a);
double det(const Matrix& a);

/// Scale-relative invertibility guard: 1e-12 * ||A||_F^n.
double tau_det(const Matrix& a);
/// Scale-relative eigenvalue guard: 1e-9 * (1 + ||B||_F).
double tau_eig(const Matrix& b);

/// Throws NotInvertible when |det A| <= tau_det(A).
Matrix inverse(const Matrix& a);
Vector solve(const Matrix& a, const Vector& y);
Matrix solve(const Matrix& a, const Matrix& y);

/// Integer matrix power; negative exponents go through inverse().
Matrix pow_int(const Matrix& a, long j);

std::string to_string(const Matrix& a);
std::string to_string(const Vector& v);

}  // namespace soliton
