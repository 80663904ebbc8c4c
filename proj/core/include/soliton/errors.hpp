#pragma once

#include <stdexcept>
#include <string>

namespace soliton {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix or vector was constructed from NaN/Inf entries.
class InvalidEntry : public Error {
 public:
  using Error::Error;
};

/// |det| fell below the scale-relative guard tau_det.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// The matrix has a real eigenvalue <= tau_eig; no principal real logarithm.
class NoRealLog : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class AlphaOutOfRange : public Error {
 public:
  using Error::Error;
};

class EmptyResult : public Error {
 public:
  using Error::Error;
};

/// 1 - alpha is (numerically) an eigenvalue of the witness linear part.
class EigenvalueObstruction : public Error {
 public:
  using Error::Error;
};

/// Curve has collinear first/second derivatives where the operation needs them independent.
class DegenerateCurve : public Error {
 public:
  using Error::Error;
};

/// Curvature invariant requested outside its domain (trace zero or k(B) zero).
class UndefinedCurvature : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace soliton
