#include "soliton/matrix_functions.hpp"

#include <cmath>
#include <limits>

namespace soliton {

namespace {

constexpr double kScaleTarget = 0.5;
constexpr int kMaxTaylorTerms = 64;

int scaling_exponent(double norm) {
  int m = 0;
  while (norm > kScaleTarget && m < 80) {
    norm *= 0.5;
    ++m;
  }
  return m;
}

// Taylor sum of exp(S) for ||S|| <= kScaleTarget.
Matrix exp_taylor(const Matrix& s) {
  const int n = s.dim();
  Matrix sum = Matrix::identity(n) + s;
  Matrix term = s;
  for (int k = 2; k <= kMaxTaylorTerms; ++k) {
    term = (1.0 / k) * (term * s);
    sum += term;
    if (term.norm() <= std::numeric_limits<double>::epsilon() * sum.norm()) break;
  }
  return sum;
}

void check_overflow(const Matrix& m, const char* what, double t) {
  if (!m.all_finite()) {
    throw OverflowError(std::string(what) + " overflowed double range at t=" +
                        std::to_string(t));
  }
}

// Denman-Beavers coupled iteration for the principal square root.
// Divergence or a singular iterate signals spectrum on the closed
// negative real axis, which the caller reports as NoRealLog.
Matrix sqrt_db(const Matrix& a) {
  const int n = a.dim();
  Matrix x = a;
  Matrix y = Matrix::identity(n);
  for (int iter = 0; iter < 80; ++iter) {
    Matrix xi(n), yi(n);
    try {
      xi = inverse(x);
      yi = inverse(y);
    } catch (const NotInvertible&) {
      throw NoRealLog("square-root iterate became singular");
    }
    const Matrix xn = 0.5 * (x + yi);
    const Matrix yn = 0.5 * (y + xi);
    if (!xn.all_finite() || !yn.all_finite()) {
      throw NoRealLog("square-root iteration diverged");
    }
    const double delta = (xn - x).norm();
    x = xn;
    y = yn;
    if (delta <= 1e-14 * (1.0 + x.norm())) return x;
  }
  throw NoRealLog("square-root iteration did not converge");
}

// atanh-based log for ||A - I|| small: log A = 2 * sum Z^(2j+1)/(2j+1),
// Z = (A - I)(A + I)^{-1}. A - I and (A + I)^{-1} commute.
Matrix log_near_identity(const Matrix& a) {
  const int n = a.dim();
  const Matrix z = solve(a + Matrix::identity(n), a - Matrix::identity(n));
  const Matrix z2 = z * z;
  Matrix term = z;
  Matrix sum = z;
  for (int j = 3; j <= 99; j += 2) {
    term = term * z2;
    sum += (1.0 / j) * term;
    if (term.norm() <= std::numeric_limits<double>::epsilon() * sum.norm()) break;
  }
  return 2.0 * sum;
}

Matrix real_log_2x2(const Matrix& a) {
  const Spectrum2 sp = spectrum2(a);
  const double guard = tau_eig(a);
  const Matrix id = Matrix::identity(2);
  switch (sp.kind) {
    case SpectrumKind::kRealDistinct: {
      if (sp.lambda2 <= guard) throw NoRealLog("real eigenvalue <= tau_eig");
      // Lagrange interpolation of log on the two eigenvalues; the divided
      // difference uses log1p to stay accurate for close eigenvalues.
      const double diff = sp.lambda1 - sp.lambda2;
      const double dd = std::log1p(diff / sp.lambda2) / diff;
      return dd * (a - sp.lambda2 * id) + std::log(sp.lambda2) * id;
    }
    case SpectrumKind::kRealRepeatedDiagonalizable: {
      if (sp.lambda1 <= guard) throw NoRealLog("real eigenvalue <= tau_eig");
      return std::log(sp.lambda1) * id;
    }
    case SpectrumKind::kRealRepeatedDefective: {
      if (sp.lambda1 <= guard) throw NoRealLog("real eigenvalue <= tau_eig");
      // A = lambda I + N with N^2 = 0, so log A = log(lambda) I + N/lambda.
      return std::log(sp.lambda1) * id + (1.0 / sp.lambda1) * (a - sp.lambda1 * id);
    }
    case SpectrumKind::kComplexPair: {
      const double r = std::hypot(sp.re, sp.im);
      const double theta = std::atan2(sp.im, sp.re);
      // (A - re*I)/im squares to -I; rotate by the principal argument.
      return std::log(r) * id + (theta / sp.im) * (a - sp.re * id);
    }
  }
  throw Error("unreachable spectrum kind");
}

}  // namespace

Matrix mat_exp(const Matrix& b, double t) {
  if (!std::isfinite(t)) throw InvalidEntry("t is not finite");
  const Matrix bt = t * b;
  const int m = scaling_exponent(bt.norm());
  Matrix e = exp_taylor(std::ldexp(1.0, -m) * bt);
  for (int i = 0; i < m; ++i) e = e * e;
  check_overflow(e, "mat_exp", t);
  return e;
}

Matrix f_b(const Matrix& b, double t) {
  if (!std::isfinite(t)) throw InvalidEntry("t is not finite");
  const int n = b.dim();
  if (t == 0.0) return Matrix::zero(n);
  const int m = scaling_exponent(std::abs(t) * b.norm());
  const double h = std::ldexp(t, -m);
  const Matrix hb = h * b;

  // F_B(h) = h * sum_{k>=0} (hB)^k/(k+1)!
  Matrix term = h * Matrix::identity(n);
  Matrix sum = term;
  for (int k = 1; k <= kMaxTaylorTerms; ++k) {
    term = (1.0 / (k + 1)) * (term * hb);
    sum += term;
    if (term.norm() <= std::numeric_limits<double>::epsilon() * sum.norm()) break;
  }

  Matrix e = exp_taylor(hb);
  for (int i = 0; i < m; ++i) {
    sum = sum + e * sum;
    e = e * e;
  }
  check_overflow(sum, "f_b", t);
  return sum;
}

Matrix real_log(const Matrix& a) {
  const int n = a.dim();
  const double d = det(a);
  if (std::abs(d) <= tau_det(a)) throw NotInvertible("matrix is singular up to tau_det");
  if (n == 1) {
    if (a(0, 0) <= tau_eig(a)) throw NoRealLog("real eigenvalue <= tau_eig");
    Matrix r(1);
    r(0, 0) = std::log(a(0, 0));
    return r;
  }
  if (n == 2) return real_log_2x2(a);

  // det < 0 forces an odd number of negative real eigenvalues.
  if (d < 0.0) throw NoRealLog("negative determinant implies a negative real eigenvalue");

  Matrix x = a;
  int k = 0;
  while ((x - Matrix::identity(n)).norm() > 0.3) {
    if (++k > 60) throw NoRealLog("inverse scaling did not contract to the identity");
    x = sqrt_db(x);
  }
  return std::ldexp(1.0, k) * log_near_identity(x);
}

Spectrum2 spectrum2(const Matrix& b) {
  if (b.dim() != 2) throw DimensionError("spectrum2 requires a 2x2 matrix");
  const double tr = trace(b);
  const double de = det(b);
  const double disc = tr * tr - 4.0 * de;
  const double tol = tau_eig(b);
  Spectrum2 sp{};
  if (disc > tol) {
    const double s = std::sqrt(disc);
    // Take the larger-magnitude root first, recover the other from the product.
    const double big = (std::abs(tr + s) >= std::abs(tr - s)) ? 0.5 * (tr + s) : 0.5 * (tr - s);
    const double small = (big != 0.0) ? de / big : 0.0;
    sp.kind = SpectrumKind::kRealDistinct;
    sp.lambda1 = std::max(big, small);
    sp.lambda2 = std::min(big, small);
  } else if (disc < -tol) {
    sp.kind = SpectrumKind::kComplexPair;
    sp.re = 0.5 * tr;
    sp.im = 0.5 * std::sqrt(-disc);
  } else {
    const double lambda = 0.5 * tr;
    sp.lambda1 = sp.lambda2 = lambda;
    const Matrix shifted = b - lambda * Matrix::identity(2);
    sp.kind = shifted.norm() <= tol ? SpectrumKind::kRealRepeatedDiagonalizable
                                    : SpectrumKind::kRealRepeatedDefective;
  }
  return sp;
}

}  // namespace soliton
