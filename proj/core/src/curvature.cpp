#include "soliton/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "soliton/matrix_functions.hpp"

namespace soliton {

namespace {

// k(B) below this magnitude counts as vanishing equi-affine curvature.
constexpr double kKZeroTol = 1e-9;

double det2(const Vector& u, const Vector& w) { return u[0] * w[1] - u[1] * w[0]; }

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

struct Derivatives0 {
  Vector d1;
  Vector d2;
  double delta;  // det(c'(0), c''(0))
};

Derivatives0 initial_derivatives(const SolitonSpec& spec) {
  const Vector d1 = spec.B * spec.v + spec.d;
  const Vector d2 = spec.B * d1;
  return {d1, d2, det2(d1, d2)};
}

void require_planar(int n, const char* what) {
  if (n != 2) throw DimensionError(std::string(what) + " requires a 2-dimensional spec");
}

struct Eval {
  Vector c;
  Vector d1;
  Vector d2;
};

// 6-point Lagrange interpolation of the stored sample columns.
class SampleInterpolator {
 public:
  explicit SampleInterpolator(const CurveSamples& s) : s_(&s) {}

  Eval operator()(double t) const {
    const auto& ts = s_->ts;
    const int count = static_cast<int>(ts.size());
    const int width = std::min(6, count);
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    int start = static_cast<int>(it - ts.begin()) - width / 2;
    start = std::clamp(start, 0, count - width);

    double weight[6];
    for (int j = 0; j < width; ++j) {
      double w = 1.0;
      for (int m = 0; m < width; ++m) {
        if (m == j) continue;
        w *= (t - ts[static_cast<std::size_t>(start + m)]) /
             (ts[static_cast<std::size_t>(start + j)] - ts[static_cast<std::size_t>(start + m)]);
      }
      weight[j] = w;
    }
    const int n = s_->dim();
    Eval e{Vector::zero(n), Vector::zero(n), Vector::zero(n)};
    for (int j = 0; j < width; ++j) {
      const auto idx = static_cast<std::size_t>(start + j);
      e.c += weight[j] * s_->points[idx];
      e.d1 += weight[j] * s_->first_derivs[idx];
      e.d2 += weight[j] * s_->second_derivs[idx];
    }
    return e;
  }

 private:
  const CurveSamples* s_;
};

}  // namespace

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::kLine: return "line";
    case CurveKind::kParabola: return "parabola";
    case CurveKind::kEllipse: return "ellipse";
    case CurveKind::kHyperbola: return "hyperbola";
    case CurveKind::kConstantKga: return "constant-kga";
  }
  throw Error("unreachable curve kind");
}

std::string to_string(FamilyType type) {
  switch (type) {
    case FamilyType::kScaling: return "scaling";
    case FamilyType::kSimilarity: return "similarity";
    case FamilyType::kShear: return "shear";
    case FamilyType::kHomothetyShear: return "homothety-shear";
    case FamilyType::kTranslationComposite: return "translation-composite";
  }
  throw Error("unreachable family type");
}

CurveKind curve_kind_from_string(const std::string& s) {
  if (s == "line") return CurveKind::kLine;
  if (s == "parabola") return CurveKind::kParabola;
  if (s == "ellipse") return CurveKind::kEllipse;
  if (s == "hyperbola") return CurveKind::kHyperbola;
  if (s == "constant-kga") return CurveKind::kConstantKga;
  throw Error("unknown curve kind: " + s);
}

FamilyType family_type_from_string(const std::string& s) {
  if (s == "scaling") return FamilyType::kScaling;
  if (s == "similarity") return FamilyType::kSimilarity;
  if (s == "shear") return FamilyType::kShear;
  if (s == "homothety-shear") return FamilyType::kHomothetyShear;
  if (s == "translation-composite") return FamilyType::kTranslationComposite;
  throw Error("unknown family type: " + s);
}

double beta(const SolitonSpec& spec) {
  spec.validate();
  require_planar(spec.dim(), "beta");
  return std::cbrt(std::abs(initial_derivatives(spec).delta));
}

std::optional<double> k_invariant(const Matrix& b) {
  if (b.dim() != 2) throw DimensionError("k_invariant requires a 2x2 matrix");
  const double tau = trace(b);
  if (std::abs(tau) <= tau_eig(b)) return std::nullopt;
  return -2.0 + 9.0 * det(b) / (tau * tau);
}

CurvatureReport classify(const SolitonSpec& spec) {
  spec.validate();
  require_planar(spec.dim(), "classify");
  const Matrix& b = spec.B;
  const double te = tau_eig(b);

  CurvatureReport r;
  r.tau = trace(b);
  r.detB = det(b);
  r.k = k_invariant(b);

  if (b.norm() <= te) {
    r.family_type = FamilyType::kTranslationComposite;
  } else {
    const Spectrum2 sp = spectrum2(b);
    switch (sp.kind) {
      case SpectrumKind::kRealDistinct:
      case SpectrumKind::kRealRepeatedDiagonalizable:
        r.family_type = FamilyType::kScaling;
        break;
      case SpectrumKind::kComplexPair:
        r.family_type = FamilyType::kSimilarity;
        break;
      case SpectrumKind::kRealRepeatedDefective:
        r.family_type = std::abs(sp.lambda1) <= te ? FamilyType::kShear
                                                   : FamilyType::kHomothetyShear;
        break;
    }
  }

  r.beta = std::cbrt(std::abs(initial_derivatives(spec).delta));
  if (r.beta <= te) {
    r.kind = CurveKind::kLine;
    r.epsilon = 0;
    return r;
  }

  if (std::abs(r.tau) <= te) {
    r.epsilon = std::abs(r.detB) <= te ? 0 : sign_of(r.detB);
    r.kind = r.epsilon == 0 ? CurveKind::kParabola
                            : (r.epsilon > 0 ? CurveKind::kEllipse : CurveKind::kHyperbola);
    return r;
  }

  if (std::abs(*r.k) <= kKZeroTol) {
    r.kind = CurveKind::kParabola;
    r.epsilon = 0;
    return r;
  }
  r.kind = CurveKind::kConstantKga;
  r.epsilon = sign_of(*r.k);
  r.kga = -2.0 / std::sqrt(std::abs(*r.k));
  return r;
}

double general_affine_curvature(const Matrix& b) {
  if (b.dim() != 2) throw DimensionError("general_affine_curvature requires a 2x2 matrix");
  const std::optional<double> k = k_invariant(b);
  if (!k) throw UndefinedCurvature("trace(B) is zero");
  if (std::abs(*k) <= kKZeroTol) throw UndefinedCurvature("k(B) is zero");
  return -2.0 / std::sqrt(std::abs(*k));
}

double ArcLengthMap::sigma_ea(double t) const {
  const double rho = flipped ? -1.0 : 1.0;
  if (kind == Kind::kProportionalLinear) return rho * beta * t;
  return rho * (3.0 * beta / tau) * std::exp(tau * t / 3.0);
}

double ArcLengthMap::t_from_sigma(double sigma) const {
  const double rho = flipped ? -1.0 : 1.0;
  if (kind == Kind::kProportionalLinear) return sigma / (rho * beta);
  const double arg = sigma * tau / (3.0 * beta * rho);
  if (!(arg > 0.0)) throw Error("sigma outside the arc-length range");
  return 3.0 * std::log(arg) / tau;
}

std::optional<double> ArcLengthMap::sigma_ga(double t) const {
  if (!sga_rate) return std::nullopt;
  return *sga_rate * t;
}

ArcLengthMap arclength_map(const SolitonSpec& spec) {
  spec.validate();
  require_planar(spec.dim(), "arclength_map");
  const Matrix& b = spec.B;
  const double te = tau_eig(b);
  const Derivatives0 d0 = initial_derivatives(spec);
  const double beta_val = std::cbrt(std::abs(d0.delta));
  if (beta_val <= te) throw DegenerateCurve("beta vanishes; no equi-affine arc length");

  ArcLengthMap m;
  m.beta = beta_val;
  m.tau = trace(b);
  m.flipped = d0.delta < 0.0;
  m.kind = std::abs(m.tau) <= te ? ArcLengthMap::Kind::kProportionalLinear
                                 : ArcLengthMap::Kind::kExponential;
  const std::optional<double> k = k_invariant(b);
  if (k && std::abs(*k) > kKZeroTol) {
    // sigma_ga = trace(B) t / (3 K(B)) with K = |k|^{-1/2}; the orientation
    // factor cancels because both trace and parameter flip together.
    m.sga_rate = m.tau * std::sqrt(std::abs(*k)) / 3.0;
  }
  return m;
}

NumericCurvatureResult numeric_equi_affine_curvature(const CurveSamples& samples) {
  samples.validate();
  if (samples.ts.size() < 2) throw Error("numeric curvature needs at least two samples");
  require_planar(samples.dim(), "numeric_equi_affine_curvature");

  std::function<Eval(double)> base;
  if (samples.generator) {
    const auto& gen = samples.generator;
    base = [&gen](double t) {
      auto a = gen(t);
      return Eval{std::move(a[0]), std::move(a[1]), std::move(a[2])};
    };
  } else {
    if (!samples.has_derivs() || samples.second_derivs.empty()) {
      throw Error("samples must carry derivatives or a generator");
    }
    if (samples.ts.size() < 8) throw Error("interpolation needs at least 8 samples");
    base = SampleInterpolator(samples);
  }

  const double t0 = samples.ts.front();
  const double t1 = samples.ts.back();

  // Orientation and degeneracy probe.
  const int kFine = 2048;
  const double hs_probe = (t1 - t0) / kFine;
  double min_abs = std::numeric_limits<double>::infinity();
  double max_prod = 0.0;
  int sign = 0;
  bool mixed = false;
  for (int i = 0; i <= kFine; ++i) {
    const Eval e = base(t0 + hs_probe * i);
    const double delta = det2(e.d1, e.d2);
    min_abs = std::min(min_abs, std::abs(delta));
    max_prod = std::max(max_prod, e.d1.norm() * e.d2.norm());
    const int s = sign_of(delta);
    if (sign == 0) sign = s;
    if (s != 0 && s != sign) mixed = true;
  }
  if (mixed || min_abs <= 1e-9 * (1.0 + max_prod)) {
    throw DegenerateCurve("|c' c''| is not bounded away from zero on the range");
  }

  const bool flip = sign < 0;
  const double u0 = flip ? -t1 : t0;
  const double u1 = flip ? -t0 : t1;
  const auto ev = [&base, flip](double u) {
    Eval e = base(flip ? -u : u);
    if (flip) e.d1 *= -1.0;
    return e;
  };
  const auto w = [&ev](double u) {
    const Eval e = ev(u);
    return std::cbrt(det2(e.d1, e.d2));
  };

  // Cumulative sigma on the fine grid; one Simpson rule per subinterval.
  const double hs = (u1 - u0) / kFine;
  std::vector<double> sig(static_cast<std::size_t>(kFine) + 1, 0.0);
  std::vector<double> wn(static_cast<std::size_t>(kFine) + 1, 0.0);
  wn[0] = w(u0);
  for (int i = 0; i < kFine; ++i) {
    const double a = u0 + hs * i;
    wn[static_cast<std::size_t>(i) + 1] = w(a + hs);
    sig[static_cast<std::size_t>(i) + 1] =
        sig[static_cast<std::size_t>(i)] +
        (hs / 6.0) * (wn[static_cast<std::size_t>(i)] + 4.0 * w(a + 0.5 * hs) +
                      wn[static_cast<std::size_t>(i) + 1]);
  }
  const double total = sig.back();

  // Partial sigma within one fine subinterval, again by a single Simpson rule.
  const auto sigma_from = [&w](double a, double u) {
    return (u - a) / 6.0 * (w(a) + 4.0 * w(0.5 * (a + u)) + w(u));
  };

  const int kSteps = 2048;
  const double h = total / kSteps;
  std::vector<Vector> q(static_cast<std::size_t>(kSteps) + 1);
  int seg = 0;
  for (int k = 0; k <= kSteps; ++k) {
    const double target = k == kSteps ? total : h * k;
    while (seg < kFine - 1 && sig[static_cast<std::size_t>(seg) + 1] < target) ++seg;
    const double a = u0 + hs * seg;
    double u = a + (target - sig[static_cast<std::size_t>(seg)]) /
                       std::max(wn[static_cast<std::size_t>(seg)], 1e-300);
    u = std::clamp(u, a, a + hs);
    for (int iter = 0; iter < 12; ++iter) {
      const double f = sig[static_cast<std::size_t>(seg)] + sigma_from(a, u) - target;
      const double du = f / w(u);
      u -= du;
      u = std::clamp(u, a - hs, a + 2.0 * hs);
      if (std::abs(du) <= 1e-15 * (1.0 + std::abs(u))) break;
    }
    q[static_cast<std::size_t>(k)] = ev(u).c;
  }

  NumericCurvatureResult result;
  result.flipped = flip;
  result.u0 = u0;
  const auto at = [&q](int k) -> const Vector& { return q[static_cast<std::size_t>(k)]; };
  for (int k = 4; k <= kSteps - 4; ++k) {
    const Vector d2h = (1.0 / (h * h)) * (at(k - 1) - 2.0 * at(k) + at(k + 1));
    const Vector d2h2 = (1.0 / (4.0 * h * h)) * (at(k - 2) - 2.0 * at(k) + at(k + 2));
    const Vector c2 = (1.0 / 3.0) * (4.0 * d2h - d2h2);
    const Vector d3h =
        (1.0 / (2.0 * h * h * h)) * (at(k + 2) - 2.0 * at(k + 1) + 2.0 * at(k - 1) - at(k - 2));
    const Vector d3h2 = (1.0 / (16.0 * h * h * h)) *
                        (at(k + 4) - 2.0 * at(k + 2) + 2.0 * at(k - 2) - at(k - 4));
    const Vector c3 = (1.0 / 3.0) * (4.0 * d3h - d3h2);
    result.points.push_back({h * k, det2(c2, c3)});
  }
  return result;
}

}  // namespace soliton
