#include <doctest.h>

#include <array>
#include <cmath>
#include <thread>

#include "soliton/curve.hpp"
#include "soliton/matrix_functions.hpp"
#include "soliton/polygon.hpp"
#include "support.hpp"

using namespace soliton;
using test_support::make_rng;
using test_support::random_matrix;
using test_support::random_vector;

namespace {

SolitonSpec parabola_spec() {
  return {Matrix{{0.0, 1.0}, {0.0, 0.0}}, Vector{0.0, 1.0}, Vector::zero(2)};
}

SolitonSpec random_spec(std::mt19937_64& rng, int n, double norm_cap) {
  return {random_matrix(rng, n, norm_cap), random_vector(rng, n, 2.0), random_vector(rng, n, 2.0)};
}

}  // namespace

TEST_CASE("translation orbits are straight lines") {
  const SolitonSpec spec{Matrix::zero(2), Vector{1.0, 0.0}, Vector::zero(2)};
  for (double t : {-2.0, 0.0, 0.7, 5.0}) {
    CHECK((curve_point(spec, t) - Vector{t, 0.0}).norm() <= 1e-15 * (1.0 + std::abs(t)));
  }
}

TEST_CASE("the parabola orbit") {
  const SolitonSpec spec = parabola_spec();
  for (double t : {-1.5, 0.0, 0.5, 2.0}) {
    const Vector c = curve_point(spec, t);
    CHECK(c[0] == doctest::Approx(t * t / 2.0).epsilon(1e-14));
    CHECK(c[1] == doctest::Approx(t).epsilon(1e-14));
  }
}

TEST_CASE("diagonal generators give exponential orbits") {
  const double lambda = -0.7;
  const SolitonSpec spec{Matrix::diagonal({1.0, lambda}), Vector::zero(2), Vector{1.0, 1.0}};
  for (double t : {-1.0, 0.3, 2.0}) {
    const Vector c = curve_point(spec, t);
    CHECK(c[0] == doctest::Approx(std::exp(t)).epsilon(1e-13));
    CHECK(c[1] == doctest::Approx(std::exp(lambda * t)).epsilon(1e-13));
  }
}

TEST_CASE("the two closed forms of the orbit agree") {
  auto rng = make_rng(401);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + rep % 3;
    const SolitonSpec spec = random_spec(rng, n, 2.0);
    const double t = test_support::uniform(rng, -3.0, 3.0);
    const Vector direct = curve_point(spec, t);
    const Vector alt = mat_exp(spec.B, t) * spec.v + f_b(spec.B, t) * spec.d;
    CAPTURE(rep);
    CHECK((direct - alt).norm() <= 1e-11 * (1.0 + direct.norm()));
  }
}

TEST_CASE("derivatives of the parabola spec at zero") {
  const auto d = curve_derivatives(parabola_spec(), 0.0, 3);
  CHECK((d[0] - Vector{0.0, 1.0}).norm() == 0.0);
  CHECK((d[1] - Vector{1.0, 0.0}).norm() == 0.0);
  CHECK(d[2].norm() == 0.0);
}

TEST_CASE("higher derivatives vanish for translation orbits") {
  const SolitonSpec spec{Matrix::zero(3), Vector{1.0, -2.0, 0.5}, Vector::zero(3)};
  const auto d = curve_derivatives(spec, 1.3, 3);
  CHECK((d[0] - spec.d).norm() == 0.0);
  CHECK(d[1].norm() == 0.0);
  CHECK(d[2].norm() == 0.0);
}

TEST_CASE("derivatives match central differences at second order") {
  auto rng = make_rng(402);
  const SolitonSpec spec = random_spec(rng, 2, 1.5);
  const double t = 0.4;
  const auto exact = curve_derivatives(spec, t, 2);
  const auto fd_error = [&](double h) {
    const Vector d1 = (1.0 / (2.0 * h)) * (curve_point(spec, t + h) - curve_point(spec, t - h));
    return (d1 - exact[0]).norm();
  };
  const double slope = std::log(fd_error(1e-3) / fd_error(5e-4)) / std::log(2.0);
  CHECK(slope == doctest::Approx(2.0).epsilon(0.1));

  const auto fd2_error = [&](double h) {
    const Vector d2 = (1.0 / (h * h)) * (curve_point(spec, t + h) - 2.0 * curve_point(spec, t) +
                                         curve_point(spec, t - h));
    return (d2 - exact[1]).norm();
  };
  const double slope2 = std::log(fd2_error(1e-2) / fd2_error(5e-3)) / std::log(2.0);
  CHECK(slope2 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("first derivative satisfies the generating equation") {
  auto rng = make_rng(403);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 2 + rep % 3;
    const SolitonSpec spec = random_spec(rng, n, 2.0);
    const double t = test_support::uniform(rng, -2.5, 2.5);
    const Vector lhs = curve_derivatives(spec, t, 1)[0];
    const Vector rhs = spec.B * curve_point(spec, t) + spec.d;
    CAPTURE(rep);
    CHECK((lhs - rhs).norm() <= 1e-11 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("family map at s = 0 is structurally the identity") {
  auto rng = make_rng(404);
  const SolitonSpec spec = random_spec(rng, 3, 2.0);
  const AffineMap id = family_map(spec, 0.3, 0.0);
  CHECK(id.A == Matrix::identity(3));
  CHECK(id.b == Vector::zero(3));
}

TEST_CASE("family map of the parabola spec is shear plus translation") {
  const SolitonSpec spec = parabola_spec();
  for (double alpha : {0.25, 0.5}) {
    for (double s : {-1.0, 0.8}) {
      const AffineMap m = family_map(spec, alpha, s);
      CHECK((m.A - Matrix{{1.0, alpha * s}, {0.0, 1.0}}).norm() <= 1e-14);
      CHECK((m.b - Vector{alpha * s * s / 2.0, alpha * s}).norm() <= 1e-14);
    }
  }
}

TEST_CASE("family map of a diagonal generator stays diagonal") {
  const double lambda = 2.5, alpha = 0.4, s = 0.9;
  const SolitonSpec spec{Matrix::diagonal({1.0, lambda}), Vector::zero(2), Vector{1.0, 1.0}};
  const AffineMap m = family_map(spec, alpha, s);
  CHECK(m.A(0, 0) == doctest::Approx(1.0 - alpha + alpha * std::exp(s)).epsilon(1e-13));
  CHECK(m.A(1, 1) == doctest::Approx(1.0 - alpha + alpha * std::exp(lambda * s)).epsilon(1e-13));
  CHECK(m.A(0, 1) == 0.0);
  CHECK(m.A(1, 0) == 0.0);
}

TEST_CASE("curve soliton residual vanishes for s = 0") {
  auto rng = make_rng(405);
  const SolitonSpec spec = random_spec(rng, 2, 2.0);
  const std::array<double, 1> s_grid{0.0};
  const auto t_grid = uniform_grid(-2.0, 2.0, 9);
  CHECK(verify_curve_soliton(spec, 0.5, s_grid, t_grid).max_residual == 0.0);
}

TEST_CASE("parabola curve is a soliton to machine precision") {
  const auto grid = uniform_grid(-2.0, 2.0, 9);
  const CurveResidual r = verify_curve_soliton(parabola_spec(), 0.5, grid, grid);
  CHECK(r.max_residual <= 1e-12);
}

TEST_CASE("homothety-shear example curve is a soliton") {
  const SolitonSpec spec{Matrix{{1.0, 1.0}, {0.0, 1.0}}, Vector::zero(2), Vector{1.0, 1.0}};
  const CurveResidual r = verify_curve_soliton(spec, 0.5);
  CHECK(r.max_residual <= 1e-10 * r.scale);
}

TEST_CASE("random orbits are solitons for each alpha") {
  auto rng = make_rng(406);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + rep % 2;
    const SolitonSpec spec = random_spec(rng, n, 1.5);
    for (double alpha : {0.1, 0.5, 0.9}) {
      const CurveResidual r = verify_curve_soliton(spec, alpha);
      CAPTURE(rep);
      CAPTURE(alpha);
      CHECK(r.max_residual <= 1e-10 * r.scale);
    }
  }
}

TEST_CASE("integer samples of an orbit verify as a polygon soliton") {
  auto rng = make_rng(407);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 2 + rep % 2;
    const SolitonSpec spec = random_spec(rng, n, 1.0);
    const double alpha = test_support::uniform(rng, 0.1, 0.9);
    const double s = test_support::uniform(rng, 0.2, 1.0);
    const double t0 = test_support::uniform(rng, -1.0, 1.0);

    PolygonWindow x;
    x.jmin = -6;
    for (long j = -6; j <= 6; ++j) {
      x.vertices.push_back(curve_point(spec, static_cast<double>(j) * s + t0));
    }
    const SolitonResidual r = verify_soliton(x, family_map(spec, alpha, s), alpha);
    CAPTURE(rep);
    CHECK(r.max_residual <= 1e-9 * r.scale);
  }
}

TEST_CASE("homothety-shear orbit closed form") {
  const SolitonSpec spec{Matrix{{1.0, 1.0}, {0.0, 1.0}}, Vector::zero(2), Vector{1.0, 1.0}};
  for (double t : {-1.0, 0.0, 0.6, 2.0}) {
    const Vector c = curve_point(spec, t);
    CHECK(c[0] == doctest::Approx((t + 1.0) * std::exp(t)).epsilon(1e-13));
    CHECK(c[1] == doctest::Approx(std::exp(t)).epsilon(1e-13));
  }
}

TEST_CASE("subgroup elements equal the block-matrix exponential") {
  auto rng = make_rng(410);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + rep % 3;
    const SolitonSpec spec = random_spec(rng, n, 1.5);
    const double t = test_support::uniform(rng, -2.5, 2.5);

    Matrix block(n + 1);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) block(i, j) = spec.B(i, j);
      block(i, n) = spec.d[i];
    }
    const Matrix e = mat_exp(block, t);
    const AffineMap g = subgroup_element(spec, t);
    CAPTURE(rep);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        CHECK(e(i, j) == doctest::Approx(g.A(i, j)).epsilon(1e-11).scale(1.0 + g.A.norm()));
      }
      CHECK(e(i, n) == doctest::Approx(g.b[i]).epsilon(1e-11).scale(1.0 + g.b.norm()));
      CHECK(e(n, i) == 0.0);
    }
    CHECK(e(n, n) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("subgroup elements compose according to the group law") {
  auto rng = make_rng(408);
  const SolitonSpec zero_spec{Matrix::zero(2), Vector{2.0, -1.0}, Vector::zero(2)};
  CHECK(subgroup_element(zero_spec, 0.0).A == Matrix::identity(2));
  CHECK(subgroup_element(zero_spec, 0.0).b == Vector::zero(2));
  CHECK((subgroup_element(zero_spec, 1.5).b - Vector{3.0, -1.5}).norm() <= 1e-14);

  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + rep % 3;
    const SolitonSpec spec = random_spec(rng, n, 1.5);
    const double t = test_support::uniform(rng, -3.0, 3.0);
    const double s = test_support::uniform(rng, -3.0, 3.0);
    const AffineMap lhs = subgroup_element(spec, t + s);
    const AffineMap rhs = compose(subgroup_element(spec, t), subgroup_element(spec, s));
    CAPTURE(rep);
    CHECK((lhs.A - rhs.A).norm() <= 1e-11 * (1.0 + rhs.A.norm()));
    CHECK((lhs.b - rhs.b).norm() <= 1e-11 * (1.0 + rhs.b.norm()));
  }
}

TEST_CASE("orbit points equal the subgroup acting on v") {
  auto rng = make_rng(409);
  for (int rep = 0; rep < 25; ++rep) {
    const SolitonSpec spec = random_spec(rng, 2, 2.0);
    const double t = test_support::uniform(rng, -2.0, 2.0);
    const Vector via_group = subgroup_element(spec, t)(spec.v);
    CHECK((via_group - curve_point(spec, t)).norm() <= 1e-11 * (1.0 + via_group.norm()));
  }
}

TEST_CASE("sampling the parabola") {
  const CurveSamples s = sample(parabola_spec(), -1.0, 1.0, 3);
  REQUIRE(s.ts.size() == 3);
  CHECK(s.points[0] == Vector{0.5, -1.0});
  CHECK(s.points[1] == Vector{0.0, 0.0});
  CHECK(s.points[2] == Vector{0.5, 1.0});
  CHECK(s.has_derivs());
  CHECK((s.first_derivs[1] - Vector{0.0, 1.0}).norm() == 0.0);
  REQUIRE(s.generator);
  const auto mid = s.generator(0.5);
  CHECK((mid[0] - Vector{0.125, 0.5}).norm() <= 1e-15);
}

TEST_CASE("sampling endpoints and uniform grids") {
  const SolitonSpec line{Matrix::zero(2), Vector{1.0, 0.0}, Vector::zero(2)};
  const CurveSamples two = sample(line, -2.0, 7.0, 2);
  CHECK(two.ts == std::vector<double>{-2.0, 7.0});
  const CurveSamples eleven = sample(line, 0.0, 1.0, 11);
  for (int k = 0; k <= 10; ++k) {
    CHECK(eleven.points[static_cast<std::size_t>(k)][0] ==
          doctest::Approx(k / 10.0).epsilon(1e-15));
    CHECK(eleven.points[static_cast<std::size_t>(k)][1] == 0.0);
  }
  CHECK_THROWS_AS(sample(line, 0.0, 1.0, 1), Error);
  CHECK_THROWS_AS(sample(line, 1.0, 0.0, 5), Error);
}

TEST_CASE("immutable specs evaluate identically across threads") {
  const SolitonSpec spec{Matrix{{0.3, -1.1}, {0.9, 0.2}}, Vector{0.5, 0.0}, Vector{1.0, -1.0}};
  const Vector reference = curve_point(spec, 1.25);
  std::array<Vector, 8> results;
  {
    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < results.size(); ++i) {
      workers.emplace_back([&spec, &results, i] {
        for (int rep = 0; rep < 200; ++rep) results[i] = curve_point(spec, 1.25);
      });
    }
    for (std::thread& t : workers) t.join();
  }
  for (const Vector& r : results) CHECK(r == reference);
}

TEST_CASE("family maps preserve the Jordan type of the generator") {
  // Nilpotent generator: every family member is a shear with sole eigenvalue 1.
  const SolitonSpec nil = parabola_spec();
  for (double s : {-1.0, 0.5, 2.0}) {
    const Matrix e = mat_exp(nil.B, s);
    const Spectrum2 sp_e = spectrum2(e);
    CHECK(sp_e.kind == SpectrumKind::kRealRepeatedDefective);
    CHECK(sp_e.lambda1 == doctest::Approx(1.0).epsilon(1e-12));
    const Spectrum2 sp_a = spectrum2(family_map(nil, 0.3, s).A);
    CHECK(sp_a.kind == SpectrumKind::kRealRepeatedDefective);
    CHECK(sp_a.lambda1 == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Complex-pair generator: family members keep non-real eigenvalues for small s.
  const SolitonSpec rot{Matrix{{0.2, -1.0}, {1.0, 0.2}}, Vector::zero(2), Vector{1.0, 0.0}};
  for (double s : {-0.4, 0.25, 0.7}) {
    CHECK(spectrum2(family_map(rot, 0.5, s).A).kind == SpectrumKind::kComplexPair);
  }
}
