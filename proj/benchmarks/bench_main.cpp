#include <benchmark/benchmark.h>

#include <random>

#include "soliton/curvature.hpp"
#include "soliton/curve.hpp"
#include "soliton/matrix_functions.hpp"

using namespace soliton;

namespace {

// Random dense matrix normalized to Frobenius norm 2, the library's typical scale.
Matrix dense_matrix(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
  }
  return (2.0 / m.norm()) * m;
}

void BM_MatExp(benchmark::State& state) {
  const Matrix b = dense_matrix(static_cast<int>(state.range(0)), 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mat_exp(b, 3.5));
  }
}
BENCHMARK(BM_MatExp)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_FB(benchmark::State& state) {
  const Matrix b = dense_matrix(static_cast<int>(state.range(0)), 43);
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_b(b, 3.5));
  }
}
BENCHMARK(BM_FB)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_RealLog(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix a = mat_exp(dense_matrix(n, 44), 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(real_log(a));
  }
}
BENCHMARK(BM_RealLog)->Arg(2)->Arg(3)->Arg(6)->Arg(12);

void BM_Classify(benchmark::State& state) {
  const SolitonSpec spec{Matrix{{1.0, 1.0}, {0.0, 1.0}}, Vector::zero(2), Vector{1.0, 1.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(spec));
  }
}
BENCHMARK(BM_Classify);

void BM_CurveResidualGrid(benchmark::State& state) {
  const SolitonSpec spec{dense_matrix(2, 45), Vector{0.5, -0.25}, Vector{1.0, 0.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_curve_soliton(spec, 0.5));
  }
}
BENCHMARK(BM_CurveResidualGrid);

void BM_NumericCurvature(benchmark::State& state) {
  const SolitonSpec spec{Matrix{{1.0, 1.0}, {0.0, 1.0}}, Vector::zero(2), Vector{1.0, 1.0}};
  const CurveSamples samples = sample(spec, -1.0, 1.0, 65);
  for (auto _ : state) {
    benchmark::DoNotOptimize(numeric_equi_affine_curvature(samples));
  }
}
BENCHMARK(BM_NumericCurvature);

}  // namespace

BENCHMARK_MAIN();
