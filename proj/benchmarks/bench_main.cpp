#include <benchmark/benchmark.h>

#include <random>

#include "affinedr/dr.hpp"
#include "affinedr/kron.hpp"
#include "affinedr/linalg.hpp"
#include "affinedr/poisson.hpp"
#include "affinedr/relation.hpp"
#include "affinedr/tridiag.hpp"

using namespace affinedr;

namespace {

DenseMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double v =
          2.0 * (static_cast<double>(rng() >> 11) / static_cast<double>(1ull << 53)) - 1.0;
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

}  // namespace

static void BM_TridiagInverseClosed(benchmark::State& state) {
  const TridiagToeplitz t{-1.0, 3.0, -1.0, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(invert_closed_form(t));
}
BENCHMARK(BM_TridiagInverseClosed)->Arg(8)->Arg(32)->Arg(128);

static void BM_TridiagInverseRecurrence(benchmark::State& state) {
  const TridiagToeplitz t{-1.0, 3.0, -1.0, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(invert_recurrence(t));
}
BENCHMARK(BM_TridiagInverseRecurrence)->Arg(8)->Arg(32)->Arg(128);

static void BM_TridiagInverseDenseLU(benchmark::State& state) {
  const DenseMatrix m = to_dense({-1.0, 3.0, -1.0, static_cast<std::size_t>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(dense_inverse(m));
}
BENCHMARK(BM_TridiagInverseDenseLU)->Arg(8)->Arg(32)->Arg(128);

static void BM_JacobiEigenvalues(benchmark::State& state) {
  const DenseMatrix s = random_symmetric(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_eigenvalues(s));
}
BENCHMARK(BM_JacobiEigenvalues)->Arg(8)->Arg(24)->Arg(64);

static void BM_HessenbergQrEigenvalues(benchmark::State& state) {
  std::mt19937_64 rng(9);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = 2.0 * (static_cast<double>(rng() >> 11) / static_cast<double>(1ull << 53)) - 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(m));
}
BENCHMARK(BM_HessenbergQrEigenvalues)->Arg(8)->Arg(24)->Arg(64);

static void BM_DrOperatorBuild(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const AffineRelation a =
      AffineRelation::from_linear_map(to_dense({-1.0, 2.0, -1.0, n}), Vector(n, 0.0));
  const AffineRelation b = AffineRelation::normal_cone(
      AffineSubspace::span({Vector(n, 1.0)}));
  for (auto _ : state) benchmark::DoNotOptimize(dr_operator(a, b));
}
BENCHMARK(BM_DrOperatorBuild)->Arg(4)->Arg(16)->Arg(48);

static void BM_PoissonSolve(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  PoissonProblem p = PoissonProblem::zero(n);
  std::fill(p.f.begin(), p.f.end(), 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_poisson_dr(p, 1e-8, 100000));
}
BENCHMARK(BM_PoissonSolve)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
