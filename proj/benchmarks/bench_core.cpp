#include <benchmark/benchmark.h>

#include <random>

#include "steinlab/functorcat.hpp"
#include "steinlab/modtools.hpp"
#include "steinlab/schurfun.hpp"
#include "steinlab/steinberg.hpp"

using namespace steinlab;
using la::Field;
using la::Matrix;

namespace {

Matrix random_matrix(const Field& k, std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> codes(rows * cols);
  for (auto& c : codes) c = static_cast<std::uint32_t>(rng() % k.order());
  return Matrix::from_codes(k, rows, cols, std::move(codes));
}

void rref_finite(benchmark::State& state) {
  const Field k = Field::gf(3, 2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = random_matrix(k, n, n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(la::rref(m));
}
BENCHMARK(rref_finite)->Arg(16)->Arg(64)->Arg(128);

void spin_tensor_cube(benchmark::State& state) {
  const Field k = Field::gf(2, 2);
  const auto rep = schur::socle_simple(sym::Partition{2, 1}, 2, Field::gf(2)).extend(k).module();
  const auto t = meataxe::tensor(meataxe::tensor(rep, rep), rep);
  const Matrix seed = Matrix::unit_row(k, t.dim(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(meataxe::spin(t, seed));
}
BENCHMARK(spin_tensor_cube);

void schur_value_rationals(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(schur::schur_value(sym::Partition{2, 1, 1}, n, Field::rationals()));
}
BENCHMARK(schur_value_rationals)->DenseRange(2, 3);

void classify_gl2(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(steinberg::classify(2, q));
}
BENCHMARK(classify_gl2)->Arg(2)->Arg(4);

void lines_extension(benchmark::State& state) {
  const auto delta = functor::delta_module(ring::FiniteRing::galois(2), 1, Field::gf(3));
  const auto m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(functor::intermediate_extension(delta, m));
}
BENCHMARK(lines_extension)->DenseRange(2, 4);

}  // namespace

BENCHMARK_MAIN();
