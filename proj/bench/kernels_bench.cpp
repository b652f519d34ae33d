#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "mmfista/blur.hpp"
#include "mmfista/kernels.hpp"
#include "mmfista/psf.hpp"

using namespace mmfista;

namespace {

std::vector<double> filled(std::size_t n, double offset) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(0.001 * static_cast<double>(i) + offset);
  return v;
}

template <double (*Dot)(std::span<const double>, std::span<const double>)>
void BM_Dot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = filled(n, 0.1), y = filled(n, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(Dot(x, y));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(2 * n * sizeof(double)));
}

template <void (*Soft)(std::span<const double>, double, std::span<double>)>
void BM_SoftThreshold(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto v = filled(n, 0.3);
  std::vector<double> out(n);
  for (auto _ : state) {
    Soft(v, 0.2, out);
    benchmark::ClobberMemory();
  }
}

template <void (*Vertical)(const SparseMatrix&, std::span<const double>, std::size_t, std::span<double>),
          void (*Horizontal)(const SparseMatrix&, std::span<const double>, std::size_t, std::span<double>)>
void BM_SeparableBlur(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SparseMatrix b = neumann_blur_factor(n, make_gaussian_psf(11, 2.0));
  const auto img = filled(n * n, 0.5);
  std::vector<double> tmp(n * n), out(n * n);
  for (auto _ : state) {
    Vertical(b, img, n, tmp);
    Horizontal(b, tmp, n, out);
    benchmark::ClobberMemory();
  }
}

}  // namespace

BENCHMARK(BM_Dot<kernels::serial::dot>)->Name("dot/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_Dot<kernels::omp::dot>)->Name("dot/omp")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_SoftThreshold<kernels::serial::soft_threshold>)->Name("soft_threshold/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_SoftThreshold<kernels::omp::soft_threshold>)->Name("soft_threshold/omp")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_SeparableBlur<kernels::serial::apply_vertical, kernels::serial::apply_horizontal>)
    ->Name("blur/serial")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(BM_SeparableBlur<kernels::omp::apply_vertical, kernels::omp::apply_horizontal>)
    ->Name("blur/omp")->RangeMultiplier(2)->Range(64, 512);

BENCHMARK_MAIN();
