#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "herglotz/kernels.hpp"

namespace {

std::vector<double> sample(std::size_t n) {
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = std::sin(3.0 * i / n) + 0.5;
  return f;
}

template <void (*Kernel)(std::span<const double>, double, double, std::span<double>)>
void run(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = sample(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    Kernel(f, 1.0 / (n - 1), 0.5, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(run<herglotz::kernels::serial::left_integral>)->Name("left_integral/serial")->RangeMultiplier(2)->Range(1 << 10, 1 << 14)->Complexity();
BENCHMARK(run<herglotz::kernels::parallel::left_integral>)->Name("left_integral/parallel")->RangeMultiplier(2)->Range(1 << 10, 1 << 14)->Complexity()->UseRealTime();
BENCHMARK(run<herglotz::kernels::serial::left_l1>)->Name("left_l1/serial")->RangeMultiplier(2)->Range(1 << 10, 1 << 14)->Complexity();
BENCHMARK(run<herglotz::kernels::parallel::left_l1>)->Name("left_l1/parallel")->RangeMultiplier(2)->Range(1 << 10, 1 << 14)->Complexity()->UseRealTime();

BENCHMARK_MAIN();
