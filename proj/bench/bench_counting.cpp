// Serial reference kernel against the OpenMP kernel on the same inputs.
#include "tsurf/counting.hpp"
#include "tsurf/counting_kernels.hpp"
#include "tsurf/cover.hpp"

#include <benchmark/benchmark.h>

namespace {

tsurf::Origami surface(int which) {
  if (which == 0) return tsurf::marked_torus(3, 1, 0);
  return tsurf::connected_sum(1, 3, tsurf::Rational(1, 2), tsurf::Rational(1, 2), false);
}

void run(benchmark::State& state, bool parallel) {
  tsurf::Origami o = surface(static_cast<int>(state.range(0)));
  std::vector<tsurf::Rational> Ts{tsurf::Rational(state.range(1))};
  for (auto _ : state) {
    auto r = parallel ? tsurf::count_kernel_parallel(o, tsurf::CountKind::cylinders, Ts, 1, 2)
                      : tsurf::count_kernel_reference(o, tsurf::CountKind::cylinders, Ts, 1, 2, nullptr);
    benchmark::DoNotOptimize(r);
  }
}

void BM_reference(benchmark::State& s) { run(s, false); }
void BM_parallel(benchmark::State& s) { run(s, true); }

}  // namespace

BENCHMARK(BM_reference)->Args({0, 20})->Args({0, 40})->Args({1, 20})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel)->Args({0, 20})->Args({0, 40})->Args({1, 20})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
