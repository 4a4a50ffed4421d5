#include <benchmark/benchmark.h>

#include <cmath>

#include "qssa/integrator.hpp"
#include "qssa/lambert_w.hpp"

namespace {

qssa::ReactionConfig config(double s0, double e0) {
  qssa::ReactionConfig c;
  c.rates = {1.0, 100.0, 100.0};
  c.s0 = s0;
  c.e0 = e0;
  return c;
}

void BM_IntegrateFull(benchmark::State& state) {
  const auto c = config(200.0, std::pow(10.0, -static_cast<double>(state.range(0))));
  for (auto _ : state) {
    auto tr = qssa::integrate_full(c);
    benchmark::DoNotOptimize(tr.size());
  }
}
BENCHMARK(BM_IntegrateFull)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_FindCrossing(benchmark::State& state) {
  const auto c = config(200.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(qssa::find_crossing(c).t_cross);
}
BENCHMARK(BM_FindCrossing)->Unit(benchmark::kMicrosecond);

void BM_LambertW0(benchmark::State& state) {
  double x = 1e-12;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qssa::lambert_w0(x));
    x = x < 1e6 ? x * 1.1 : 1e-12;
  }
}
BENCHMARK(BM_LambertW0);

}  // namespace
BENCHMARK_MAIN();
