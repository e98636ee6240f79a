#include <benchmark/benchmark.h>

#include <random>

#include "extremal/curve.hpp"
#include "extremal/power_series.hpp"
#include "extremal/schwarz.hpp"

namespace {

extremal::PowerSeries random_series(int order, bool zero_constant) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  extremal::PowerSeries s(order);
  s[0] = zero_constant ? extremal::cplx(0.0) : extremal::cplx(1.2, 0.1);
  s[1] = extremal::cplx(1.0, 0.05);
  for (int k = 2; k <= order; ++k)
    s[k] = extremal::cplx(u(rng), u(rng)) / static_cast<double>(k);
  return s;
}

void BM_SeriesMultiply(benchmark::State& state) {
  const auto f = random_series(static_cast<int>(state.range(0)), false);
  const auto g = random_series(static_cast<int>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(f * g);
}
BENCHMARK(BM_SeriesMultiply)->Arg(48)->Arg(96);

void BM_SeriesCompose(benchmark::State& state) {
  const auto f = random_series(static_cast<int>(state.range(0)), false);
  const auto g = random_series(static_cast<int>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(f.compose(g));
}
BENCHMARK(BM_SeriesCompose)->Arg(48);

void BM_SeriesRevert(benchmark::State& state) {
  const auto f = random_series(static_cast<int>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(f.revert());
}
BENCHMARK(BM_SeriesRevert)->Arg(48);

void BM_SchwarzSeries(benchmark::State& state) {
  const auto curve = extremal::make_ellipse(1.0, 0.6);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        extremal::schwarz_series(curve, 1.1, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SchwarzSeries)->Arg(32)->Arg(48);

}  // namespace
