#include <benchmark/benchmark.h>

#include "extremal/approx.hpp"
#include "extremal/domain.hpp"
#include "extremal/serrin.hpp"

namespace {

void BM_MinimaxDisk(benchmark::State& state) {
  const auto domain = extremal::make_disk(1.0);
  const auto basis =
      extremal::AnalyticBasis::for_domain(domain, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto result = extremal::solve_minimax(domain, basis, 4 * basis.size() + 64);
    benchmark::DoNotOptimize(result.lambda_hat);
  }
}
BENCHMARK(BM_MinimaxDisk)->Arg(8)->Arg(16);

void BM_MinimaxAnnulus(benchmark::State& state) {
  const auto domain = extremal::make_annulus(1.0, 0.5);
  const auto basis =
      extremal::AnalyticBasis::for_domain(domain, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto result = extremal::solve_minimax(domain, basis, 2 * basis.size() + 64);
    benchmark::DoNotOptimize(result.lambda_hat);
  }
}
BENCHMARK(BM_MinimaxAnnulus)->Arg(8)->Arg(16);

void BM_SerrinAnnulus(benchmark::State& state) {
  const auto domain = extremal::make_annulus(1.0, 0.5);
  for (auto _ : state) {
    auto solution = extremal::solve_neumann(domain, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(solution.neumann_residual());
  }
}
BENCHMARK(BM_SerrinAnnulus)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
