#include <benchmark/benchmark.h>

#include "extremal/domain.hpp"
#include "extremal/quaddiff.hpp"

namespace {

void BM_TraceCircleClosure(benchmark::State& state) {
  const auto qd = extremal::QuadraticDifferential::rational({-1.0}, {0.0, 0.0, 1.0});
  auto opt = extremal::trace_options_for_rect({-2.0, -2.0}, {2.0, 2.0});
  for (auto _ : state) {
    auto traj = extremal::trace_trajectory(qd, extremal::cplx(1.0, 0.0),
                                           extremal::TrajectoryFamily::kHorizontal,
                                           extremal::cplx(0.0, 1.0), opt);
    benchmark::DoNotOptimize(traj.closure_error);
  }
}
BENCHMARK(BM_TraceCircleClosure);

void BM_StokesGraphDisk(benchmark::State& state) {
  const auto domain = extremal::make_disk(1.0);
  const auto qd = extremal::QuadraticDifferential::polynomial({0.0, 1.0});
  for (auto _ : state) {
    auto graph = extremal::build_stokes_graph(domain, qd);
    benchmark::DoNotOptimize(graph.arcs.size());
  }
}
BENCHMARK(BM_StokesGraphDisk);

void BM_FindZeros(benchmark::State& state) {
  const auto qd = extremal::QuadraticDifferential::polynomial({-1.0, 0.0, 1.0});
  for (auto _ : state) {
    auto zeros = extremal::find_zeros(qd, {-2.0, -2.0}, {2.0, 2.0});
    benchmark::DoNotOptimize(zeros.size());
  }
}
BENCHMARK(BM_FindZeros);

void BM_OdeSolve(benchmark::State& state) {
  const auto qd = extremal::QuadraticDifferential::rational({-0.5}, {0.0, 0.0, 1.0});
  std::vector<extremal::cplx> path;
  for (int i = 0; i <= 64; ++i)
    path.push_back(std::polar(0.5 + 0.5 * i / 64.0, 0.3 * i / 64.0));
  for (auto _ : state) {
    auto sol = extremal::ode_solve(qd, 0.5, path, 1.0, 0.5, 1e-4);
    benchmark::DoNotOptimize(sol.v.back());
  }
}
BENCHMARK(BM_OdeSolve);

}  // namespace
