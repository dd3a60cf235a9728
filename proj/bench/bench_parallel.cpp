// Serial reference against the OpenMP kernels. Run with OMP_NUM_THREADS set
// to the thread count of interest; on a single core the two should match.

#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "lerwkit/five_point.hpp"
#include "lerwkit/lattice.hpp"
#include "lerwkit/lerw.hpp"

using namespace lerwkit;

namespace {

CrossingConfig disk_config(int n) {
  auto a = std::make_shared<const LatticeDomain>(lattice_disk(n));
  constexpr double deg = std::numbers::pi / 180;
  return make_crossing_config(a, {snap_to_boundary(*a, 60 * deg), snap_to_boundary(*a, 210 * deg)},
                              {snap_to_boundary(*a, 30 * deg), snap_to_boundary(*a, 240 * deg)});
}

void BM_crossing_mc_serial(benchmark::State& state) {
  const auto cfg = disk_config(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crossing_probability_mc_serial(cfg, 200000, 1));
  state.SetItemsProcessed(state.iterations() * 200000);
}

void BM_crossing_mc_parallel(benchmark::State& state) {
  const auto cfg = disk_config(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crossing_probability_mc(cfg, 200000, 1));
  state.SetItemsProcessed(state.iterations() * 200000);
}

std::vector<int> sources(const LatticeDomain& a, std::size_t count) {
  std::vector<int> s;
  const std::size_t stride = std::max<std::size_t>(1, a.size() / count);
  for (std::size_t i = 0; i < a.size() && s.size() < count; i += stride) s.push_back(int(i));
  return s;
}

void BM_green_columns_serial(benchmark::State& state) {
  const FivePointSolver solver(std::make_shared<const LatticeDomain>(lattice_disk(int(state.range(0)))));
  const auto src = sources(solver.domain(), 64);
  for (auto _ : state) benchmark::DoNotOptimize(solver.green_columns_serial(src));
  state.SetItemsProcessed(state.iterations() * std::int64_t(src.size()));
}

void BM_green_columns_parallel(benchmark::State& state) {
  const FivePointSolver solver(std::make_shared<const LatticeDomain>(lattice_disk(int(state.range(0)))));
  const auto src = sources(solver.domain(), 64);
  for (auto _ : state) benchmark::DoNotOptimize(solver.green_columns(src));
  state.SetItemsProcessed(state.iterations() * std::int64_t(src.size()));
}

}  // namespace

BENCHMARK(BM_crossing_mc_serial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_crossing_mc_parallel)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_green_columns_serial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_green_columns_parallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
