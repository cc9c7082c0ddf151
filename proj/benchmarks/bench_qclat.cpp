#include <benchmark/benchmark.h>

#include <numbers>

#include "qclat/criteria.hpp"
#include "qclat/extension.hpp"
#include "qclat/geometry.hpp"
#include "qclat/io.hpp"
#include "qclat/modulus.hpp"

using namespace qclat;

static void BM_RatioReport(benchmark::State& state) {
  const auto seq = random_M_sequence(3.0, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ratio_report(seq));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RatioReport)->RangeMultiplier(2)->Range(64, 2048)->Complexity(benchmark::oNSquared);

static void BM_ExtensionField(benchmark::State& state) {
  const auto map = pl_map(random_M_sequence(2.0, 256, 2));
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid g{-50, 50, 0.5, 50.5, n, n};
  ExtensionOptions o;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(extension_field(map, g, o));
}
BENCHMARK(BM_ExtensionField)->Arg(32)->Arg(64)->Arg(128);

static void BM_DilatationField(benchmark::State& state) {
  const auto map = pl_map(random_M_sequence(2.0, 256, 2));
  const Grid g{-50, 50, 0.5, 50.5, 64, 64};
  for (auto _ : state) benchmark::DoNotOptimize(dilatation_field(map, g));
}
BENCHMARK(BM_DilatationField);

static void BM_CondenserAnnulus(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  const auto g = make_condenser_grid(-4, 4, -4, 4, h);
  const auto spec = build_condenser(g, mask_disk(g, {0, 0}, 1.0), mask_outside_disk(g, {0, 0}, std::numbers::e));
  SolverOptions o;
  o.keep_fields = false;
  for (auto _ : state) {
    const auto est = grid_condenser_modulus(spec, o);
    state.counters["iterations"] = static_cast<double>(est.iterations);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(BM_CondenserAnnulus)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_PorosityGauss(benchmark::State& state) {
  const auto set = corpus_generate("gauss", {}, {-40, 40});
  const std::vector<Disk> disks{{{0.5, 0.5}, 10}, {{3.1, -2.2}, 5}};
  const auto res = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(porosity_estimate(set, disks, res, std::nullopt, {1}));
}
BENCHMARK(BM_PorosityGauss)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Turning(benchmark::State& state) {
  std::vector<Complex> v;
  for (int i = 0; i < state.range(0); ++i) v.emplace_back(i, (i % 7) * 0.1);
  const auto poly = build_polyline(v);
  for (auto _ : state) benchmark::DoNotOptimize(turning_constant(poly));
}
BENCHMARK(BM_Turning)->Arg(50)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
