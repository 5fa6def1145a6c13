// Serial reference vs OpenMP kernels on the same inputs.

#include <benchmark/benchmark.h>

#include <numbers>

#include "sectorlab/criteria.hpp"
#include "sectorlab/density.hpp"
#include "sectorlab/dynamics.hpp"
#include "sectorlab/weights.hpp"

using namespace sectorlab;

namespace {

const Sector kSector(std::numbers::pi / 4.0);

Execution policy(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_WeightIntegral(benchmark::State& state) {
  const auto v = Weight::poly_decay();
  for (auto _ : state) {
    auto wi = weight_integral(v, kSector, 60.0, TailModel::power, {}, policy(state));
    benchmark::DoNotOptimize(wi.truncated);
  }
}

void BM_OrbitProfile(benchmark::State& state) {
  const LpSpace space(Weight::exp_decay(), 2.0, kSector);
  const auto f = SectorFunction::indicator(annuli_union(IntegerSet::naturals(), 20, kSector));
  OrbitOptions opts;
  opts.resolution = {24, 8, 0.05};
  for (auto _ : state) {
    auto grid = orbit_profile(space, f, 15.0, opts, policy(state));
    benchmark::DoNotOptimize(grid.norms().data());
  }
}

void BM_TranslatedDensity(benchmark::State& state) {
  const auto A = annuli_union(IntegerSet::evens(), 60, kSector);
  const auto set = translate_set(A, kSector, {3.0, 1.0}, Shift::minus);
  const auto schedule = RadiusSchedule::geometric_to(1.0, 1.25, 50.0);
  for (auto _ : state) {
    auto p = density_profile(set, kSector, schedule, {}, policy(state));
    benchmark::DoNotOptimize(p.ratios.data());
  }
}

void BM_DcSeries(benchmark::State& state) {
  const auto v = Weight::poly_decay();
  for (auto _ : state) {
    auto s = dc_sufficient_series(v, kSector, IntegerSet::naturals(), 2000, {}, policy(state));
    benchmark::DoNotOptimize(s.partial_sums.data());
  }
}

}  // namespace

BENCHMARK(BM_WeightIntegral)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitProfile)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TranslatedDensity)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DcSeries)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
