#include <benchmark/benchmark.h>

#include "cpcav/profile.hpp"

using namespace cpcav;

namespace {

const MirrorSpec kGold = HalfSpace{Drude{1.37e16, 5.32e13}};
const ThermalEnvironment kRoom{300.0};

struct Case {
  Geometry geometry;
  std::vector<double> z;
};

Case gold_cavity(int points) {
  const double a = resonance_width(builtin_lih().transitions[0], 2);
  return {CavityGeometry{a, kGold}, linear_grid(-0.49 * a, 0.49 * a, points)};
}

void BM_PotentialSerial(benchmark::State& state) {
  const Case c = gold_cavity(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(potential_profile_serial(c.z, builtin_lih(), c.geometry, kRoom));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PotentialParallel(benchmark::State& state) {
  const Case c = gold_cavity(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(potential_profile(c.z, builtin_lih(), c.geometry, kRoom, {}, 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HeatingSerial(benchmark::State& state) {
  const Case c = gold_cavity(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(heating_profile_serial(c.z, builtin_lih(), c.geometry, kRoom));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HeatingParallel(benchmark::State& state) {
  const Case c = gold_cavity(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(heating_profile(c.z, builtin_lih(), c.geometry, kRoom, {}, 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_PotentialSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PotentialParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HeatingSerial)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HeatingParallel)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
