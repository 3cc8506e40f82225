#include <benchmark/benchmark.h>

#include "hypcells/kl.hpp"
#include "hypcells/render.hpp"

using namespace hypcells;

namespace {

const CoxeterGroup& w237() {
  static const CoxeterGroup g(Presentation::load(std::string(HYPCELLS_CONFIG_DIR) + "/w237.json"));
  return g;
}

const CoxeterGroup& w2224() {
  static const CoxeterGroup g(Presentation::load(std::string(HYPCELLS_CONFIG_DIR) + "/w2224.json"));
  return g;
}

Execution mode_of(const benchmark::State& state) { return state.range(1) ? Execution::Parallel : Execution::Serial; }

void BM_KLFill237(benchmark::State& state) {
  const ElementBall ball(w237(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    KLTable table(ball, mode_of(state));
    benchmark::DoNotOptimize(table.size());
  }
  state.counters["elements"] = static_cast<double>(ball.size());
}

void BM_KLFill2224(benchmark::State& state) {
  const ElementBall ball(w2224(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    KLTable table(ball, mode_of(state));
    benchmark::DoNotOptimize(table.size());
  }
  state.counters["elements"] = static_cast<double>(ball.size());
}

void BM_InversionCheck(benchmark::State& state) {
  const ElementBall ball(w237(), static_cast<std::size_t>(state.range(0)));
  const KLTable table(ball);
  for (auto _ : state) benchmark::DoNotOptimize(table.check_inversion_identity(mode_of(state)));
}

void BM_Tile(benchmark::State& state) {
  const ElementBall ball(w2224(), static_cast<std::size_t>(state.range(0)));
  const PolygonRealization poly = realize_polygon(w2224().presentation());
  for (auto _ : state) benchmark::DoNotOptimize(tile(ball, poly, mode_of(state)).size());
  state.counters["tiles"] = static_cast<double>(ball.size());
}

}  // namespace

// Second argument: 0 serial reference, 1 OpenMP.
BENCHMARK(BM_KLFill237)->ArgsProduct({{10, 12}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KLFill2224)->ArgsProduct({{8, 9}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InversionCheck)->ArgsProduct({{10}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Tile)->ArgsProduct({{10, 12}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
