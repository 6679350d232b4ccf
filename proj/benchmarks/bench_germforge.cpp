#include <benchmark/benchmark.h>

#include "germforge/directions.hpp"
#include "germforge/infgen.hpp"
#include "germforge/pipeline.hpp"

using namespace germforge;

static void BM_Compose(benchmark::State& state) {
  Germ f = default_instance(static_cast<int>(state.range(0))).germ();
  for (auto _ : state) benchmark::DoNotOptimize(compose(f, f));
}
BENCHMARK(BM_Compose)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_Log(benchmark::State& state) {
  Germ f = default_instance(static_cast<int>(state.range(0))).germ();
  for (auto _ : state) benchmark::DoNotOptimize(log_germ(f));
}
BENCHMARK(BM_Log)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_PointBlowup(benchmark::State& state) {
  DivisorForm f = DivisorForm::of(default_instance(static_cast<int>(state.range(0))).germ());
  Chart c = Chart::point({Scalar(0), Scalar(1), Scalar(0)}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(lift(f, c));
}
BENCHMARK(BM_PointBlowup)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_CharacteristicDirections(benchmark::State& state) {
  Germ f = default_instance(8).germ();
  for (auto _ : state) benchmark::DoNotOptimize(characteristic_directions(f));
}
BENCHMARK(BM_CharacteristicDirections)->Unit(benchmark::kMillisecond);

static void BM_ResolvePi0(benchmark::State& state) {
  ExampleInstance inst = default_instance(pipeline_root_order(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(resolve_pi0(inst));
}
BENCHMARK(BM_ResolvePi0)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_TheoremB(benchmark::State& state) {
  ExampleInstance inst = generic_instance(pipeline_root_order(13));
  for (auto _ : state) benchmark::DoNotOptimize(theorem_b_report(inst, 8));
}
BENCHMARK(BM_TheoremB)->Unit(benchmark::kSecond)->Iterations(1);

BENCHMARK_MAIN();
