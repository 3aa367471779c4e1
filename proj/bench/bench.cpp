#include "lk/forest_io.hpp"
#include "lk/homology.hpp"
#include "lk/lattice.hpp"
#include "lk/verify.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

namespace {

const lk::Forest& star() {
  static const lk::Forest f = lk::parse_forest(
      "vertex v0 unframed\nvertex c -3\nvertex a -2\nvertex b -2\nvertex d -4\n"
      "edge v0 a\nedge a c\nedge c b\nedge c d\n");
  return f;
}

void profiles_parallel(benchmark::State& state) {
  const int margin = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const lk::Lattice lat(star());
    benchmark::DoNotOptimize(lk::compute_profiles(lat, margin, 3));
  }
}

void profiles_reference(benchmark::State& state) {
  const int margin = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const lk::Lattice lat(star());
    benchmark::DoNotOptimize(lk::compute_profiles_reference(lat, margin, 3));
  }
}

void suite_threads(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(threads);
  lk::SuiteOptions o;
  o.instances = 20;
  o.margin = 1;
  for (auto _ : state) benchmark::DoNotOptimize(lk::run_suite("d_squared", o).checked);
  omp_set_num_threads(saved);
}

}  // namespace

BENCHMARK(profiles_parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(profiles_reference)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(suite_threads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
