// Serial reference path against the OpenMP path of the search.
#include <benchmark/benchmark.h>

#include "latpack/catalog.hpp"
#include "latpack/search.hpp"

using namespace latpack;

namespace {

const char* const kSolids[] = {"octahedron", "truncated_octahedron", "truncated_cube"};

void BM_densest_packing(benchmark::State& state) {
  const Polytope p = make_solid(kSolids[state.range(0)]);
  SearchOptions o;
  o.parallel = state.range(1) != 0;
  double density = 0.0;
  for (auto _ : state) {
    density = densest_packing(p, o).density;
    benchmark::DoNotOptimize(density);
  }
  state.SetLabel(std::string(kSolids[state.range(0)]) + (o.parallel ? " openmp" : " serial"));
  state.counters["density"] = density;
}

void BM_triple_set(benchmark::State& state) {
  const Polytope p0 = difference_body(make_solid(kSolids[state.range(0)]));
  for (auto _ : state) benchmark::DoNotOptimize(build_triple_set(p0, 1).size());
  state.SetLabel(kSolids[state.range(0)]);
}

}  // namespace

BENCHMARK(BM_densest_packing)->ArgsProduct({{0, 1, 2}, {0, 1}})->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_triple_set)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
