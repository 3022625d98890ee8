#include <benchmark/benchmark.h>

#include "takagi/search.hpp"

using namespace takagi;

namespace {

void BM_exhaustive_reference(benchmark::State& state) {
  GroupSpec g = homocyclic(4, 2);
  GenSet s = standard_gens(g);
  for (auto _ : state) {
    SearchResult r = min_boundary_exhaustive_reference(g, s, 6);
    benchmark::DoNotOptimize(r.min_boundary);
  }
}
BENCHMARK(BM_exhaustive_reference)->Unit(benchmark::kMillisecond);

void BM_exhaustive_delta(benchmark::State& state) {
  GroupSpec g = homocyclic(4, 2);
  GenSet s = standard_gens(g);
  int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SearchResult r = min_boundary_exhaustive(g, s, 6, kDefaultEnumBudget, threads);
    benchmark::DoNotOptimize(r.min_boundary);
  }
}
BENCHMARK(BM_exhaustive_delta)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_exhaustive_reference_large(benchmark::State& state) {
  GroupSpec g = homocyclic(3, 3);
  GenSet s = standard_gens(g);
  for (auto _ : state) {
    SearchResult r = min_boundary_exhaustive_reference(g, s, 8);
    benchmark::DoNotOptimize(r.min_boundary);
  }
}
BENCHMARK(BM_exhaustive_reference_large)->Unit(benchmark::kMillisecond);

void BM_exhaustive_delta_large(benchmark::State& state) {
  GroupSpec g = homocyclic(3, 3);
  GenSet s = standard_gens(g);
  int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SearchResult r = min_boundary_exhaustive(g, s, 8, kDefaultEnumBudget, threads);
    benchmark::DoNotOptimize(r.min_boundary);
  }
}
BENCHMARK(BM_exhaustive_delta_large)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_heuristic(benchmark::State& state) {
  GroupSpec g = homocyclic(5, 2);
  GenSet s = standard_gens(g);
  for (auto _ : state) {
    SearchResult r = min_boundary_heuristic(g, s, 10, 20000, 1);
    benchmark::DoNotOptimize(r.min_boundary);
  }
}
BENCHMARK(BM_heuristic)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
