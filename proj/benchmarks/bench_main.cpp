#include <benchmark/benchmark.h>

#include <random>

#include "nielsen/boundary.hpp"
#include "nielsen/invariants.hpp"
#include "nielsen/properties.hpp"

using namespace nielsen;

namespace {

Word random_word(std::mt19937_64& rng, std::size_t len) {
  std::uniform_int_distribution<int> d(0, 3);
  Word w;
  while (w.size() < len) {
    const int r = d(rng);
    w.push_back(gen_letter(r / 2, r % 2 == 1));
  }
  return w;
}

Endomorphism ex4() { return Endomorphism(Basis::standard(2), {{-1}, {-1, 2, 2}}); }

void BM_Reduce(benchmark::State& state) {
  std::mt19937_64 rng(1);
  Word raw = random_word(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reduce(raw));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Reduce)->Range(64, 1 << 16);

void BM_ImageOf(benchmark::State& state) {
  std::mt19937_64 rng(2);
  Word w = reduce(random_word(rng, static_cast<std::size_t>(state.range(0))));
  const Endomorphism phi = ex4();
  for (auto _ : state) benchmark::DoNotOptimize(image_of(phi, w));
}
BENCHMARK(BM_ImageOf)->Range(64, 1 << 14);

void BM_IsInjective(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<Endomorphism> maps;
  for (int i = 0; i < 64; ++i) maps.push_back(random_endo(rng, 2, 4));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(is_injective(maps[i++ % maps.size()]));
}
BENCHMARK(BM_IsInjective);

void BM_MorphicPrefix(benchmark::State& state) {
  const Endomorphism phi = ex4();
  for (auto _ : state) {
    auto ray = InfiniteWord::morphic({-2}, phi);
    benchmark::DoNotOptimize(ray.prefix(static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_MorphicPrefix)->Range(16, 4096);

void BM_AnalyzeEx4(benchmark::State& state) {
  const GraphMap f = rose_map(ex4());
  for (auto _ : state) benchmark::DoNotOptimize(analyze(f));
}
BENCHMARK(BM_AnalyzeEx4)->Unit(benchmark::kMillisecond);

void BM_PropertySuite(benchmark::State& state) {
  AnalysisOptions o;
  o.attracting = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_property_suite(static_cast<std::size_t>(state.range(0)), 20240601, 4, o));
}
BENCHMARK(BM_PropertySuite)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
