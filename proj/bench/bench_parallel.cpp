// Serial references against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "apolar/apolarity.hpp"
#include "apolar/corpus.hpp"
#include "apolar/ideals.hpp"
#include "apolar/movefit.hpp"

using namespace apolar;

namespace {

Tensor load_tensor(const char* name) { return tensor_from_json(read_json_file(default_corpus_dir() / name)); }

SearchConfig config(long r, int width) {
  SearchConfig c;
  c.r = r;
  c.parallel_width = width;
  return c;
}

void BM_search_serial(benchmark::State& state) {
  const Tensor f = load_tensor("mono-11111.json");
  for (auto _ : state) benchmark::DoNotOptimize(search_serial(f, config(15, 1)).status);
}

void BM_search_parallel(benchmark::State& state) {
  const Tensor f = load_tensor("mono-11111.json");
  const int width = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search(f, config(15, width)).status);
}

void BM_catalecticant_serial(benchmark::State& state) {
  const Tensor f = load_tensor("mono-4443.json");
  for (auto _ : state) benchmark::DoNotOptimize(catalecticant_ranks_serial(f));
}

void BM_catalecticant_parallel(benchmark::State& state) {
  const Tensor f = load_tensor("mono-4443.json");
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(catalecticant_ranks(f, threads));
}

void BM_hilbert_serial(benchmark::State& state) {
  const AnyIdeal ideal = ideal_from_json(read_json_file(default_corpus_dir() / "ideal-border-rank-3.json"));
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_record_serial(ideal, 4));
}

void BM_hilbert_parallel(benchmark::State& state) {
  const AnyIdeal ideal = ideal_from_json(read_json_file(default_corpus_dir() / "ideal-border-rank-3.json"));
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_record(ideal, 4, threads));
}

}  // namespace

BENCHMARK(BM_search_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_search_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_catalecticant_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_catalecticant_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hilbert_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hilbert_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
