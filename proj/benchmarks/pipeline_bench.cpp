#include <benchmark/benchmark.h>

#include <map>
#include <sstream>

#include "pubrank/analysis.hpp"
#include "pubrank/indicators.hpp"
#include "pubrank/ranking.hpp"
#include "pubrank/report.hpp"
#include "pubrank/testkit/synth.hpp"

namespace {

using namespace pubrank;

/// Generated corpora are cached per size; generation is not what we measure.
const testkit::SynthOutput& corpus_of(std::int64_t items) {
  static std::map<std::int64_t, testkit::SynthOutput> cache;
  auto it = cache.find(items);
  if (it == cache.end()) {
    testkit::SynthParams params;
    params.seed = 42;
    params.publisher_count = 200;
    params.min_items_per_publisher = static_cast<std::size_t>(items / 200);
    params.max_items_per_publisher = static_cast<std::size_t>(items / 200);
    params.category_multiplicity = {0.85, 0.15};
    it = cache.emplace(items, testkit::generate_corpus(params, sample_taxonomy())).first;
  }
  return it->second;
}

void BM_Ingest(benchmark::State& state) {
  const auto& generated = corpus_of(state.range(0));
  for (auto _ : state) {
    std::istringstream in(generated.corpus_jsonl);
    benchmark::DoNotOptimize(ingest_corpus(in));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(generated.ledger.emitted_records));
}

void BM_Resolve(benchmark::State& state) {
  const auto& generated = corpus_of(state.range(0));
  auto registry = generated.registry();
  auto taxonomy = sample_taxonomy();
  auto filtered = filter_corpus(generated.ingest().items, registry);
  for (auto _ : state) {
    benchmark::DoNotOptimize(AnalysisCorpus::build(filtered, registry, taxonomy));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(filtered.size()));
}

void BM_Indicators(benchmark::State& state) {
  const auto& generated = corpus_of(state.range(0));
  auto registry = generated.registry();
  auto taxonomy = sample_taxonomy();
  auto filtered = filter_corpus(generated.ingest().items, registry);
  auto corpus = AnalysisCorpus::build(filtered, registry, taxonomy);
  for (auto _ : state) {
    auto baselines = compute_baselines(corpus);
    benchmark::DoNotOptimize(compute_all_indicators(corpus, baselines));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.items().size()));
}

void BM_RankAndRender(benchmark::State& state) {
  const auto& generated = corpus_of(state.range(0));
  auto registry = generated.registry();
  auto taxonomy = sample_taxonomy();
  auto filtered = filter_corpus(generated.ingest().items, registry);
  auto corpus = AnalysisCorpus::build(filtered, registry, taxonomy);
  auto baselines = compute_baselines(corpus);
  for (auto _ : state) {
    RankingEngine engine(corpus, registry, taxonomy, baselines);
    std::size_t bytes = 0;
    for (const auto& table : engine.build_all_rankings({})) {
      bytes += render_ranking(table, ExportFormat::Csv).size();
    }
    benchmark::DoNotOptimize(bytes);
  }
}

}  // namespace

BENCHMARK(BM_Ingest)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Resolve)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Indicators)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankAndRender)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
