#include <benchmark/benchmark.h>

#include "maskclaw/arbiter.hpp"
#include "maskclaw/benchgen.hpp"
#include "maskclaw/evidence.hpp"
#include "maskclaw/evolve.hpp"
#include "maskclaw/redaction.hpp"
#include "maskclaw/rule_store.hpp"
#include "maskclaw/scenarios.hpp"
#include "maskclaw/textnorm.hpp"

namespace {

// Shared fixtures, built once. Benchmarks measure the hot paths a mediation
// round trips through: normalize, retrieve, arbitrate, redact.

const maskclaw::Dataset& bench_dataset() {
  static const maskclaw::Dataset ds = [] {
    maskclaw::BenchSpec spec;
    spec.total = 24;
    spec.mask = 10;
    spec.allow = 10;
    spec.ask = 4;
    spec.seed = 7;
    return maskclaw::generate_bench(spec);
  }();
  return ds;
}

const maskclaw::RuleStore& default_store() {
  static const maskclaw::RuleStore store = maskclaw::load_default_rules().store;
  return store;
}

void BM_normalize_text(benchmark::State& state) {
  const std::string s = "Card NO: 6222-0212-3456-7890, Room 4B, Oak St.  ６２";
  for (auto _ : state) {
    benchmark::DoNotOptimize(maskclaw::normalize_text(s));
  }
}
BENCHMARK(BM_normalize_text);

void BM_ocr_coverage(benchmark::State& state) {
  std::vector<maskclaw::EvidenceItem> ev;
  for (int i = 0; i < 12; ++i)
    ev.push_back({"line with digits 1380013800" + std::to_string(i), "free_text", "",
                  1.0, std::nullopt});
  const std::vector<std::string> gold = {"13800138001", "13800138005", "absent"};
  for (auto _ : state) {
    benchmark::DoNotOptimize(maskclaw::ocr_coverage(gold, ev));
  }
}
BENCHMARK(BM_ocr_coverage);

void BM_retrieve_topk(benchmark::State& state) {
  const auto& ds = bench_dataset();
  maskclaw::MockOcrProvider clean;
  maskclaw::EvidenceSet ev = maskclaw::extract_evidence(ds.scenes[0], clean);
  maskclaw::RetrievalQuery q = maskclaw::build_query(ds.instances[0], ev.items);
  for (auto _ : state) {
    benchmark::DoNotOptimize(maskclaw::retrieve_topk(default_store(), q));
  }
}
BENCHMARK(BM_retrieve_topk);

void BM_arbitrate(benchmark::State& state) {
  const auto& ds = bench_dataset();
  maskclaw::MockOcrProvider clean;
  maskclaw::EvidenceSet ev = maskclaw::extract_evidence(ds.scenes[0], clean);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        maskclaw::arbitrate(ds.instances[0], ev, default_store()));
  }
}
BENCHMARK(BM_arbitrate);

void BM_redact_scene(benchmark::State& state) {
  const auto& scene = bench_dataset().scenes[0];
  maskclaw::RedactionRequest req;
  req.target_field_types = maskclaw::default_sensitive_field_types();
  req.mode = maskclaw::RedactionMode::recall_first;
  for (auto _ : state) {
    auto plan = maskclaw::select_regions(scene, req);
    benchmark::DoNotOptimize(maskclaw::apply_redaction(scene, plan));
  }
}
BENCHMARK(BM_redact_scene);

void BM_evolve_20_iters(benchmark::State& state) {
  const maskclaw::ScenarioSpec& scenario = maskclaw::builtin_scenario("icloud_cleanup");
  maskclaw::EvolveOptions opts;
  opts.iterations = 20;
  for (auto _ : state) {
    benchmark::DoNotOptimize(maskclaw::evolve(scenario, opts));
  }
}
BENCHMARK(BM_evolve_20_iters);

}  // namespace

BENCHMARK_MAIN();
