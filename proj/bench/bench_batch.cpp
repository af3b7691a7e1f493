// Serial reference vs OpenMP kernels on synthetic study batches.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "jzsbf/batch.hpp"

using namespace jzsbf;

namespace {

std::vector<StudyRecord> make_records(std::size_t count) {
    std::vector<StudyRecord> records;
    for (std::size_t i = 0; i < count; ++i) {
        StudyRecord r;
        r.trial = "S";
        r.arm = std::to_string(i);
        r.n = 20 + static_cast<std::int64_t>(i % 50) * 20;
        r.t_value = 0.1 * static_cast<double>(i % 40);
        records.push_back(r);
    }
    return records;
}

std::vector<batch::FormCase> make_cases(std::size_t count) {
    std::vector<batch::FormCase> cases;
    for (std::size_t i = 0; i < count; ++i) {
        const double n = 10.0 + static_cast<double>(i % 30) * 20.0;
        const double t = 0.125 * static_cast<double>(i % 40);
        cases.push_back({t, TTestSummary{t, n - 1.0, 2.0 * n - 2.0, n / 2.0}, kDefaultCauchyScale});
    }
    return cases;
}

void BM_AnalyzeSerial(benchmark::State& state) {
    const auto records = make_records(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch::analyze_serial(records, AnalysisConfig{}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AnalyzeParallel(benchmark::State& state) {
    const auto records = make_records(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch::analyze(records, AnalysisConfig{}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = batch::max_threads();
}

void BM_CompareFormsSerial(benchmark::State& state) {
    const auto cases = make_cases(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch::compare_forms_serial(cases));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CompareFormsParallel(benchmark::State& state) {
    const auto cases = make_cases(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch::compare_forms(cases));
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = batch::max_threads();
}

}  // namespace

BENCHMARK(BM_AnalyzeSerial)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeParallel)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CompareFormsSerial)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CompareFormsParallel)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
