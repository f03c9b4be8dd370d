#include <benchmark/benchmark.h>

#include <random>

#include "actimetrics/activity.hpp"
#include "actimetrics/analysis.hpp"
#include "actimetrics/combine.hpp"
#include "actimetrics/synth.hpp"

using namespace actimetrics;

namespace {

const RawRecording& day() {
    static const RawRecording r = [] {
        SyntheticSpec spec;
        spec.duration_s = 24 * 3600.0;
        return synthesize(spec, "bench");
    }();
    return r;
}

const DatasetMap& day_maps() {
    static const DatasetMap m = preprocess_all(day());
    return m;
}

void BM_DesignFilter(benchmark::State& state) {
    auto spec = FilterSpec::default_bandpass();
    spec.order = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(design_filter(spec));
}
BENCHMARK(BM_DesignFilter)->Arg(3)->Arg(30);

void BM_FilterDay(benchmark::State& state) {
    auto spec = FilterSpec::default_bandpass();
    spec.phase = state.range(0) ? FilterPhase::ZeroPhase : FilterPhase::Causal;
    const auto f = design_filter(spec);
    const auto& rec = day();
    for (auto _ : state) benchmark::DoNotOptimize(filter_samples(rec.x, f));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(day().size()));
}
BENCHMARK(BM_FilterDay)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PreprocessDay(benchmark::State& state) {
    const auto& rec = day();
    for (auto _ : state) benchmark::DoNotOptimize(preprocess_all(rec));
}
BENCHMARK(BM_PreprocessDay)->Unit(benchmark::kMillisecond);

void BM_ZcmEpoch(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    std::vector<double> v(600);
    for (double& x : v) x = d(rng);
    for (auto _ : state) benchmark::DoNotOptimize(zcm(v, 0.1));
}
BENCHMARK(BM_ZcmEpoch);

void BM_Metric(benchmark::State& state) {
    const auto variants = catalog();
    const auto& v = variants.at(static_cast<std::size_t>(state.range(0)));
    state.SetLabel(v.label());
    const auto& maps = day_maps();
    for (auto _ : state) benchmark::DoNotOptimize(compute_activity(v, maps, 60.0));
}
BENCHMARK(BM_Metric)->Arg(0)->Arg(4)->Arg(8)->Arg(16)->Arg(18)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_FullCatalogDay(benchmark::State& state) {
    const auto variants = catalog();
    const auto& maps = day_maps();
    for (auto _ : state) {
        for (const auto& v : variants) benchmark::DoNotOptimize(compute_activity(v, maps, 60.0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(variants.size()));
}
BENCHMARK(BM_FullCatalogDay)->Unit(benchmark::kMillisecond);

void BM_Psd(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> d;
    std::vector<double> v(static_cast<std::size_t>(state.range(0)));
    for (double& x : v) x = d(rng);
    for (auto _ : state) benchmark::DoNotOptimize(psd(v, 1.0 / 60.0));
}
BENCHMARK(BM_Psd)->Arg(1440)->Arg(14400);

void BM_Pearson(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> d;
    std::vector<double> a(14400), b(14400);
    for (double& x : a) x = d(rng);
    for (double& x : b) x = d(rng);
    for (auto _ : state) benchmark::DoNotOptimize(pearson(a, b));
}
BENCHMARK(BM_Pearson);

}  // namespace
BENCHMARK_MAIN();
