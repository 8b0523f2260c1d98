#include <benchmark/benchmark.h>

#include "porowave/greens.hpp"
#include "porowave/timeseries.hpp"

using namespace porowave;

namespace {

Problem section3() {
    const LayerProperties top{2200, 950, 0.4, 2, 6.9e9, 2e9, 6.7e9, 3e9};
    const LayerProperties bot{2650, 750, 0.2, 2, 37e9, 1.7e9, 2.2e9, 4.4e9};
    return make_problem(derive_layer(top), derive_layer(bot), 500, {-1e10, -1e10, 0});
}

const TimeGrid kGrid{1.0 / 2100.0, 1.4 / 600.0, 600};

void BM_GreenParallel(benchmark::State& st) {
    const Problem pb = section3();
    const Receiver r{400, 0, st.range(0) ? -533.0 : 533.0};
    for (auto _ : st) benchmark::DoNotOptimize(green_traces(pb, r, kGrid));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(kGrid.n));
}

void BM_GreenSerial(benchmark::State& st) {
    const Problem pb = section3();
    const Receiver r{400, 0, st.range(0) ? -533.0 : 533.0};
    for (auto _ : st) benchmark::DoNotOptimize(green_traces_serial(pb, r, kGrid));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(kGrid.n));
}

void BM_Convolve(benchmark::State& st) {
    Trace g{0.0, 1.0 / 3000.0, std::vector<double>(static_cast<std::size_t>(st.range(0)), 1.0)};
    const Wavelet w{15.0, WaveletKind::gaussian_d4};
    for (auto _ : st) benchmark::DoNotOptimize(convolve(g, w, {{0.1, 1.0, 0.0}}));
}

}  // namespace

BENCHMARK(BM_GreenParallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GreenSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Convolve)->Arg(4201)->Arg(16801)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
