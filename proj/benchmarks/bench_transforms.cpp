#include "tfc/imaging.hpp"
#include "tfc/raster.hpp"
#include "tfc/rng.hpp"
#include "tfc/signal.hpp"
#include "tfc/transforms.hpp"
#include "tfc/waveforms.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

tfc::Signal chirp(std::size_t n, double fs) {
    tfc::Signal s;
    s.fs = fs;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        const double ph = 2.0 * M_PI * (0.05 * fs * t + 0.2 * fs * t * t);
        s.samples.emplace_back(std::cos(ph), std::sin(ph));
    }
    return s;
}

tfc::SeriesWindow series(std::size_t n) {
    tfc::SeriesWindow w;
    w.fs = 1000.0;
    tfc::CounterRng rng(3);
    for (std::size_t i = 0; i < n; ++i) w.values.push_back(rng.next_gaussian());
    return w;
}

void bm_stft(benchmark::State& state) {
    const auto s = chirp(static_cast<std::size_t>(state.range(0)), 100e3);
    for (auto _ : state)
        benchmark::DoNotOptimize(tfc::stft(s, tfc::WindowSpec::hann(256), 64, 512));
}
BENCHMARK(bm_stft)->Arg(1024)->Arg(4096);

void bm_fsst(benchmark::State& state) {
    const auto s = chirp(static_cast<std::size_t>(state.range(0)), 100e3);
    for (auto _ : state)
        benchmark::DoNotOptimize(tfc::fsst(s, tfc::WindowSpec::gauss(256), 512));
}
BENCHMARK(bm_fsst)->Arg(1024)->Arg(4096);

void bm_wvd(benchmark::State& state) {
    const auto s = chirp(static_cast<std::size_t>(state.range(0)), 100e3);
    for (auto _ : state) benchmark::DoNotOptimize(tfc::wvd(s));
}
BENCHMARK(bm_wvd)->Arg(256)->Arg(1024);

void bm_spwvd(benchmark::State& state) {
    const auto s = chirp(static_cast<std::size_t>(state.range(0)), 100e3);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            tfc::spwvd(s, tfc::WindowSpec::hann(33), tfc::WindowSpec::hann(129)));
}
BENCHMARK(bm_spwvd)->Arg(256)->Arg(1024);

void bm_cwd(benchmark::State& state) {
    const auto s = chirp(static_cast<std::size_t>(state.range(0)), 100e3);
    for (auto _ : state) benchmark::DoNotOptimize(tfc::cwd(s, 1.0));
}
BENCHMARK(bm_cwd)->Arg(256)->Arg(512);

void bm_cwt(benchmark::State& state) {
    const auto s = chirp(static_cast<std::size_t>(state.range(0)), 100e3);
    for (auto _ : state)
        benchmark::DoNotOptimize(tfc::cwt(s, 64, 1e3, 45e3));
}
BENCHMARK(bm_cwt)->Arg(1024)->Arg(4096);

void bm_rp(benchmark::State& state) {
    const auto w = series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(tfc::recurrence_plot(w, tfc::RpMode::distance));
}
BENCHMARK(bm_rp)->Arg(128)->Arg(512);

void bm_gadf(benchmark::State& state) {
    const auto w = series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(tfc::gadf(w));
}
BENCHMARK(bm_gadf)->Arg(128)->Arg(512);

void bm_rasterize(benchmark::State& state) {
    const auto m = tfc::stft(chirp(4096, 100e3), tfc::WindowSpec::hann(256), 64, 512);
    tfc::RasterPolicy policy;
    for (auto _ : state) benchmark::DoNotOptimize(tfc::rasterize(m, policy));
}
BENCHMARK(bm_rasterize);

void bm_synthesize(benchmark::State& state) {
    const tfc::Catalog catalog = tfc::waveform_catalog();
    const auto& spec = catalog.by_label("P3");
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(tfc::synthesize(spec, 100e3, seed++));
}
BENCHMARK(bm_synthesize);

} // namespace

BENCHMARK_MAIN();
