#include "moviedesc/rng.hpp"
#include "moviedesc/signal/segmenter.hpp"
#include "moviedesc/signal/spectrogram.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace moviedesc;

namespace {

signal::AudioTrack noise_track(double seconds, std::uint64_t seed, int rate = 16000) {
    Rng rng(seed);
    signal::AudioTrack t{std::vector<double>(static_cast<std::size_t>(seconds * rate)), rate};
    for (std::size_t i = 0; i < t.samples.size(); ++i)
        t.samples[i] = 0.2 * std::sin(2.0 * std::numbers::pi * 220.0 * static_cast<double>(i) / rate) +
                       0.05 * rng.gaussian();
    return t;
}

void BM_Spectrogram(benchmark::State &state) {
    const auto track = noise_track(static_cast<double>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(signal::compute_spectrogram(track, 1024, 512));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(track.samples.size()));
}
BENCHMARK(BM_Spectrogram)->Arg(10)->Arg(60)->Arg(180)->Unit(benchmark::kMillisecond);

// Exhaustive lag scan; cost grows with frames times lag range.
void BM_EstimateOffset(benchmark::State &state) {
    const auto a = signal::compute_spectrogram(noise_track(60.0, 2));
    const auto b = signal::compute_spectrogram(noise_track(60.0, 3));
    const int max_lag = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(signal::estimate_offset(a, b, max_lag));
}
BENCHMARK(BM_EstimateOffset)->Arg(50)->Arg(313)->Unit(benchmark::kMillisecond);

void BM_SegmentDvs(benchmark::State &state) {
    const auto original = noise_track(180.0, 4);
    auto mixed = original;
    Rng rng(5);
    for (std::size_t i = 16000 * 20; i < 16000 * 24; ++i)
        mixed.samples[i] += 0.3 * rng.gaussian();
    signal::SegmentParams params;
    params.threshold = 0.1;
    for (auto _ : state)
        benchmark::DoNotOptimize(signal::segment_dvs(mixed, original, params));
}
BENCHMARK(BM_SegmentDvs)->Unit(benchmark::kMillisecond);

} // namespace
