#include "synthetic_audio.hpp"

#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace moviedesc::testing {

signal::AudioTrack synth_background(int sample_rate, double duration_s, std::uint64_t seed) {
    Rng rng(seed);
    signal::AudioTrack track;
    track.sample_rate = sample_rate;
    const auto n = static_cast<std::size_t>(duration_s * sample_rate);
    track.samples.assign(n, 0.0);

    const double two_pi = 2.0 * std::numbers::pi;
    std::size_t pos = 0;
    while (pos < n) {
        const auto len = static_cast<std::size_t>(rng.uniform(1.5, 2.5) * sample_rate);
        const std::size_t end = std::min(n, pos + len);
        double freq[3];
        double amp[3];
        for (int k = 0; k < 3; ++k) {
            freq[k] = rng.uniform(80.0, 2500.0);
            amp[k] = rng.uniform(0.03, 0.08);
        }
        for (std::size_t i = pos; i < end; ++i) {
            const double t = static_cast<double>(i) / sample_rate;
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
                s += amp[k] * std::sin(two_pi * freq[k] * t);
            track.samples[i] = s;
        }
        pos = end;
    }
    for (double &s : track.samples)
        s += 0.01 * rng.gaussian();
    return track;
}

void add_narration(signal::AudioTrack &track, const TimeInterval &span, std::uint64_t seed, double amplitude) {
    Rng rng(seed);
    const double sr = track.sample_rate;
    const auto begin = static_cast<std::size_t>(std::lround(span.start_s * sr));
    const auto end = std::min(track.samples.size(), static_cast<std::size_t>(std::lround(span.end_s * sr)));
    const double f0 = rng.uniform(110.0, 210.0);
    const double syllable_hz = rng.uniform(3.0, 5.0);
    const double ramp = 0.01 * sr;
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = begin; i < end; ++i) {
        const double t = static_cast<double>(i - begin) / sr;
        const double pitch = f0 * (1.0 + 0.05 * std::sin(two_pi * 0.7 * t));
        double voice = 0.0;
        for (int h = 1; h <= 12; ++h)
            voice += std::sin(two_pi * pitch * h * t) / h;
        const double syllables = 0.55 + 0.45 * std::sin(two_pi * syllable_hz * t);
        const double edge = std::min({1.0, static_cast<double>(i - begin) / ramp, static_cast<double>(end - i) / ramp});
        track.samples[i] += amplitude * 0.5 * voice * syllables * edge;
    }
}

signal::AudioTrack delayed(const signal::AudioTrack &track, double offset_s) {
    signal::AudioTrack out;
    out.sample_rate = track.sample_rate;
    out.samples.assign(track.samples.size(), 0.0);
    const auto shift = static_cast<std::size_t>(std::lround(offset_s * track.sample_rate));
    for (std::size_t i = shift; i < out.samples.size(); ++i)
        out.samples[i] = track.samples[i - shift];
    return out;
}

SyntheticMix make_synthetic_mix(const MixSpec &spec) {
    SyntheticMix mix;
    mix.original = synth_background(spec.sample_rate, spec.duration_s, spec.seed);
    mix.mixed = delayed(mix.original, spec.offset_s);

    // Bursts sit in equal slots with random length and position.
    Rng rng(spec.seed * 7919 + 1);
    const double first = spec.offset_s + 3.0;
    const double slot = (spec.duration_s - first - 3.0) / spec.bursts;
    for (int b = 0; b < spec.bursts; ++b) {
        const double len = rng.uniform(1.2, std::min(4.0, slot - 2.0));
        const double start = first + b * slot + rng.uniform(0.5, slot - len - 0.5);
        const TimeInterval span{std::round(start * 1000.0) / 1000.0, std::round((start + len) * 1000.0) / 1000.0};
        add_narration(mix.mixed, span, spec.seed * 31 + static_cast<std::uint64_t>(b));
        mix.bursts.push_back(span);
    }
    return mix;
}

} // namespace moviedesc::testing
