#pragma once

#include "moviedesc/signal/spectrogram.hpp"

#include <cstdint>

namespace moviedesc::testing {

struct OffsetTrial {
    signal::Spectrogram a;
    signal::Spectrogram b;
};

/// Noise-like audio whose copy is shifted by `lag_frames` hops (b[t + lag]
/// matches a[t]) and corrupted by white noise at `snr_db`.
OffsetTrial make_offset_trial(int lag_frames, double snr_db, std::uint64_t seed, int sample_rate = 8000,
                              std::size_t window = 256, std::size_t hop = 128, std::size_t frames = 400);

} // namespace moviedesc::testing
