#pragma once

#include <filesystem>
#include <vector>

namespace moviedesc::signal {

/// Mono PCM samples in [-1, 1].
struct AudioTrack {
    std::vector<double> samples;
    int sample_rate = 0;

    double duration_s() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

enum class WavEncoding { pcm16, float32 };

/// Reads an uncompressed RIFF/WAVE file (16-bit PCM or 32-bit float, any
/// channel count). Multi-channel input is averaged to mono.
AudioTrack read_wav(const std::filesystem::path &path);

void write_wav(const std::filesystem::path &path, const AudioTrack &track,
               WavEncoding encoding = WavEncoding::pcm16);

} // namespace moviedesc::signal
