#pragma once

#include "moviedesc/signal/audio.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace moviedesc::signal {

/// Magnitude spectrogram, row-major frames x bins.
class Spectrogram {
  public:
    Spectrogram() = default;
    Spectrogram(std::size_t frames, std::size_t window_size, std::size_t hop, int sample_rate);

    std::size_t frames() const { return frames_; }
    std::size_t bins() const { return bins_; }
    std::size_t window_size() const { return window_size_; }
    std::size_t hop() const { return hop_; }
    int sample_rate() const { return sample_rate_; }
    double frame_rate() const { return static_cast<double>(sample_rate_) / static_cast<double>(hop_); }

    std::span<const double> frame(std::size_t t) const { return {data_.data() + t * bins_, bins_}; }
    std::span<double> frame(std::size_t t) { return {data_.data() + t * bins_, bins_}; }

    bool same_layout(const Spectrogram &other) const {
        return window_size_ == other.window_size_ && hop_ == other.hop_ &&
               sample_rate_ == other.sample_rate_;
    }

  private:
    std::size_t frames_ = 0;
    std::size_t bins_ = 0;
    std::size_t window_size_ = 0;
    std::size_t hop_ = 0;
    int sample_rate_ = 0;
    std::vector<double> data_;
};

std::vector<double> hann_window(std::size_t n);

/// Hann-windowed short-time magnitude spectrum. Throws "input too short" when
/// the track is shorter than one window and "invalid window" for
/// non-power-of-two sizes or a hop outside (0, window_size].
Spectrogram compute_spectrogram(const AudioTrack &track, std::size_t window_size = 1024,
                                std::size_t hop = 512);

} // namespace moviedesc::signal
