#include "moviedesc/signal/spectrogram.hpp"

#include "moviedesc/error.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>

namespace moviedesc::signal {
namespace {

/// In-place iterative radix-2 FFT over a power-of-two buffer.
class Fft {
  public:
    explicit Fft(std::size_t n) : n_(n), twiddle_(n / 2) {
        for (std::size_t k = 0; k < n / 2; ++k) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            twiddle_[k] = {std::cos(angle), std::sin(angle)};
        }
        const int levels = std::countr_zero(n);
        reversed_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (int b = 0; b < levels; ++b)
                r |= ((i >> b) & 1U) << (levels - 1 - b);
            reversed_[i] = r;
        }
    }

    void transform(std::vector<std::complex<double>> &x) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (i < reversed_[i])
                std::swap(x[i], x[reversed_[i]]);
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            const std::size_t half = len / 2;
            const std::size_t stride = n_ / len;
            for (std::size_t start = 0; start < n_; start += len) {
                for (std::size_t k = 0; k < half; ++k) {
                    const auto t = twiddle_[k * stride] * x[start + k + half];
                    x[start + k + half] = x[start + k] - t;
                    x[start + k] += t;
                }
            }
        }
    }

  private:
    std::size_t n_;
    std::vector<std::complex<double>> twiddle_;
    std::vector<std::size_t> reversed_;
};

} // namespace

Spectrogram::Spectrogram(std::size_t frames, std::size_t window_size, std::size_t hop, int sample_rate)
    : frames_(frames), bins_(window_size / 2 + 1), window_size_(window_size), hop_(hop),
      sample_rate_(sample_rate), data_(frames * (window_size / 2 + 1), 0.0) {}

std::vector<double> hann_window(std::size_t n) {
    std::vector<double> w(n);
    // periodic Hann
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
    return w;
}

Spectrogram compute_spectrogram(const AudioTrack &track, std::size_t window_size, std::size_t hop) {
    if (window_size < 2 || !std::has_single_bit(window_size))
        throw Error("invalid window: size must be a power of two, got " + std::to_string(window_size));
    if (hop == 0 || hop > window_size)
        throw Error("invalid window: hop must be in (0, window_size], got " + std::to_string(hop));
    if (track.sample_rate <= 0)
        throw Error("invalid sample rate");
    if (track.samples.size() < window_size)
        throw Error("input too short: " + std::to_string(track.samples.size()) + " samples < window " +
                    std::to_string(window_size));

    const std::size_t frames = (track.samples.size() - window_size) / hop + 1;
    Spectrogram spec(frames, window_size, hop, track.sample_rate);

    const Fft fft(window_size);
    const auto window = hann_window(window_size);
    std::vector<std::complex<double>> buf(window_size);
    for (std::size_t t = 0; t < frames; ++t) {
        const double *src = track.samples.data() + t * hop;
        for (std::size_t i = 0; i < window_size; ++i)
            buf[i] = {src[i] * window[i], 0.0};
        fft.transform(buf);
        auto out = spec.frame(t);
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] = std::abs(buf[k]);
    }
    return spec;
}

} // namespace moviedesc::signal
