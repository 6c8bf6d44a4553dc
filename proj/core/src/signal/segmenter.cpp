#include "moviedesc/signal/segmenter.hpp"

#include "moviedesc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace moviedesc::signal {
namespace {

struct Overlap {
    std::size_t begin = 0; // first frame of `a`
    std::size_t end = 0;   // one past the last frame of `a`
    bool empty() const { return end <= begin; }
};

// Frames t of `a` with a partner t + lag in `b`.
Overlap overlap_for(std::size_t frames_a, std::size_t frames_b, int lag) {
    const auto na = static_cast<long long>(frames_a);
    const auto nb = static_cast<long long>(frames_b);
    const long long begin = std::max(0LL, -static_cast<long long>(lag));
    const long long end = std::min(na, nb - lag);
    if (end <= begin)
        return {};
    return {static_cast<std::size_t>(begin), static_cast<std::size_t>(end)};
}

double l1(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        sum += std::abs(x[i] - y[i]);
    return sum;
}

void require_same_layout(const Spectrogram &a, const Spectrogram &b) {
    if (!a.same_layout(b))
        throw Error("spectrograms differ in window, hop or sample rate");
}

} // namespace

int estimate_offset(const Spectrogram &a, const Spectrogram &b, int max_lag_frames) {
    require_same_layout(a, b);
    if (max_lag_frames < 0)
        throw Error("max lag must be non-negative");
    if (static_cast<std::size_t>(max_lag_frames) >= std::min(a.frames(), b.frames()))
        throw Error("max lag must be smaller than both spectrogram lengths");

    bool found = false;
    int best_lag = 0;
    double best = -std::numeric_limits<double>::infinity();
    // Visiting 0, -1, +1, -2, +2, ... and replacing only on strict
    // improvement realizes the tie order.
    for (int step = 0; step <= 2 * max_lag_frames; ++step) {
        const int lag = (step % 2 == 0) ? step / 2 : -((step + 1) / 2);
        const Overlap ov = overlap_for(a.frames(), b.frames(), lag);
        if (ov.empty())
            continue;
        double total = 0.0;
        for (std::size_t t = ov.begin; t < ov.end; ++t)
            total += l1(a.frame(t), b.frame(t + lag));
        const double similarity = -total / static_cast<double>((ov.end - ov.begin) * a.bins());
        if (!found || similarity > best) {
            found = true;
            best = similarity;
            best_lag = lag;
        }
    }
    if (!found)
        throw Error("no overlap");
    return best_lag;
}

DifferenceCurve difference_curve(const Spectrogram &mixed, const Spectrogram &original, int lag) {
    require_same_layout(mixed, original);
    const Overlap ov = overlap_for(mixed.frames(), original.frames(), lag);
    if (ov.empty())
        throw Error("no overlap");

    DifferenceCurve curve;
    curve.lag = lag;
    curve.frame_rate = mixed.frame_rate();
    const double sr = mixed.sample_rate();
    // Each frame stands for the hop-long cell centred on its window.
    curve.time_offset_s = (static_cast<double>(ov.begin * mixed.hop()) +
                           0.5 * static_cast<double>(mixed.window_size() - mixed.hop())) / sr;
    curve.scores.reserve(ov.end - ov.begin);
    const auto bins = static_cast<double>(mixed.bins());
    for (std::size_t t = ov.begin; t < ov.end; ++t)
        curve.scores.push_back(l1(mixed.frame(t), original.frame(t + lag)) / bins);
    return curve;
}

std::vector<Segment> threshold_segments(const DifferenceCurve &curve, double threshold,
                                        double min_segment_s, double merge_gap_s) {
    if (threshold < 0.0)
        throw Error("threshold must be non-negative");
    if (min_segment_s <= 0.0)
        throw Error("min_segment_s must be positive");
    if (curve.frame_rate <= 0.0)
        throw Error("curve has no frame rate");

    struct Run {
        std::size_t begin, end;
    };
    std::vector<Run> runs;
    const auto &s = curve.scores;
    for (std::size_t t = 0; t < s.size();) {
        if (s[t] > threshold) {
            std::size_t e = t;
            while (e < s.size() && s[e] > threshold)
                ++e;
            runs.push_back({t, e});
            t = e;
        } else {
            ++t;
        }
    }

    std::vector<Run> merged;
    for (const Run &r : runs) {
        if (!merged.empty()) {
            const double gap_s = static_cast<double>(r.begin - merged.back().end) / curve.frame_rate;
            if (gap_s < merge_gap_s) {
                merged.back().end = r.end;
                continue;
            }
        }
        merged.push_back(r);
    }

    constexpr double kEps = 1e-9;
    std::vector<Segment> out;
    for (const Run &r : merged) {
        const double duration = static_cast<double>(r.end - r.begin) / curve.frame_rate;
        if (duration + kEps < min_segment_s)
            continue;
        Segment seg;
        seg.interval = {curve.frame_start(r.begin), curve.frame_start(r.end)};
        double sum = 0.0;
        for (std::size_t t = r.begin; t < r.end; ++t) {
            seg.peak_score = std::max(seg.peak_score, s[t]);
            sum += s[t];
        }
        seg.mean_score = sum / static_cast<double>(r.end - r.begin);
        out.push_back(seg);
    }
    return out;
}

double curve_percentile(const DifferenceCurve &curve, double percentile) {
    if (curve.scores.empty())
        throw Error("empty difference curve");
    std::vector<double> sorted = curve.scores;
    std::sort(sorted.begin(), sorted.end());
    const double p = std::clamp(percentile, 0.0, 100.0) / 100.0;
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

ThresholdReport threshold_report(const DifferenceCurve &curve) {
    ThresholdReport r;
    r.p50 = curve_percentile(curve, 50);
    r.p75 = curve_percentile(curve, 75);
    r.p90 = curve_percentile(curve, 90);
    r.p95 = curve_percentile(curve, 95);
    r.max = curve_percentile(curve, 100);
    r.suggested = r.p75;
    return r;
}

SegmentationResult segment_dvs(const AudioTrack &mixed, const AudioTrack &original,
                               const SegmentParams &params) {
    if (mixed.sample_rate != original.sample_rate)
        throw Error("mixed and original tracks differ in sample rate (" + std::to_string(mixed.sample_rate) +
                    " vs " + std::to_string(original.sample_rate) + ")");
    const Spectrogram a = compute_spectrogram(mixed, params.window_size, params.hop);
    const Spectrogram b = compute_spectrogram(original, params.window_size, params.hop);

    const auto limit = static_cast<long long>(std::min(a.frames(), b.frames())) - 1;
    const auto wanted = std::llround(params.max_lag_s * a.frame_rate());
    const int max_lag = static_cast<int>(std::clamp<long long>(wanted, 0, std::max(0LL, limit)));

    SegmentationResult result;
    result.lag = estimate_offset(a, b, max_lag);
    result.curve = difference_curve(a, b, result.lag);
    result.threshold = params.threshold ? *params.threshold : threshold_report(result.curve).suggested;
    result.segments = threshold_segments(result.curve, result.threshold, params.min_segment_s, params.merge_gap_s);
    return result;
}

DifferenceCurve downsample(const DifferenceCurve &curve, std::size_t points) {
    if (points == 0 || curve.scores.size() <= points)
        return curve;
    const std::size_t bucket = (curve.scores.size() + points - 1) / points;
    DifferenceCurve out;
    out.lag = curve.lag;
    out.time_offset_s = curve.time_offset_s;
    out.frame_rate = curve.frame_rate / static_cast<double>(bucket);
    for (std::size_t i = 0; i < curve.scores.size(); i += bucket) {
        const auto end = std::min(curve.scores.size(), i + bucket);
        out.scores.push_back(*std::max_element(curve.scores.begin() + static_cast<long>(i),
                                               curve.scores.begin() + static_cast<long>(end)));
    }
    return out;
}

} // namespace moviedesc::signal
