#pragma once

#include "moviedesc/signal/spectrogram.hpp"
#include "moviedesc/time_interval.hpp"

#include <optional>
#include <vector>

namespace moviedesc::signal {

/// Per-frame spectral difference between the mixed and the original track.
/// Frame k of the curve stands for the time cell
/// [time_offset_s + k / frame_rate, time_offset_s + (k + 1) / frame_rate).
struct DifferenceCurve {
    std::vector<double> scores;
    double frame_rate = 0.0;
    double time_offset_s = 0.0;
    int lag = 0;

    double frame_start(std::size_t k) const { return time_offset_s + static_cast<double>(k) / frame_rate; }
};

struct Segment {
    TimeInterval interval;
    double peak_score = 0.0;
    double mean_score = 0.0;
};

/// Lag L (in frames) such that frame t of `a` best matches frame t + L of
/// `b`, scanned exhaustively over [-max_lag_frames, max_lag_frames] by mean
/// negative L1 distance over the overlap. Ties go to the smallest |L|, then
/// to the negative lag.
int estimate_offset(const Spectrogram &a, const Spectrogram &b, int max_lag_frames);

/// score[t] = mean over bins of |mixed[t] - original[t + lag]| for every
/// mixed frame t that has a partner in `original`.
DifferenceCurve difference_curve(const Spectrogram &mixed, const Spectrogram &original, int lag);

/// Frames scoring strictly above `threshold` form runs; runs separated by
/// less than `merge_gap_s` are merged and merged runs shorter than
/// `min_segment_s` are dropped.
std::vector<Segment> threshold_segments(const DifferenceCurve &curve, double threshold,
                                        double min_segment_s = 1.0, double merge_gap_s = 0.25);

/// Percentile (0..100, linear interpolation) of the curve scores.
double curve_percentile(const DifferenceCurve &curve, double percentile);

struct ThresholdReport {
    double p50 = 0.0;
    double p75 = 0.0;
    double p90 = 0.0;
    double p95 = 0.0;
    double max = 0.0;
    double suggested = 0.0; ///< the 75th percentile
};

ThresholdReport threshold_report(const DifferenceCurve &curve);

struct SegmentParams {
    std::size_t window_size = 1024;
    std::size_t hop = 512;
    double max_lag_s = 10.0;
    /// Unset selects the 75th-percentile suggestion.
    std::optional<double> threshold;
    double min_segment_s = 1.0;
    double merge_gap_s = 0.25;
};

struct SegmentationResult {
    std::vector<Segment> segments;
    DifferenceCurve curve;
    double threshold = 0.0;
    int lag = 0;
};

SegmentationResult segment_dvs(const AudioTrack &mixed, const AudioTrack &original,
                               const SegmentParams &params = {});

/// Max-pools the curve into at most `points` buckets for display.
DifferenceCurve downsample(const DifferenceCurve &curve, std::size_t points);

} // namespace moviedesc::signal
