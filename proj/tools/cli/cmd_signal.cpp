#include "common.hpp"

#include "moviedesc/corpus/curation.hpp"
#include "moviedesc/error.hpp"
#include "moviedesc/signal/audio.hpp"
#include "moviedesc/signal/segmenter.hpp"

#include <CLI11.hpp>

#include <charconv>

namespace moviedesc::cli {
namespace {

struct SegmentArgs {
    std::string mixed;
    std::string original;
    std::string threshold = "auto";
    double min_segment_s = 1.0;
    double merge_gap_s = 0.25;
    double max_lag_s = 10.0;
    std::size_t window = 1024;
    std::size_t hop = 512;
    std::string curve_out;
    std::string out;
};

std::optional<double> parse_threshold(const std::string &text) {
    if (text == "auto")
        return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !(v >= 0.0))
        throw UsageError("--threshold must be 'auto' or a non-negative number, got '" + text + "'");
    return v;
}

void run_segment(Context &ctx, const SegmentArgs &a) {
    signal::SegmentParams params;
    params.threshold = parse_threshold(a.threshold);
    params.min_segment_s = a.min_segment_s;
    params.merge_gap_s = a.merge_gap_s;
    params.max_lag_s = a.max_lag_s;
    params.window_size = a.window;
    params.hop = a.hop;
    const auto mixed = signal::read_wav(a.mixed);
    const auto original = signal::read_wav(a.original);
    const auto result = signal::segment_dvs(mixed, original, params);

    std::string lines;
    for (const auto &s : result.segments) {
        Json j;
        j["start_s"] = s.interval.start_s;
        j["end_s"] = s.interval.end_s;
        j["peak_score"] = s.peak_score;
        j["mean_score"] = s.mean_score;
        lines += j.dump() + "\n";
    }
    const auto report = signal::threshold_report(result.curve);
    ctx.err << "segment: lag " << result.lag << " frames, threshold " << result.threshold
            << (params.threshold ? "" : " (auto, p75)") << ", p50 " << report.p50 << ", p90 " << report.p90
            << ", " << result.segments.size() << " intervals\n";
    if (!a.curve_out.empty())
        emit(ctx, a.curve_out, corpus::curve_to_json(result.curve) + "\n");
    emit(ctx, a.out, lines);
}

} // namespace

void add_signal_commands(CLI::App &app, Context &ctx) {
    auto args = std::make_shared<SegmentArgs>();
    auto *cmd = app.add_subcommand("segment", "Find narration intervals by comparing the mixed and original tracks");
    cmd->add_option("--mixed", args->mixed, "WAV with narration")->required()->check(CLI::ExistingFile);
    cmd->add_option("--original", args->original, "WAV without narration")->required()->check(CLI::ExistingFile);
    cmd->add_option("--threshold", args->threshold, "'auto' (75th percentile) or a value")->capture_default_str();
    cmd->add_option("--min-segment", args->min_segment_s, "Drop intervals shorter than this (s)")
        ->capture_default_str();
    cmd->add_option("--merge-gap", args->merge_gap_s, "Merge runs closer than this (s)")->capture_default_str();
    cmd->add_option("--max-lag", args->max_lag_s, "Offset search range (s)")->capture_default_str();
    cmd->add_option("--window", args->window, "FFT window (samples)")->capture_default_str();
    cmd->add_option("--hop", args->hop, "Hop (samples)")->capture_default_str();
    cmd->add_option("--curve-out", args->curve_out, "Also write the difference curve as JSON");
    cmd->add_option("--out", args->out, "Output file (default stdout)");
    cmd->callback([&ctx, args] { run_segment(ctx, *args); });
}

} // namespace moviedesc::cli
