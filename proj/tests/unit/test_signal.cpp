#include "doctest.h"

#include "moviedesc/error.hpp"
#include "moviedesc/signal/audio.hpp"
#include "moviedesc/signal/segmenter.hpp"
#include "moviedesc/signal/spectrogram.hpp"

#include "offset_fixture.hpp"
#include "rng.hpp"
#include "synthetic_audio.hpp"

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>

using namespace moviedesc;
using namespace moviedesc::signal;

namespace {

// O(n^2) DFT of one Hann-windowed frame; independent of the FFT path.
std::vector<double> naive_dft_magnitudes(const std::vector<double> &x, std::size_t offset, std::size_t n) {
    std::vector<double> mags(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / n));
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(k * i) / n;
            acc += w * x[offset + i] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        mags[k] = std::abs(acc);
    }
    return mags;
}

Spectrogram random_spectrogram(std::size_t frames, std::uint64_t seed, std::size_t window = 64) {
    testing::Rng rng(seed);
    Spectrogram s(frames, window, window / 2, 8000);
    for (std::size_t t = 0; t < frames; ++t)
        for (double &v : s.frame(t))
            v = rng.uniform(0.0, 2.0);
    return s;
}

// Single-pass run/merge/drop state machine over the frame sequence.
std::vector<TimeInterval> threshold_oracle(const DifferenceCurve &c, double thr, double min_s, double gap_s) {
    std::vector<TimeInterval> out;
    long open_start = -1;
    long last_end = -1;
    auto close = [&] {
        if (open_start >= 0 && (last_end - open_start) / c.frame_rate >= min_s - 1e-9)
            out.push_back({c.time_offset_s + open_start / c.frame_rate, c.time_offset_s + last_end / c.frame_rate});
    };
    for (long t = 0; t < static_cast<long>(c.scores.size()); ++t) {
        if (!(c.scores[t] > thr))
            continue;
        if (open_start >= 0 && (t - last_end) / c.frame_rate >= gap_s) {
            close();
            open_start = -1;
        }
        if (open_start < 0)
            open_start = t;
        last_end = t + 1;
    }
    close();
    return out;
}

DifferenceCurve curve_from(std::vector<double> scores, double fps = 100.0) {
    DifferenceCurve c;
    c.scores = std::move(scores);
    c.frame_rate = fps;
    return c;
}

} // namespace

TEST_CASE("spectrogram of silence is zero") {
    AudioTrack silence{std::vector<double>(16000, 0.0), 16000};
    const auto spec = compute_spectrogram(silence, 1024, 512);
    CHECK(spec.frames() == (16000 - 1024) / 512 + 1);
    CHECK(spec.bins() == 513);
    for (std::size_t t = 0; t < spec.frames(); ++t)
        for (double v : spec.frame(t))
            CHECK(v == 0.0);
}

TEST_CASE("single tone peaks at the expected bin") {
    AudioTrack sine{{}, 16000};
    for (int i = 0; i < 16000; ++i)
        sine.samples.push_back(0.5 * std::sin(2.0 * std::numbers::pi * 1000.0 * i / 16000.0));
    const auto spec = compute_spectrogram(sine, 1024, 512);
    for (std::size_t t = 0; t < spec.frames(); ++t) {
        const auto f = spec.frame(t);
        const auto peak = std::distance(f.begin(), std::max_element(f.begin(), f.end()));
        CHECK(peak == 64);
    }
}

TEST_CASE("spectrogram matches a direct DFT") {
    testing::Rng rng(11);
    const std::size_t window = 256;
    const std::size_t hop = 128;
    AudioTrack track{{}, 8000};
    for (std::size_t i = 0; i < window + 2 * hop; ++i)
        track.samples.push_back(rng.uniform(-1.0, 1.0));
    const auto spec = compute_spectrogram(track, window, hop);
    REQUIRE(spec.frames() == 3);
    for (std::size_t t = 0; t < 3; ++t) {
        const auto expected = naive_dft_magnitudes(track.samples, t * hop, window);
        const auto got = spec.frame(t);
        for (std::size_t k = 0; k < expected.size(); ++k)
            CHECK(std::abs(got[k] - expected[k]) <= 1e-6 * std::max(1.0, expected[k]));
    }
}

TEST_CASE("spectrogram agrees with the DFT oracle for larger windows") {
    testing::Rng rng(12);
    for (std::size_t window : {512UL, 1024UL, 4096UL}) {
        AudioTrack track{{}, 16000};
        for (std::size_t i = 0; i < window; ++i)
            track.samples.push_back(rng.uniform(-1.0, 1.0));
        const auto spec = compute_spectrogram(track, window, window);
        const auto expected = naive_dft_magnitudes(track.samples, 0, window);
        for (std::size_t k = 0; k < expected.size(); ++k)
            CHECK(std::abs(spec.frame(0)[k] - expected[k]) <= 1e-6 * std::max(1.0, expected[k]));
    }
}

TEST_CASE("spectrogram input validation") {
    AudioTrack track{std::vector<double>(1000, 0.1), 16000};
    CHECK_THROWS_WITH_AS(compute_spectrogram(track, 1024, 512), doctest::Contains("input too short"), Error);
    CHECK_THROWS_WITH_AS(compute_spectrogram(track, 300, 100), doctest::Contains("invalid window"), Error);
    CHECK_THROWS_WITH_AS(compute_spectrogram(track, 256, 0), doctest::Contains("invalid window"), Error);
    CHECK_THROWS_WITH_AS(compute_spectrogram(track, 256, 512), doctest::Contains("invalid window"), Error);
}

TEST_CASE("offset of identical spectrograms is zero") {
    const auto s = random_spectrogram(100, 3);
    CHECK(estimate_offset(s, s, 20) == 0);
}

TEST_CASE("offset recovers a delay made of leading zero frames") {
    const auto a = random_spectrogram(120, 4);
    for (int k : {1, 5, 17}) {
        Spectrogram b(120, a.window_size(), a.hop(), a.sample_rate());
        for (std::size_t t = 0; t + k < 120; ++t)
            std::copy(a.frame(t).begin(), a.frame(t).end(), b.frame(t + k).begin());
        CHECK(estimate_offset(a, b, 30) == k);
        // and the mirrored construction
        CHECK(estimate_offset(b, a, 30) == -k);
    }
}

TEST_CASE("offset recovery under 20 dB noise") {
    for (int k = -40; k <= 40; k += 8) {
        const auto trial = testing::make_offset_trial(k, 20.0, 100 + static_cast<std::uint64_t>(k + 40));
        CHECK(estimate_offset(trial.a, trial.b, 50) == k);
        CHECK(estimate_offset(trial.b, trial.a, 50) == -k);
    }
}

TEST_CASE("offset ties prefer small magnitude then negative lags") {
    // Constant spectrograms make every lag equally good.
    Spectrogram a(50, 64, 32, 8000);
    Spectrogram b(50, 64, 32, 8000);
    CHECK(estimate_offset(a, b, 10) == 0);

    // Period-2 pattern: lags -1 and +1 tie and beat lag 0.
    Spectrogram p(50, 64, 32, 8000);
    Spectrogram q(50, 64, 32, 8000);
    for (std::size_t t = 0; t < 50; ++t) {
        std::fill(p.frame(t).begin(), p.frame(t).end(), t % 2 == 0 ? 1.0 : 0.0);
        std::fill(q.frame(t).begin(), q.frame(t).end(), t % 2 == 0 ? 0.0 : 1.0);
    }
    CHECK(estimate_offset(p, q, 5) == -1);
}

TEST_CASE("offset preconditions") {
    const auto a = random_spectrogram(20, 5);
    const auto b = random_spectrogram(20, 6, 128);
    CHECK_THROWS_AS(estimate_offset(a, b, 3), Error);
    CHECK_THROWS_AS(estimate_offset(a, a, 20), Error);
}

TEST_CASE("difference curve") {
    SUBCASE("identity is zero") {
        const auto s = random_spectrogram(40, 7);
        const auto c = difference_curve(s, s, 0);
        CHECK(c.scores.size() == 40);
        for (double v : c.scores)
            CHECK(v == 0.0);
    }
    SUBCASE("silent original leaves the mean magnitude") {
        const auto mixed = random_spectrogram(30, 8);
        const Spectrogram silent(30, mixed.window_size(), mixed.hop(), mixed.sample_rate());
        const auto c = difference_curve(mixed, silent, 0);
        for (std::size_t t = 0; t < 30; ++t) {
            double mean = 0.0;
            for (double v : mixed.frame(t))
                mean += v;
            CHECK(c.scores[t] == doctest::Approx(mean / mixed.bins()).epsilon(1e-12));
        }
    }
    SUBCASE("random spectrograms match an element-wise loop") {
        const auto m = random_spectrogram(60, 9);
        const auto o = random_spectrogram(55, 10);
        for (int lag : {-7, 0, 4}) {
            const auto c = difference_curve(m, o, lag);
            std::size_t k = 0;
            for (long t = 0; t < 60; ++t) {
                const long u = t + lag;
                if (u < 0 || u >= 55)
                    continue;
                double sum = 0.0;
                for (std::size_t j = 0; j < m.bins(); ++j)
                    sum += std::fabs(m.frame(t)[j] - o.frame(u)[j]);
                REQUIRE(k < c.scores.size());
                CHECK(std::fabs(c.scores[k] - sum / m.bins()) <= 1e-9);
                ++k;
            }
            CHECK(k == c.scores.size());
        }
    }
    SUBCASE("no overlap") {
        const auto s = random_spectrogram(10, 11);
        CHECK_THROWS_WITH_AS(difference_curve(s, s, 10), doctest::Contains("no overlap"), Error);
    }
}

TEST_CASE("threshold segments") {
    SUBCASE("nothing above threshold") {
        CHECK(threshold_segments(curve_from(std::vector<double>(300, 0.1)), 0.5).empty());
    }
    SUBCASE("a 0.5 s run is below the 1 s minimum") {
        std::vector<double> s(300, 0.0);
        std::fill(s.begin() + 100, s.begin() + 150, 1.0);
        CHECK(threshold_segments(curve_from(s), 0.5).empty());
    }
    SUBCASE("two 0.8 s runs with a 0.1 s gap merge") {
        std::vector<double> s(300, 0.0);
        std::fill(s.begin() + 10, s.begin() + 90, 1.0);
        std::fill(s.begin() + 100, s.begin() + 180, 2.0);
        const auto c = curve_from(s);
        const auto segs = threshold_segments(c, 0.5, 1.0, 0.25);
        const auto oracle = threshold_oracle(c, 0.5, 1.0, 0.25);
        REQUIRE(segs.size() == 1);
        REQUIRE(oracle.size() == 1);
        CHECK(segs[0].interval.start_s == doctest::Approx(0.10));
        CHECK(segs[0].interval.end_s == doctest::Approx(1.80));
        CHECK(segs[0].interval.start_s == doctest::Approx(oracle[0].start_s));
        CHECK(segs[0].interval.end_s == doctest::Approx(oracle[0].end_s));
        CHECK(segs[0].peak_score == 2.0);
        CHECK(segs[0].mean_score == doctest::Approx((80 * 1.0 + 80 * 2.0) / 170.0));
        // Without merging neither run survives.
        CHECK(threshold_segments(c, 0.5, 1.0, 0.0).empty());
    }
    SUBCASE("random curves agree with the state-machine oracle") {
        testing::Rng rng(21);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> s(400);
            double level = 0.0;
            for (double &v : s) {
                if (rng.uniform() < 0.05)
                    level = rng.uniform() < 0.5 ? 0.0 : 1.0;
                v = level + rng.uniform(0.0, 0.3);
            }
            DifferenceCurve c = curve_from(s, rng.uniform(20.0, 60.0));
            c.time_offset_s = rng.uniform(0.0, 2.0);
            const double thr = rng.uniform(0.2, 1.2);
            const double min_s = rng.uniform(0.2, 2.0);
            const double gap_s = rng.uniform(0.0, 0.5);
            const auto segs = threshold_segments(c, thr, min_s, gap_s);
            const auto oracle = threshold_oracle(c, thr, min_s, gap_s);
            REQUIRE(segs.size() == oracle.size());
            for (std::size_t i = 0; i < segs.size(); ++i) {
                CHECK(segs[i].interval.start_s == doctest::Approx(oracle[i].start_s));
                CHECK(segs[i].interval.end_s == doctest::Approx(oracle[i].end_s));
            }
        }
    }
}

TEST_CASE("threshold segments invariants") {
    testing::Rng rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> s(500);
        for (double &v : s)
            v = rng.uniform() < 0.6 ? rng.uniform(0.0, 1.0) : rng.uniform(0.5, 3.0);
        const auto c = curve_from(s, 31.25);
        double previous_cover = std::numeric_limits<double>::infinity();
        for (double thr = 0.0; thr <= 3.0; thr += 0.25) {
            const auto segs = threshold_segments(c, thr, 0.5, 0.25);
            double cover = 0.0;
            for (std::size_t i = 0; i < segs.size(); ++i) {
                CHECK(segs[i].interval.duration() >= 0.5 - 1e-9);
                if (i > 0)
                    CHECK(segs[i - 1].interval.end_s <= segs[i].interval.start_s);
                cover += segs[i].interval.duration();
            }
            CHECK(cover <= previous_cover + 1e-9);
            previous_cover = cover;
        }
    }
}

TEST_CASE("curve percentiles") {
    const auto c = curve_from({4.0, 1.0, 3.0, 2.0, 5.0});
    CHECK(curve_percentile(c, 0) == 1.0);
    CHECK(curve_percentile(c, 50) == 3.0);
    CHECK(curve_percentile(c, 75) == 4.0);
    CHECK(curve_percentile(c, 100) == 5.0);
    CHECK(curve_percentile(c, 62.5) == doctest::Approx(3.5));
    CHECK(threshold_report(c).suggested == 4.0);
}

TEST_CASE("downsampling keeps bucket maxima") {
    const auto c = curve_from({1, 5, 2, 2, 7, 0, 3});
    const auto d = downsample(c, 3);
    CHECK(d.scores == std::vector<double>{5, 7, 3});
    CHECK(d.frame_rate == doctest::Approx(c.frame_rate / 3));
}

TEST_CASE("segment_dvs on identical tracks finds nothing") {
    const auto track = testing::synth_background(16000, 20.0, 5);
    const auto result = segment_dvs(track, track);
    CHECK(result.lag == 0);
    CHECK(result.segments.empty());
}

TEST_CASE("segment_dvs absorbs a pure shift") {
    const auto original = testing::synth_background(16000, 30.0, 6);
    const auto mixed = testing::delayed(original, 1.5);
    SegmentParams params;
    params.threshold = 0.1;
    const auto result = segment_dvs(mixed, original, params);
    CHECK(result.lag == -47);
    CHECK(result.segments.empty());
}

TEST_CASE("segment_dvs finds inserted narration") {
    testing::MixSpec spec;
    spec.duration_s = 60.0;
    spec.bursts = 3;
    const auto mix = testing::make_synthetic_mix(spec);
    SegmentParams params;
    params.threshold = 0.1;
    const auto result = segment_dvs(mix.mixed, mix.original, params);
    REQUIRE(result.segments.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(iou(result.segments[i].interval, mix.bursts[i]) >= 0.9);
}

TEST_CASE("segment_dvs requires matching sample rates") {
    const AudioTrack a{std::vector<double>(4096, 0.0), 16000};
    const AudioTrack b{std::vector<double>(4096, 0.0), 8000};
    CHECK_THROWS_AS(segment_dvs(a, b), Error);
}

TEST_CASE("wav round trip") {
    const auto dir = std::filesystem::temp_directory_path();
    AudioTrack track{{0.0, 0.5, -0.5, 0.25, -1.0}, 16000};
    write_wav(dir / "md_pcm16.wav", track, WavEncoding::pcm16);
    write_wav(dir / "md_f32.wav", track, WavEncoding::float32);
    const auto pcm = read_wav(dir / "md_pcm16.wav");
    const auto flt = read_wav(dir / "md_f32.wav");
    CHECK(pcm.sample_rate == 16000);
    REQUIRE(pcm.samples.size() == track.samples.size());
    REQUIRE(flt.samples.size() == track.samples.size());
    for (std::size_t i = 0; i < track.samples.size(); ++i) {
        CHECK(pcm.samples[i] == doctest::Approx(track.samples[i]).epsilon(1e-4));
        CHECK(flt.samples[i] == doctest::Approx(track.samples[i]).epsilon(1e-7));
    }
    CHECK_THROWS_AS(read_wav(dir / "does_not_exist.wav"), Error);
}
