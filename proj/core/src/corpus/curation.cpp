#include "moviedesc/corpus/curation.hpp"

#include "corpus/codec.hpp"
#include "moviedesc/corpus/pairing.hpp"
#include "moviedesc/corpus/persistence.hpp"
#include "moviedesc/corpus/stats.hpp"
#include "moviedesc/error.hpp"
#include "moviedesc/signal/audio.hpp"
#include "util/io.hpp"

namespace moviedesc::corpus {
namespace {

using codec::Json;

ApiResponse respond(int status, const Json &body) { return {status, body.dump()}; }

ApiResponse error_response(int status, std::string message) {
    Json j;
    j["error"] = std::move(message);
    return respond(status, j);
}

Json stats_to_json(const SourceStats &s) {
    Json j;
    j["words_before"] = s.words_before;
    j["words_after"] = s.words_after;
    j["sentences"] = s.sentences;
    j["avg_clip_s"] = s.avg_clip_s;
    j["total_h"] = s.total_h;
    return j;
}

Json curve_json(const signal::DifferenceCurve &curve) {
    Json j;
    j["frame_rate"] = curve.frame_rate;
    j["time_offset_s"] = curve.time_offset_s;
    j["lag"] = curve.lag;
    j["scores"] = curve.scores;
    return j;
}

} // namespace

std::string curve_to_json(const signal::DifferenceCurve &curve) { return curve_json(curve).dump(); }

signal::DifferenceCurve curve_from_json(std::string_view text) {
    try {
        const auto j = Json::parse(text);
        signal::DifferenceCurve c;
        c.frame_rate = j.at("frame_rate").get<double>();
        c.time_offset_s = j.at("time_offset_s").get<double>();
        c.lag = j.at("lag").get<int>();
        c.scores = j.at("scores").get<std::vector<double>>();
        if (!(c.frame_rate > 0.0))
            throw Error("curve frame_rate must be positive");
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw Error(std::string("invalid curve: ") + e.what());
    }
}

signal::DifferenceCurve curve_from_media(const MovieInfo &movie) {
    if (const auto it = movie.media.find("curve"); it != movie.media.end())
        return curve_from_json(util::read_file(it->second));
    const auto mixed = movie.media.find("mixed");
    const auto original = movie.media.find("original");
    if (mixed == movie.media.end() || original == movie.media.end())
        throw Error("movie '" + movie.title + "' has no curve or mixed/original audio");
    return signal::segment_dvs(signal::read_wav(mixed->second), signal::read_wav(original->second)).curve;
}

CurationService::CurationService(CorpusProject project, std::optional<std::filesystem::path> store,
                                 CurveProvider curves)
    : project_(std::move(project)), store_(std::move(store)), curves_(std::move(curves)) {
    project_.validate();
    if (!curves_)
        curves_ = [](const std::string &, const MovieInfo &m) { return curve_from_media(m); };
}

CorpusProject CurationService::snapshot() const {
    std::shared_lock lock(mutex_);
    return project_;
}

std::uint64_t CurationService::revision() const {
    std::shared_lock lock(mutex_);
    return project_.revision();
}

ApiResponse CurationService::get_project() const {
    std::shared_lock lock(mutex_);
    Json j;
    j["revision"] = project_.revision();
    j["movies"] = Json::array();
    for (const auto &[id, movie] : project_.movies())
        j["movies"].push_back(codec::movie_to_json(id, movie));
    j["snippets"] = Json::array();
    for (const auto &s : project_.snippets())
        j["snippets"].push_back(codec::snippet_to_json(s));
    const auto stats = compute_stats(project_);
    j["stats"]["dvs"] = stats_to_json(stats.dvs);
    j["stats"]["script"] = stats_to_json(stats.script);
    j["stats"]["total"] = stats_to_json(stats.total);
    return respond(200, j);
}

ApiResponse CurationService::get_movie_snippets(std::string_view movie_id) const {
    std::shared_lock lock(mutex_);
    if (!project_.find_movie(movie_id))
        return error_response(404, "unknown movie '" + std::string(movie_id) + "'");
    Json j;
    j["revision"] = project_.revision();
    j["movie"] = movie_id;
    j["snippets"] = Json::array();
    for (const auto &s : project_.snippets())
        if (s.movie_id == movie_id)
            j["snippets"].push_back(codec::snippet_to_json(s));
    return respond(200, j);
}

ApiResponse CurationService::patch_snippet(std::string_view id, std::string_view body) {
    Json j;
    try {
        j = Json::parse(body);
    } catch (const nlohmann::json::parse_error &) {
        return error_response(400, "body is not valid JSON");
    }
    if (!j.is_object())
        return error_response(400, "body must be a JSON object");
    for (const auto &[key, _] : j.items())
        if (key != "expected_revision" && key != "start_s" && key != "end_s" && key != "sentence" && key != "tag" &&
            key != "locked")
            return error_response(400, "unknown field '" + key + "'");
    if (!j.contains("expected_revision") || !j["expected_revision"].is_number_unsigned())
        return error_response(400, "expected_revision (non-negative integer) is required");
    const auto expected = j["expected_revision"].get<std::uint64_t>();

    SnippetPatch patch;
    std::optional<double> start;
    std::optional<double> end;
    try {
        if (j.contains("start_s"))
            start = j["start_s"].get<double>();
        if (j.contains("end_s"))
            end = j["end_s"].get<double>();
        if (j.contains("sentence"))
            patch.sentence = j["sentence"].get<std::string>();
        if (j.contains("tag"))
            patch.tag = parse_tag(j["tag"].get<std::string>());
        if (j.contains("locked"))
            patch.locked = j["locked"].get<bool>();
    } catch (const nlohmann::json::exception &) {
        return error_response(400, "mistyped field in body");
    } catch (const Error &e) {
        return error_response(400, e.what());
    }

    std::unique_lock lock(mutex_);
    if (expected != project_.revision()) {
        Json conflict;
        conflict["error"] = "stale revision";
        conflict["expected_revision"] = expected;
        conflict["revision"] = project_.revision();
        return respond(409, conflict);
    }
    const auto *current = project_.find_snippet(id);
    if (!current)
        return error_response(404, "unknown snippet '" + std::string(id) + "'");
    if (start || end)
        patch.interval = TimeInterval{start.value_or(current->interval.start_s), end.value_or(current->interval.end_s)};
    if (patch.empty())
        return error_response(400, "patch changes nothing");

    CorpusProject next = project_;
    try {
        next.apply_patch(id, patch);
    } catch (const Error &e) {
        return error_response(400, e.what());
    }
    if (store_) {
        try {
            save_project(next, *store_);
        } catch (const Error &e) {
            return error_response(500, e.what());
        }
    }
    project_ = std::move(next);
    Json ok;
    ok["revision"] = project_.revision();
    ok["snippet"] = codec::snippet_to_json(*project_.find_snippet(id));
    return respond(200, ok);
}

ApiResponse CurationService::get_difference_curve(std::string_view movie_id, std::size_t points) const {
    MovieInfo movie;
    {
        std::shared_lock lock(mutex_);
        const auto *m = project_.find_movie(movie_id);
        if (!m)
            return error_response(404, "unknown movie '" + std::string(movie_id) + "'");
        movie = *m;
    }
    signal::DifferenceCurve curve;
    {
        std::lock_guard lock(curve_mutex_);
        auto it = curve_cache_.find(movie_id);
        if (it == curve_cache_.end()) {
            try {
                it = curve_cache_.emplace(std::string(movie_id), curves_(std::string(movie_id), movie)).first;
            } catch (const Error &e) {
                return error_response(404, e.what());
            }
        }
        curve = it->second;
    }
    auto j = curve_json(signal::downsample(curve, points));
    j["movie"] = movie_id;
    j["suggested_threshold"] = curve.scores.empty() ? 0.0 : signal::threshold_report(curve).suggested;
    return respond(200, j);
}

ApiResponse CurationService::get_pairs(std::string_view movie_id, double min_iou) const {
    if (!(min_iou >= 0.0 && min_iou <= 1.0))
        return error_response(400, "min_iou must lie in [0, 1]");
    std::shared_lock lock(mutex_);
    if (!project_.find_movie(movie_id))
        return error_response(404, "unknown movie '" + std::string(movie_id) + "'");
    Json j;
    j["revision"] = project_.revision();
    j["movie"] = movie_id;
    j["min_iou"] = min_iou;
    j["pairs"] = Json::array();
    for (const auto &p : pair_movie(project_, movie_id, min_iou)) {
        Json pj;
        pj["dvs_id"] = p.dvs_id;
        pj["script_id"] = p.script_id;
        pj["iou"] = p.iou;
        j["pairs"].push_back(pj);
    }
    return respond(200, j);
}

} // namespace moviedesc::corpus
