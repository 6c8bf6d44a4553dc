#pragma once

#include "moviedesc/corpus/project.hpp"
#include "moviedesc/signal/segmenter.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

namespace moviedesc::corpus {

/// HTTP-agnostic result of one API call: a status code and a JSON body.
struct ApiResponse {
    int status = 200;
    std::string body;
};

/// {"frame_rate", "time_offset_s", "lag", "scores"}; used for curve files and
/// API payloads.
std::string curve_to_json(const signal::DifferenceCurve &curve);
signal::DifferenceCurve curve_from_json(std::string_view text);

/// Loads media["curve"] when present, otherwise runs segment_dvs on
/// media["mixed"] and media["original"]. Throws Error when neither exists.
signal::DifferenceCurve curve_from_media(const MovieInfo &movie);

using CurveProvider = std::function<signal::DifferenceCurve(const std::string &movie_id, const MovieInfo &)>;

/// Single owner of a project for the curation API. Readers run concurrently;
/// mutations are serialized and, when a store path is set, persisted before
/// they become visible.
class CurationService {
  public:
    explicit CurationService(CorpusProject project, std::optional<std::filesystem::path> store = std::nullopt,
                             CurveProvider curves = {});

    /// GET /project: movies, snippets, stats and revision.
    ApiResponse get_project() const;
    /// GET /movies/{id}/snippets
    ApiResponse get_movie_snippets(std::string_view movie_id) const;
    /// PATCH /snippets/{id}. Body fields: expected_revision (required),
    /// start_s, end_s, sentence, tag, locked. A stale expected_revision
    /// yields 409 and leaves the project untouched.
    ApiResponse patch_snippet(std::string_view id, std::string_view body);
    /// GET /movies/{id}/difference_curve, max-pooled to at most `points`.
    ApiResponse get_difference_curve(std::string_view movie_id, std::size_t points) const;
    /// GET /pairs?movie={id}&min_iou=
    ApiResponse get_pairs(std::string_view movie_id, double min_iou) const;

    CorpusProject snapshot() const;
    std::uint64_t revision() const;

  private:
    mutable std::shared_mutex mutex_;
    CorpusProject project_;
    std::optional<std::filesystem::path> store_;
    CurveProvider curves_;
    mutable std::mutex curve_mutex_;
    mutable std::map<std::string, signal::DifferenceCurve, std::less<>> curve_cache_;
};

} // namespace moviedesc::corpus
