#pragma once

#include "moviedesc/time_interval.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moviedesc::corpus {

enum class Source { dvs, script };

/// Curation outcome. Everything except `keep` filters the sentence out of
/// the curated corpus.
enum class CurationTag { keep, intro_ending, screen_text, irrelevant, audio_related };

std::string_view to_string(Source s);
std::string_view to_string(CurationTag t);
Source parse_source(std::string_view text);
CurationTag parse_tag(std::string_view text);

struct Snippet {
    std::string id;
    std::string movie_id;
    TimeInterval interval;
    std::string sentence;
    Source source = Source::dvs;
    std::optional<double> score;
    CurationTag tag = CurationTag::keep;
    bool locked = false; ///< human-confirmed

    friend bool operator==(const Snippet &, const Snippet &) = default;
};

struct MovieInfo {
    std::string title;
    std::optional<double> duration_s;
    /// Role → path, e.g. "mixed", "original", "script", "subtitles".
    std::map<std::string, std::string> media;

    friend bool operator==(const MovieInfo &, const MovieInfo &) = default;
};

/// Partial update applied through the curation path.
struct SnippetPatch {
    std::optional<TimeInterval> interval;
    std::optional<std::string> sentence;
    std::optional<CurationTag> tag;
    std::optional<bool> locked;

    bool empty() const { return !interval && !sentence && !tag && !locked; }
};

/// Movies plus an ordered snippet list. Every mutation bumps `revision()`.
/// Not synchronized; concurrent access goes through a single owner.
class CorpusProject {
  public:
    CorpusProject() = default;

    const std::map<std::string, MovieInfo> &movies() const { return movies_; }
    const std::vector<Snippet> &snippets() const { return snippets_; }
    std::uint64_t revision() const { return revision_; }

    const MovieInfo *find_movie(std::string_view id) const;
    const Snippet *find_snippet(std::string_view id) const;
    std::vector<Snippet> movie_snippets(std::string_view movie_id) const;

    /// Adds or replaces movie metadata. Shrinking a duration below an
    /// existing snippet end is an error.
    void set_movie(const std::string &id, MovieInfo info);

    /// Appends a snippet; the id must be new and the movie known.
    void add_snippet(Snippet snippet);

    /// Replaces an unlocked snippet with the same id. Locked snippets change
    /// only through apply_patch.
    void replace_snippet(Snippet snippet);

    /// Curation path: applies the patch to any snippet, locked or not.
    const Snippet &apply_patch(std::string_view id, const SnippetPatch &patch);

    /// Throws Error naming the first violated invariant.
    void validate() const;

    /// Loader hook: sets the counter without counting as a mutation.
    void restore_revision(std::uint64_t revision) { revision_ = revision; }

    friend bool operator==(const CorpusProject &, const CorpusProject &) = default;

  private:
    void check_snippet(const Snippet &s) const;
    std::size_t index_of(std::string_view id) const;

    std::map<std::string, MovieInfo> movies_;
    std::vector<Snippet> snippets_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::uint64_t revision_ = 0;
};

} // namespace moviedesc::corpus
