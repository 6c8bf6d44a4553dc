#include "moviedesc/corpus/project.hpp"

#include "moviedesc/error.hpp"

#include <array>

namespace moviedesc::corpus {
namespace {

constexpr std::array<std::string_view, 2> kSources{"dvs", "script"};
constexpr std::array<std::string_view, 5> kTags{"keep", "intro_ending", "screen_text", "irrelevant",
                                                "audio_related"};

std::string interval_text(const TimeInterval &iv) {
    return "[" + std::to_string(iv.start_s) + ", " + std::to_string(iv.end_s) + ")";
}

} // namespace

std::string_view to_string(Source s) { return kSources[static_cast<std::size_t>(s)]; }
std::string_view to_string(CurationTag t) { return kTags[static_cast<std::size_t>(t)]; }

Source parse_source(std::string_view text) {
    for (std::size_t i = 0; i < kSources.size(); ++i)
        if (kSources[i] == text)
            return static_cast<Source>(i);
    throw Error("unknown source '" + std::string(text) + "' (expected dvs or script)");
}

CurationTag parse_tag(std::string_view text) {
    for (std::size_t i = 0; i < kTags.size(); ++i)
        if (kTags[i] == text)
            return static_cast<CurationTag>(i);
    throw Error("unknown tag '" + std::string(text) +
                "' (expected keep, intro_ending, screen_text, irrelevant or audio_related)");
}

const MovieInfo *CorpusProject::find_movie(std::string_view id) const {
    const auto it = movies_.find(std::string(id));
    return it == movies_.end() ? nullptr : &it->second;
}

const Snippet *CorpusProject::find_snippet(std::string_view id) const {
    const auto it = index_.find(id);
    return it == index_.end() ? nullptr : &snippets_[it->second];
}

std::vector<Snippet> CorpusProject::movie_snippets(std::string_view movie_id) const {
    std::vector<Snippet> out;
    for (const auto &s : snippets_)
        if (s.movie_id == movie_id)
            out.push_back(s);
    return out;
}

void CorpusProject::set_movie(const std::string &id, MovieInfo info) {
    if (id.empty())
        throw Error("movie id must not be empty");
    if (info.duration_s) {
        if (!(*info.duration_s > 0.0))
            throw Error("movie " + id + ": duration must be positive");
        for (const auto &s : snippets_)
            if (s.movie_id == id && s.interval.end_s > *info.duration_s)
                throw Error("movie " + id + ": duration " + std::to_string(*info.duration_s) +
                            " s ends before snippet " + s.id);
    }
    movies_[id] = std::move(info);
    ++revision_;
}

void CorpusProject::check_snippet(const Snippet &s) const {
    if (s.id.empty())
        throw Error("snippet id must not be empty");
    if (!s.interval.valid())
        throw Error("snippet " + s.id + ": invalid interval " + interval_text(s.interval));
    const auto *movie = find_movie(s.movie_id);
    if (!movie)
        throw Error("snippet " + s.id + ": unknown movie '" + s.movie_id + "'");
    if (movie->duration_s && s.interval.end_s > *movie->duration_s)
        throw Error("snippet " + s.id + ": interval " + interval_text(s.interval) + " exceeds movie duration " +
                    std::to_string(*movie->duration_s) + " s");
}

std::size_t CorpusProject::index_of(std::string_view id) const {
    const auto it = index_.find(id);
    if (it == index_.end())
        throw Error("unknown snippet '" + std::string(id) + "'");
    return it->second;
}

void CorpusProject::add_snippet(Snippet snippet) {
    check_snippet(snippet);
    if (index_.contains(snippet.id))
        throw Error("duplicate snippet id '" + snippet.id + "'");
    index_.emplace(snippet.id, snippets_.size());
    snippets_.push_back(std::move(snippet));
    ++revision_;
}

void CorpusProject::replace_snippet(Snippet snippet) {
    const auto i = index_of(snippet.id);
    if (snippets_[i].locked)
        throw Error("snippet " + snippet.id + " is locked");
    check_snippet(snippet);
    snippets_[i] = std::move(snippet);
    ++revision_;
}

const Snippet &CorpusProject::apply_patch(std::string_view id, const SnippetPatch &patch) {
    const auto i = index_of(id);
    Snippet next = snippets_[i];
    if (patch.interval)
        next.interval = *patch.interval;
    if (patch.sentence)
        next.sentence = *patch.sentence;
    if (patch.tag)
        next.tag = *patch.tag;
    if (patch.locked)
        next.locked = *patch.locked;
    check_snippet(next);
    snippets_[i] = std::move(next);
    ++revision_;
    return snippets_[i];
}

void CorpusProject::validate() const {
    std::map<std::string_view, int> seen;
    for (const auto &s : snippets_) {
        check_snippet(s);
        if (++seen[s.id] > 1)
            throw Error("duplicate snippet id '" + s.id + "'");
    }
}

} // namespace moviedesc::corpus
