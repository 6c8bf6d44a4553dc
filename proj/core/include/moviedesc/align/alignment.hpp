#pragma once

#include "moviedesc/align/script.hpp"
#include "moviedesc/align/srt.hpp"
#include "moviedesc/time_interval.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moviedesc::align {

/// Mean script-clip length in the reference corpus; used where a description
/// has an anchor on one side only.
inline constexpr double kDefaultDescriptionDuration = 3.4;
inline constexpr double kDefaultMinScore = 0.5;
inline constexpr int kDefaultDialogueWindow = 2;

/// Lowercase, punctuation removed, digits kept.
std::vector<std::string> normalize_tokens(std::string_view text);

struct WordMatch {
    std::size_t script_token_index = 0;
    std::size_t subtitle_token_index = 0;

    friend bool operator==(const WordMatch &, const WordMatch &) = default;
};

/// Maximum-cardinality order-preserving matching of equal tokens (longest
/// common subsequence). Among maximum matchings the one whose subtitle
/// indices are lexicographically smallest is returned.
std::vector<WordMatch> align_dialogue_dp(const std::vector<std::string> &script_tokens,
                                         const std::vector<std::string> &subtitle_tokens);

/// A token together with where it came from.
struct TokenRef {
    std::size_t element = 0; ///< index into the element / subtitle list
    std::size_t begin = 0;   ///< byte offset in the script (script tokens only)
    std::size_t end = 0;
};

struct TokenStream {
    std::vector<std::string> tokens;
    std::vector<TokenRef> refs;
};

/// Tokens of every dialogue element, in script order.
TokenStream dialogue_tokens(const std::vector<ScriptElement> &elements);
TokenStream subtitle_tokens(const std::vector<SubtitleEntry> &subtitles);

struct Anchor {
    double position = 0.0; ///< script byte offset
    double time_s = 0.0;
};

/// Linear interpolation of a description's [begin, end) script span between
/// two anchors. Either anchor may be missing (boundary description); then the
/// default duration is laid out from the existing one. Throws
/// "unalignable script" if both are missing.
TimeInterval infer_interval(double begin, double end, const std::optional<Anchor> &before,
                            const std::optional<Anchor> &after,
                            double default_duration_s = kDefaultDescriptionDuration);

struct ScoredSentence {
    std::string text;
    TimeInterval interval;
    double score = 0.0;
    std::size_t ordinal = 0;      ///< element ordinal in the script
    bool low_confidence = false;  ///< interval from the default-duration fallback
};

/// Scores every description sentence by the ratio of matched tokens in the
/// `window` dialogue blocks before and after it, and times it from the
/// nearest matched dialogue tokens on either side.
std::vector<ScoredSentence> score_descriptions(const std::vector<ScriptElement> &elements,
                                               const std::vector<WordMatch> &matches,
                                               const std::vector<SubtitleEntry> &subtitles,
                                               int window = kDefaultDialogueWindow);

std::vector<ScoredSentence> filter_reliable(const std::vector<ScoredSentence> &sentences,
                                            double min_score = kDefaultMinScore);

struct AlignOptions {
    ScriptFormat format;
    int window = kDefaultDialogueWindow;
    double min_score = kDefaultMinScore;
    bool keep_all = false;
};

/// parse_script + parse_srt + align_dialogue_dp + score_descriptions (+ filter).
std::vector<ScoredSentence> align_script(std::string_view script_text, std::string_view srt_text,
                                         const AlignOptions &options = {});

} // namespace moviedesc::align
