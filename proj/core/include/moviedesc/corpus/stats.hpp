#pragma once

#include "moviedesc/corpus/project.hpp"

#include <cstddef>
#include <string>

namespace moviedesc::corpus {

struct SourceStats {
    std::size_t words_before = 0; ///< whitespace tokens over all snippets
    std::size_t words_after = 0;  ///< whitespace tokens over keep-tagged snippets
    std::size_t sentences = 0;    ///< keep-tagged snippets
    double avg_clip_s = 0.0;      ///< mean kept duration; 0 when nothing is kept
    double total_h = 0.0;         ///< summed kept duration in hours

    friend bool operator==(const SourceStats &, const SourceStats &) = default;
};

struct CorpusStats {
    SourceStats dvs;
    SourceStats script;
    SourceStats total;

    const SourceStats &of(Source s) const { return s == Source::dvs ? dvs : script; }
};

/// Word counts split on whitespace with punctuation left attached.
std::size_t count_words(std::string_view sentence);

CorpusStats compute_stats(const CorpusProject &project);

/// Fixed-width table with one row per source plus a total row.
std::string format_stats_table(const CorpusStats &stats);

} // namespace moviedesc::corpus
