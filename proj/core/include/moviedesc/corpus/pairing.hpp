#pragma once

#include "moviedesc/corpus/project.hpp"

#include <string>
#include <vector>

namespace moviedesc::corpus {

inline constexpr double kDefaultMinIou = 0.75;

struct SnippetPair {
    std::string dvs_id;
    std::string script_id;
    double iou = 0.0;

    friend bool operator==(const SnippetPair &, const SnippetPair &) = default;
};

/// One-to-one greedy matching: candidate pairs with iou >= min_iou are taken
/// in descending IoU order (ties by dvs position, then script position) and
/// skipped when either side is already used. Output is in selection order.
/// Disjoint intervals never pair. Both lists are expected to come from one
/// movie.
std::vector<SnippetPair> pair_overlapping(const std::vector<Snippet> &dvs, const std::vector<Snippet> &script,
                                          double min_iou = kDefaultMinIou);

/// Pairs the keep-tagged DVS and script snippets of one movie.
std::vector<SnippetPair> pair_movie(const CorpusProject &project, std::string_view movie_id,
                                    double min_iou = kDefaultMinIou);

} // namespace moviedesc::corpus
