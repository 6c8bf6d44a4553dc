#pragma once

#include "moviedesc/baselines/kmeans.hpp"

#include <map>
#include <string>

namespace moviedesc::baselines {

/// Detector-derived stand-in for an SR: subject and object are the two best
/// object-detector classes, activity the DT visual word, scene the best
/// scene class.
struct VisualWordTuple {
    std::string subject_label;
    std::size_t activity_word = 0;
    std::string object_label;
    std::string scene_label;

    friend bool operator==(const VisualWordTuple &, const VisualWordTuple &) = default;
};

/// Classes ranked by descending score, ties by class name.
std::vector<std::string> rank_classes(const std::map<std::string, double> &scores);

/// Throws with fewer than two detector classes, no scene classes or a DT
/// dimension that differs from the codebook.
VisualWordTuple visual_word_tuple(const std::map<std::string, double> &lsda_scores, const FeatureVector &dt,
                                  const std::map<std::string, double> &places_scores,
                                  const VisualWordCodebook &codebook);

} // namespace moviedesc::baselines
