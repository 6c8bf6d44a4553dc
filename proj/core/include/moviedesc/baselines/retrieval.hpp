#pragma once

#include "moviedesc/baselines/features.hpp"

#include <string>
#include <vector>

namespace moviedesc::baselines {

struct TrainingItem {
    FeatureVector feature;
    std::string sentence;
};

struct Neighbor {
    std::size_t index = 0;
    double distance = 0.0;
    std::string sentence;
};

/// Exhaustive scan by intersection distance; the earliest index wins ties.
/// Throws on an empty training set or a feature name/dimension mismatch.
Neighbor nearest_neighbor(const FeatureVector &query, const std::vector<TrainingItem> &training);

} // namespace moviedesc::baselines
