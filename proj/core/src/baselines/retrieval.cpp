#include "moviedesc/baselines/retrieval.hpp"

#include "moviedesc/error.hpp"

namespace moviedesc::baselines {

Neighbor nearest_neighbor(const FeatureVector &query, const std::vector<TrainingItem> &training) {
    if (training.empty())
        throw Error("nearest_neighbor: empty training set");
    Neighbor best;
    for (std::size_t i = 0; i < training.size(); ++i) {
        const auto &f = training[i].feature;
        if (f.feature_name != query.feature_name)
            throw Error("nearest_neighbor: training item " + std::to_string(i) + " has feature '" + f.feature_name +
                        "', query has '" + query.feature_name + "'");
        const double d = intersection_distance(query, f);
        if (i == 0 || d < best.distance) {
            best.index = i;
            best.distance = d;
        }
    }
    best.sentence = training[best.index].sentence;
    return best;
}

} // namespace moviedesc::baselines
