#include "moviedesc/baselines/visual_words.hpp"

#include "moviedesc/error.hpp"

#include <algorithm>

namespace moviedesc::baselines {

std::vector<std::string> rank_classes(const std::map<std::string, double> &scores) {
    std::vector<std::pair<std::string, double>> items(scores.begin(), scores.end());
    std::stable_sort(items.begin(), items.end(), [](const auto &a, const auto &b) { return a.second > b.second; });
    std::vector<std::string> out;
    for (auto &[name, _] : items)
        out.push_back(std::move(name));
    return out;
}

VisualWordTuple visual_word_tuple(const std::map<std::string, double> &lsda_scores, const FeatureVector &dt,
                                  const std::map<std::string, double> &places_scores,
                                  const VisualWordCodebook &codebook) {
    if (lsda_scores.size() < 2)
        throw Error("visual_word_tuple: need at least 2 detector classes, got " + std::to_string(lsda_scores.size()));
    if (places_scores.empty())
        throw Error("visual_word_tuple: no scene classes");
    const auto objects = rank_classes(lsda_scores);
    VisualWordTuple t;
    t.subject_label = objects[0];
    t.object_label = objects[1];
    t.activity_word = kmeans_assign(codebook, dt);
    t.scene_label = rank_classes(places_scores).front();
    return t;
}

} // namespace moviedesc::baselines
