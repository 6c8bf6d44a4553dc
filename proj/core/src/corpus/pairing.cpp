#include "moviedesc/corpus/pairing.hpp"

#include "moviedesc/error.hpp"

#include <algorithm>

namespace moviedesc::corpus {

std::vector<SnippetPair> pair_overlapping(const std::vector<Snippet> &dvs, const std::vector<Snippet> &script,
                                          double min_iou) {
    struct Candidate {
        std::size_t d;
        std::size_t s;
        double iou;
    };
    std::vector<Candidate> candidates;
    for (std::size_t d = 0; d < dvs.size(); ++d)
        for (std::size_t s = 0; s < script.size(); ++s) {
            const double v = iou(dvs[d].interval, script[s].interval);
            if (v > 0.0 && v >= min_iou)
                candidates.push_back({d, s, v});
        }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate &a, const Candidate &b) {
        if (a.iou != b.iou)
            return a.iou > b.iou;
        return a.d != b.d ? a.d < b.d : a.s < b.s;
    });
    std::vector<bool> used_d(dvs.size(), false);
    std::vector<bool> used_s(script.size(), false);
    std::vector<SnippetPair> out;
    for (const auto &c : candidates) {
        if (used_d[c.d] || used_s[c.s])
            continue;
        used_d[c.d] = used_s[c.s] = true;
        out.push_back({dvs[c.d].id, script[c.s].id, c.iou});
    }
    return out;
}

std::vector<SnippetPair> pair_movie(const CorpusProject &project, std::string_view movie_id, double min_iou) {
    if (!project.find_movie(movie_id))
        throw Error("unknown movie '" + std::string(movie_id) + "'");
    std::vector<Snippet> dvs;
    std::vector<Snippet> script;
    for (const auto &s : project.snippets()) {
        if (s.movie_id != movie_id || s.tag != CurationTag::keep)
            continue;
        (s.source == Source::dvs ? dvs : script).push_back(s);
    }
    return pair_overlapping(dvs, script, min_iou);
}

} // namespace moviedesc::corpus
