#include "moviedesc/baselines/crf.hpp"

#include "moviedesc/error.hpp"
#include "util/io.hpp"
#include "util/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace moviedesc::baselines {
namespace {

constexpr std::string_view kNodes[] = {"verb", "object", "location"};

std::size_t idx(CrfNode n) { return static_cast<std::size_t>(n); }

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace

std::string_view to_string(CrfNode node) { return kNodes[idx(node)]; }

CrfNode parse_crf_node(std::string_view text) {
    for (std::size_t i = 0; i < 3; ++i)
        if (kNodes[i] == text)
            return static_cast<CrfNode>(i);
    throw Error("unknown CRF node '" + std::string(text) + "' (expected verb, object or location)");
}

std::map<std::string, double> &UnaryScores::at(CrfNode node) {
    return node == CrfNode::verb ? verb : node == CrfNode::object ? object : location;
}

const std::map<std::string, double> &UnaryScores::at(CrfNode node) const {
    return node == CrfNode::verb ? verb : node == CrfNode::object ? object : location;
}

PairwisePotentials::PairwisePotentials(std::vector<std::string> verbs, std::vector<std::string> objects,
                                       std::vector<std::string> locations, double alpha, semantic::LabelMode mode)
    : alpha_(alpha), mode_(mode) {
    labels_[0] = std::move(verbs);
    labels_[1] = std::move(objects);
    labels_[2] = std::move(locations);
    for (auto &l : labels_) {
        if (l.empty())
            throw Error("pairwise potentials: empty vocabulary");
        std::sort(l.begin(), l.end());
        if (std::adjacent_find(l.begin(), l.end()) != l.end())
            throw Error("pairwise potentials: duplicate label");
    }
    if (!(alpha > 0.0))
        throw Error("pairwise potentials: alpha must be positive");
    verb_object_.assign(labels_[0].size() * labels_[1].size(), 0.0);
    verb_location_.assign(labels_[0].size() * labels_[2].size(), 0.0);
    object_location_.assign(labels_[1].size() * labels_[2].size(), 0.0);
}

const std::vector<std::string> &PairwisePotentials::labels(CrfNode node) const { return labels_[idx(node)]; }

std::optional<std::size_t> PairwisePotentials::index(CrfNode node, std::string_view label) const {
    const auto &l = labels_[idx(node)];
    const auto it = std::lower_bound(l.begin(), l.end(), label);
    if (it == l.end() || *it != label)
        return std::nullopt;
    return static_cast<std::size_t>(it - l.begin());
}

std::vector<double> &PairwisePotentials::table(CrfNode a, CrfNode b) {
    return const_cast<std::vector<double> &>(static_cast<const PairwisePotentials *>(this)->table(a, b));
}

const std::vector<double> &PairwisePotentials::table(CrfNode a, CrfNode b) const {
    if (a == CrfNode::verb && b == CrfNode::object)
        return verb_object_;
    if (a == CrfNode::verb && b == CrfNode::location)
        return verb_location_;
    if (a == CrfNode::object && b == CrfNode::location)
        return object_location_;
    throw Error("pairwise potentials: node pair must be in verb, object, location order");
}

double PairwisePotentials::value_at(CrfNode a, std::size_t ia, CrfNode b, std::size_t ib) const {
    return table(a, b)[ia * labels_[idx(b)].size() + ib];
}

double PairwisePotentials::value(CrfNode a, std::string_view label_a, CrfNode b, std::string_view label_b) const {
    const auto ia = index(a, label_a);
    const auto ib = index(b, label_b);
    if (!ia || !ib)
        throw Error("pairwise potentials: label pair (" + std::string(label_a) + ", " + std::string(label_b) +
                    ") outside the vocabulary");
    return value_at(a, *ia, b, *ib);
}

void PairwisePotentials::count(std::size_t verb, std::size_t object, std::size_t location) {
    const auto nv = labels_[1].size();
    const auto nl = labels_[2].size();
    verb_object_[verb * nv + object] += 1.0;
    verb_location_[verb * nl + location] += 1.0;
    object_location_[object * nl + location] += 1.0;
    ++n_;
}

void PairwisePotentials::finalize() {
    if (finalized_)
        throw Error("pairwise potentials: already finalized");
    const auto n = static_cast<double>(n_);
    const auto smooth = [&](std::vector<double> &t, std::size_t nu, std::size_t nv) {
        const double denom = n + alpha_ * static_cast<double>(nu) * static_cast<double>(nv);
        for (auto &c : t)
            c = std::log((c + alpha_) / denom);
    };
    smooth(verb_object_, labels_[0].size(), labels_[1].size());
    smooth(verb_location_, labels_[0].size(), labels_[2].size());
    smooth(object_location_, labels_[1].size(), labels_[2].size());
    finalized_ = true;
}

PairwiseFit fit_pairwise(const std::vector<semantic::SRTuple> &tuples, const semantic::LabelVocab &verbs,
                         const semantic::LabelVocab &objects, const semantic::LabelVocab &locations, double alpha) {
    if (tuples.empty())
        throw Error("fit_pairwise: empty tuple list");
    const auto mode = tuples.front().mode;
    for (const auto &t : tuples)
        if (t.mode != mode)
            throw Error("fit_pairwise: tuples mix label modes");
    PairwiseFit fit;
    fit.potentials = PairwisePotentials(verbs.labels(), objects.labels(), locations.labels(), alpha, mode);
    auto &p = fit.potentials;
    for (const auto &t : tuples) {
        if (!t.object || !t.location) {
            ++fit.skipped;
            continue;
        }
        const auto v = p.index(CrfNode::verb, t.verb);
        const auto o = p.index(CrfNode::object, *t.object);
        const auto l = p.index(CrfNode::location, *t.location);
        if (!v || !o || !l) {
            ++fit.skipped;
            continue;
        }
        p.count(*v, *o, *l);
        ++fit.used;
    }
    p.finalize();
    return fit;
}

CrfMapResult crf_map(const UnaryScores &unaries, const PairwisePotentials &potentials, const CrfMapOptions &options) {
    struct Candidate {
        std::string label;
        std::size_t index;
        double score;
    };
    std::vector<Candidate> nodes[3];
    for (std::size_t n = 0; n < 3; ++n) {
        const auto node = static_cast<CrfNode>(n);
        const auto &scores = unaries.at(node);
        if (scores.empty())
            throw Error("crf_map: node " + std::string(kNodes[n]) + " has no scored labels");
        for (const auto &[label, score] : scores) {
            const auto i = potentials.index(node, label);
            if (!i)
                throw Error("crf_map: " + std::string(kNodes[n]) + " label '" + label +
                            "' is not in the pairwise vocabulary");
            nodes[n].push_back({label, *i, score});
        }
        if (options.top_k && *options.top_k < nodes[n].size()) {
            if (*options.top_k == 0)
                throw Error("crf_map: top_k must be at least 1");
            auto &c = nodes[n];
            std::stable_sort(c.begin(), c.end(), [](const auto &a, const auto &b) { return a.score > b.score; });
            c.resize(*options.top_k);
            std::sort(c.begin(), c.end(), [](const auto &a, const auto &b) { return a.label < b.label; });
        }
    }
    const double wu = options.weights.unary;
    const double wp = options.weights.pairwise;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t bv = 0, bo = 0, bl = 0;
    bool found = false;
    for (std::size_t v = 0; v < nodes[0].size(); ++v) {
        const auto &cv = nodes[0][v];
        for (std::size_t o = 0; o < nodes[1].size(); ++o) {
            const auto &co = nodes[1][o];
            const double vo = wu * (cv.score + co.score) +
                              wp * potentials.value_at(CrfNode::verb, cv.index, CrfNode::object, co.index);
            for (std::size_t l = 0; l < nodes[2].size(); ++l) {
                const auto &cl = nodes[2][l];
                const double s = vo + wu * cl.score +
                                 wp * (potentials.value_at(CrfNode::verb, cv.index, CrfNode::location, cl.index) +
                                       potentials.value_at(CrfNode::object, co.index, CrfNode::location, cl.index));
                if (!found || s > best) {
                    found = true;
                    best = s;
                    bv = v;
                    bo = o;
                    bl = l;
                }
            }
        }
    }
    CrfMapResult r;
    r.tuple.mode = potentials.mode();
    r.tuple.verb = nodes[0][bv].label;
    r.tuple.object = nodes[1][bo].label;
    r.tuple.location = nodes[2][bl].label;
    r.score = best;
    return r;
}

std::map<std::string, UnaryScores> read_unaries(const std::filesystem::path &path) {
    std::map<std::string, UnaryScores> out;
    std::size_t n = 0;
    const auto text = util::read_file(path);
    for (const auto line : util::split_lines(text)) {
        ++n;
        if (util::trim(line).empty() || (n == 1 && line.starts_with("snippet_id")))
            continue;
        const auto where = path.string() + ":" + std::to_string(n) + ": ";
        const auto cells = util::split(line, ',');
        if (cells.size() != 4 || cells[0].empty() || cells[2].empty())
            throw Error(where + "expected snippet_id,node,label,score");
        double score = 0.0;
        const auto [ptr, ec] = std::from_chars(cells[3].data(), cells[3].data() + cells[3].size(), score);
        if (ec != std::errc() || ptr != cells[3].data() + cells[3].size() || !std::isfinite(score))
            throw Error(where + "bad score '" + std::string(cells[3]) + "'");
        CrfNode node{};
        try {
            node = parse_crf_node(cells[1]);
        } catch (const Error &e) {
            throw Error(where + e.what());
        }
        auto &scores = out[std::string(cells[0])].at(node);
        if (!scores.emplace(std::string(cells[2]), score).second)
            throw Error(where + "duplicate label '" + std::string(cells[2]) + "' for snippet " +
                        std::string(cells[0]));
    }
    return out;
}

void write_unaries(const std::filesystem::path &path, const std::map<std::string, UnaryScores> &unaries) {
    std::string out = "snippet_id,node,label,score\n";
    for (const auto &[id, u] : unaries)
        for (std::size_t n = 0; n < 3; ++n)
            for (const auto &[label, score] : u.at(static_cast<CrfNode>(n)))
                out += id + "," + std::string(kNodes[n]) + "," + label + "," + format_double(score) + "\n";
    util::write_file_atomic(path, out);
}

std::map<std::string, UnaryScores> sum_unaries(const std::vector<std::map<std::string, UnaryScores>> &sets) {
    std::map<std::string, UnaryScores> out;
    for (const auto &set : sets)
        for (const auto &[id, u] : set)
            for (std::size_t n = 0; n < 3; ++n) {
                const auto node = static_cast<CrfNode>(n);
                for (const auto &[label, score] : u.at(node))
                    out[id].at(node)[label] += score;
            }
    return out;
}

void save_potentials(const PairwisePotentials &p, const std::filesystem::path &path) {
    nlohmann::ordered_json j;
    j["mode"] = semantic::to_string(p.mode_);
    j["alpha"] = p.alpha_;
    j["tuples"] = p.n_;
    j["verbs"] = p.labels_[0];
    j["objects"] = p.labels_[1];
    j["locations"] = p.labels_[2];
    j["verb_object"] = p.verb_object_;
    j["verb_location"] = p.verb_location_;
    j["object_location"] = p.object_location_;
    util::write_file_atomic(path, j.dump() + "\n");
}

PairwisePotentials load_potentials(const std::filesystem::path &path) {
    try {
        const auto j = nlohmann::json::parse(util::read_file(path));
        PairwisePotentials p(j.at("verbs").get<std::vector<std::string>>(),
                             j.at("objects").get<std::vector<std::string>>(),
                             j.at("locations").get<std::vector<std::string>>(), j.at("alpha").get<double>(),
                             semantic::parse_label_mode(j.at("mode").get<std::string>()));
        const auto fill = [&](const char *key, std::vector<double> &t) {
            auto v = j.at(key).get<std::vector<double>>();
            if (v.size() != t.size())
                throw Error(path.string() + ": table '" + key + "' has the wrong size");
            t = std::move(v);
        };
        fill("verb_object", p.verb_object_);
        fill("verb_location", p.verb_location_);
        fill("object_location", p.object_location_);
        p.n_ = j.at("tuples").get<std::size_t>();
        p.finalized_ = true;
        return p;
    } catch (const nlohmann::json::exception &e) {
        throw Error(path.string() + ": " + e.what());
    }
}

} // namespace moviedesc::baselines
