#pragma once

#include "moviedesc/semantic/sr.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace moviedesc::baselines {

/// The three CRF nodes. SUBJECT is not modeled.
enum class CrfNode { verb, object, location };

std::string_view to_string(CrfNode node);
CrfNode parse_crf_node(std::string_view text);

/// Per-node classifier responses, label → score.
struct UnaryScores {
    std::map<std::string, double> verb;
    std::map<std::string, double> object;
    std::map<std::string, double> location;

    std::map<std::string, double> &at(CrfNode node);
    const std::map<std::string, double> &at(CrfNode node) const;

    friend bool operator==(const UnaryScores &, const UnaryScores &) = default;
};

/// Smoothed log co-occurrence for the node pairs (verb, object),
/// (verb, location) and (object, location):
///   log((count(u, v) + alpha) / (N + alpha * |U| * |V|))
/// where N is the number of tuples used. Defined for every vocabulary pair.
class PairwisePotentials {
  public:
    PairwisePotentials() = default;
    PairwisePotentials(std::vector<std::string> verbs, std::vector<std::string> objects,
                       std::vector<std::string> locations, double alpha, semantic::LabelMode mode);

    const std::vector<std::string> &labels(CrfNode node) const;
    std::optional<std::size_t> index(CrfNode node, std::string_view label) const;

    /// `a` must precede `b` in node order. Throws for labels outside the
    /// vocabulary.
    double value(CrfNode a, std::string_view label_a, CrfNode b, std::string_view label_b) const;
    double value_at(CrfNode a, std::size_t ia, CrfNode b, std::size_t ib) const;

    std::size_t tuples() const { return n_; }
    double alpha() const { return alpha_; }
    semantic::LabelMode mode() const { return mode_; }

    /// Adds one observed (verb, object, location) triple by index.
    void count(std::size_t verb, std::size_t object, std::size_t location);
    /// Turns counts into log potentials; called once after counting.
    void finalize();

    friend bool operator==(const PairwisePotentials &, const PairwisePotentials &) = default;

  private:
    friend void save_potentials(const PairwisePotentials &, const std::filesystem::path &);
    friend PairwisePotentials load_potentials(const std::filesystem::path &);

    std::vector<double> &table(CrfNode a, CrfNode b);
    const std::vector<double> &table(CrfNode a, CrfNode b) const;

    std::vector<std::string> labels_[3];
    std::vector<double> verb_object_;
    std::vector<double> verb_location_;
    std::vector<double> object_location_;
    std::size_t n_ = 0;
    double alpha_ = 1.0;
    semantic::LabelMode mode_ = semantic::LabelMode::sense;
    bool finalized_ = false;
};

struct PairwiseFit {
    PairwisePotentials potentials;
    std::size_t used = 0;
    /// Tuples with an empty slot or a label outside its vocabulary.
    std::size_t skipped = 0;
};

/// Throws for an empty tuple list, an empty vocabulary, mixed label modes or
/// alpha <= 0.
PairwiseFit fit_pairwise(const std::vector<semantic::SRTuple> &tuples, const semantic::LabelVocab &verbs,
                         const semantic::LabelVocab &objects, const semantic::LabelVocab &locations,
                         double alpha = 1.0);

struct CrfWeights {
    double unary = 1.0;
    double pairwise = 1.0;
};

struct CrfMapOptions {
    CrfWeights weights;
    /// Keep only the k best-scoring labels per node before enumerating.
    std::optional<std::size_t> top_k;
};

struct CrfMapResult {
    semantic::SRTuple tuple;
    double score = 0.0;
};

/// Exact MAP by enumerating the label product of the three nodes; the
/// lexicographically smallest (verb, object, location) wins ties. Throws when
/// a node has no labels or a label is outside the potentials' vocabulary.
CrfMapResult crf_map(const UnaryScores &unaries, const PairwisePotentials &potentials,
                     const CrfMapOptions &options = {});

/// CSV rows "snippet_id,node,label,score" with an optional header line.
std::map<std::string, UnaryScores> read_unaries(const std::filesystem::path &path);
void write_unaries(const std::filesystem::path &path, const std::map<std::string, UnaryScores> &unaries);

/// Sums scores of the same (snippet, node, label) across feature-specific
/// unary sets; labels missing from some sets contribute only where present.
std::map<std::string, UnaryScores> sum_unaries(const std::vector<std::map<std::string, UnaryScores>> &sets);

void save_potentials(const PairwisePotentials &potentials, const std::filesystem::path &path);
PairwisePotentials load_potentials(const std::filesystem::path &path);

} // namespace moviedesc::baselines
