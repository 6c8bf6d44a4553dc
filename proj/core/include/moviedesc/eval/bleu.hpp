#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace moviedesc::eval {

/// One candidate sentence and its references, already tokenized and
/// lowercased.
struct EvalPair {
    std::string snippet_id;
    std::vector<std::string> candidate;
    std::vector<std::vector<std::string>> references;

    friend bool operator==(const EvalPair &, const EvalPair &) = default;
};

inline constexpr std::size_t kBleuOrder = 4;

enum class BleuSmoothing {
    none,
    /// (matches + 1) / (total + 1) for n >= 2; unigram precision is never
    /// smoothed.
    add_one,
};

struct BleuOptions {
    BleuSmoothing smoothing = BleuSmoothing::none;
};

/// Corpus-pooled statistics behind a score.
struct BleuReport {
    std::array<std::size_t, kBleuOrder> matches{};
    std::array<std::size_t, kBleuOrder> totals{};
    std::array<double, kBleuOrder> precisions{};
    std::size_t candidate_length = 0;
    std::size_t reference_length = 0; ///< sum of closest reference lengths
    double brevity_penalty = 0.0;
    double score = 0.0; ///< percentage
};

/// Corpus-level BLEU@4: clipped n-gram counts pooled over all pairs,
/// geometric mean of p_1..p_4, brevity penalty exp(1 - r/c) when c <= r.
/// Per pair, r is the reference length closest to the candidate length
/// (shorter wins ties). A zero precision gives 0 unless smoothed. Throws on
/// an empty pair list or a pair without references.
BleuReport bleu4_report(const std::vector<EvalPair> &pairs, const BleuOptions &options = {});
double bleu4(const std::vector<EvalPair> &pairs, const BleuOptions &options = {});

/// Lowercased, punctuation-split tokens, the same tokenization the semantic
/// parser uses.
std::vector<std::string> eval_tokens(std::string_view sentence);

/// JSON lines {"snippet_id", "candidate", "references"} where sentences are
/// strings (tokenized on read) or token arrays; "reference" is accepted for a
/// single reference. CSV: "snippet_id,candidate,reference[,reference...]"
/// with RFC 4180 quoting and an optional header row. The format is detected
/// from the first non-blank character. Errors name the file and line.
std::vector<EvalPair> read_eval_pairs(const std::filesystem::path &path);
std::vector<EvalPair> parse_eval_pairs(std::string_view text, std::string_view source);

} // namespace moviedesc::eval
