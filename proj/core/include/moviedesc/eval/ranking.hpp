#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace moviedesc::eval {

/// One judge's ranking of all methods for one snippet under one criterion.
struct RankingRecord {
    std::string snippet_id;
    std::string criterion;
    std::map<std::string, int> ranks; ///< method -> rank in 1..M

    friend bool operator==(const RankingRecord &, const RankingRecord &) = default;
};

/// Throws unless the ranks are a permutation of 1..M.
void validate_ranking(const RankingRecord &record);

/// Arithmetic mean rank per method. Throws on an empty list, a record that
/// is not a permutation, or records covering different method sets (the
/// error names the snippet).
std::map<std::string, double> mean_ranks(const std::vector<RankingRecord> &records);

/// mean_ranks per criterion, in first-seen criterion order.
std::vector<std::pair<std::string, std::map<std::string, double>>>
mean_ranks_by_criterion(const std::vector<RankingRecord> &records);

/// Row grouping for the comparison table. A block with a title prints it on
/// its own line above indented rows; an untitled block prints its rows flush.
struct MethodBlock {
    std::string title;
    std::vector<std::pair<std::string, std::string>> rows; ///< method key, display label
};

using RankingLayout = std::vector<MethodBlock>;

/// Twelve methods in five blocks: nearest neighbor per feature, visual-word
/// translation, text-label and sense-label translation at two vocabulary
/// cut-offs plus the all-feature CRF, and the reference sentences.
RankingLayout comparison_layout();

/// Method keys of a layout in row order.
std::vector<std::string> layout_methods(const RankingLayout &layout);

/// Text table with one column per criterion, means to one decimal and "-"
/// for methods without a value. Methods absent from the layout are appended
/// in an "Other" block.
std::string format_ranking_table(const RankingLayout &layout,
                                 const std::vector<std::pair<std::string, std::map<std::string, double>>> &columns);

inline const std::vector<std::string> kDefaultCriteria{"correctness", "grammar", "relevance"};

struct RankingCandidate {
    std::string key; ///< blind key, "c1".."cM" in display order
    std::string sentence;

    friend bool operator==(const RankingCandidate &, const RankingCandidate &) = default;
};

struct RankingTask {
    std::string snippet_id;
    std::vector<RankingCandidate> candidates;

    friend bool operator==(const RankingTask &, const RankingTask &) = default;
};

/// A blinded task set. The display order of each task is a seeded shuffle
/// of `methods` derived from (seed, snippet_id), so the header alone
/// recovers method identities regardless of task order in the file.
struct RankingTaskSet {
    std::uint64_t seed = 42;
    std::vector<std::string> methods; ///< sorted
    std::vector<std::string> criteria;
    std::vector<RankingTask> tasks;

    friend bool operator==(const RankingTaskSet &, const RankingTaskSet &) = default;
};

/// Method index shown at each display position of a snippet's task.
std::vector<std::size_t> blinding_order(std::uint64_t seed, std::string_view snippet_id, std::size_t methods);

/// `sentences` maps method -> snippet -> sentence. Throws when a method lacks
/// a snippet, on duplicate snippet ids or with fewer than two methods.
RankingTaskSet export_ranking_tasks(const std::vector<std::string> &snippet_ids,
                                    const std::map<std::string, std::map<std::string, std::string>> &sentences,
                                    std::uint64_t seed = 42, std::vector<std::string> criteria = kDefaultCriteria);

/// JSON lines: a header {"format", "version", "seed", "methods", "criteria"}
/// followed by one {"snippet_id", "candidates": [{"key", "sentence"}]} per
/// task.
std::string serialize_ranking_tasks(const RankingTaskSet &set);
RankingTaskSet parse_ranking_tasks(std::string_view text, std::string_view source);
void write_ranking_tasks(const RankingTaskSet &set, const std::filesystem::path &path);
RankingTaskSet read_ranking_tasks(const std::filesystem::path &path);

/// Judge responses, one JSON line each: {"snippet_id", "criterion",
/// "ranks": {"c1": 2, ...}}. Returns records keyed by method. Throws for
/// unknown snippets, criteria or keys and for non-permutation ranks.
std::vector<RankingRecord> import_rankings(const RankingTaskSet &set, std::string_view responses,
                                           std::string_view source);
std::vector<RankingRecord> import_rankings(const RankingTaskSet &set, const std::filesystem::path &responses);

} // namespace moviedesc::eval
