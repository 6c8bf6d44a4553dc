#include "moviedesc/eval/ranking.hpp"

#include "moviedesc/error.hpp"
#include "moviedesc/rng.hpp"
#include "util/io.hpp"
#include "util/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>

namespace moviedesc::eval {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char *kTaskFormat = "moviedesc-ranking-tasks";
constexpr int kTaskVersion = 1;

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string key_for(std::size_t position) { return "c" + std::to_string(position + 1); }

std::string column_header(const std::string &criterion) {
    auto h = criterion;
    if (!h.empty() && h[0] >= 'a' && h[0] <= 'z')
        h[0] = static_cast<char>(h[0] - 'a' + 'A');
    return h;
}

std::set<std::string> method_set(const RankingRecord &r) {
    std::set<std::string> out;
    for (const auto &[m, _] : r.ranks)
        out.insert(m);
    return out;
}

} // namespace

void validate_ranking(const RankingRecord &record) {
    const auto m = record.ranks.size();
    std::vector<bool> seen(m + 1, false);
    for (const auto &[method, rank] : record.ranks) {
        if (rank < 1 || static_cast<std::size_t>(rank) > m || seen[static_cast<std::size_t>(rank)])
            throw Error("snippet '" + record.snippet_id + "': ranks are not a permutation of 1.." + std::to_string(m));
        seen[static_cast<std::size_t>(rank)] = true;
    }
    if (m == 0)
        throw Error("snippet '" + record.snippet_id + "': empty ranking");
}

std::map<std::string, double> mean_ranks(const std::vector<RankingRecord> &records) {
    if (records.empty())
        throw Error("mean_ranks needs at least one record");
    const auto methods = method_set(records.front());
    std::map<std::string, double> sums;
    for (const auto &r : records) {
        validate_ranking(r);
        if (method_set(r) != methods)
            throw Error("snippet '" + r.snippet_id + "' ranks a different method set than snippet '" +
                        records.front().snippet_id + "'");
        for (const auto &[m, rank] : r.ranks)
            sums[m] += rank;
    }
    for (auto &[_, s] : sums)
        s /= static_cast<double>(records.size());
    return sums;
}

std::vector<std::pair<std::string, std::map<std::string, double>>>
mean_ranks_by_criterion(const std::vector<RankingRecord> &records) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<RankingRecord>> groups;
    for (const auto &r : records) {
        if (!groups.count(r.criterion))
            order.push_back(r.criterion);
        groups[r.criterion].push_back(r);
    }
    std::vector<std::pair<std::string, std::map<std::string, double>>> out;
    for (const auto &c : order)
        out.emplace_back(c, mean_ranks(groups[c]));
    return out;
}

RankingLayout comparison_layout() {
    return {
        {"Nearest neighbor", {{"nn-dt", "DT"}, {"nn-lsda", "LSDA"}, {"nn-places", "PLACES"}, {"nn-hybrid", "HYBRID"}}},
        {"", {{"smt-visual-words", "SMT Visual words"}}},
        {"SMT with text labels",
         {{"smt-text-dt-30", "DT 30"}, {"smt-text-dt-100", "DT 100"}, {"smt-text-all-100", "All 100"}}},
        {"SMT with sense labels",
         {{"smt-sense-dt-30", "DT 30"}, {"smt-sense-dt-100", "DT 100"}, {"smt-sense-all-100", "All 100"}}},
        {"", {{"reference", "Movie script/DVS"}}},
    };
}

std::vector<std::string> layout_methods(const RankingLayout &layout) {
    std::vector<std::string> out;
    for (const auto &b : layout)
        for (const auto &[key, _] : b.rows)
            out.push_back(key);
    return out;
}

std::string format_ranking_table(const RankingLayout &layout,
                                 const std::vector<std::pair<std::string, std::map<std::string, double>>> &columns) {
    auto blocks = layout;
    std::set<std::string> known;
    for (const auto &m : layout_methods(layout))
        known.insert(m);
    MethodBlock other{"Other", {}};
    std::set<std::string> extra;
    for (const auto &[_, means] : columns)
        for (const auto &[m, __] : means)
            if (!known.count(m) && extra.insert(m).second)
                other.rows.emplace_back(m, m);
    if (!other.rows.empty())
        blocks.push_back(other);

    std::size_t label_width = 20;
    for (const auto &b : blocks) {
        label_width = std::max(label_width, b.title.size() + 2);
        for (const auto &[_, label] : b.rows)
            label_width = std::max(label_width, label.size() + (b.title.empty() ? 0 : 2) + 2);
    }
    std::vector<std::size_t> widths;
    for (const auto &[c, _] : columns)
        widths.push_back(std::max<std::size_t>(column_header(c).size(), 5));

    const auto pad_right = [](std::string s, std::size_t w) {
        s.resize(std::max(s.size(), w), ' ');
        return s;
    };
    const auto pad_left = [](const std::string &s, std::size_t w) {
        return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
    };

    std::string out = std::string(label_width, ' ');
    for (std::size_t i = 0; i < columns.size(); ++i)
        out += (i ? "  " : "") + pad_left(column_header(columns[i].first), widths[i]);
    out += "\n";
    for (const auto &b : blocks) {
        if (!b.title.empty())
            out += b.title + "\n";
        for (const auto &[key, label] : b.rows) {
            out += pad_right((b.title.empty() ? "" : "  ") + label, label_width);
            for (std::size_t i = 0; i < columns.size(); ++i) {
                std::string cell = "-";
                if (const auto it = columns[i].second.find(key); it != columns[i].second.end()) {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.1f", it->second);
                    cell = buf;
                }
                out += (i ? "  " : "") + pad_left(cell, widths[i]);
            }
            out += "\n";
        }
    }
    return out;
}

std::vector<std::size_t> blinding_order(std::uint64_t seed, std::string_view snippet_id, std::size_t methods) {
    std::vector<std::size_t> order(methods);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed ^ fnv1a(snippet_id));
    rng.shuffle(order);
    return order;
}

RankingTaskSet export_ranking_tasks(const std::vector<std::string> &snippet_ids,
                                    const std::map<std::string, std::map<std::string, std::string>> &sentences,
                                    std::uint64_t seed, std::vector<std::string> criteria) {
    if (sentences.size() < 2)
        throw Error("ranking needs at least two methods");
    if (criteria.empty())
        throw Error("ranking needs at least one criterion");
    RankingTaskSet set;
    set.seed = seed;
    set.criteria = std::move(criteria);
    for (const auto &[m, _] : sentences)
        set.methods.push_back(m);
    std::set<std::string> seen;
    for (const auto &id : snippet_ids) {
        if (!seen.insert(id).second)
            throw Error("duplicate snippet '" + id + "'");
        RankingTask task{id, {}};
        const auto order = blinding_order(seed, id, set.methods.size());
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            const auto &method = set.methods[order[pos]];
            const auto &per_snippet = sentences.at(method);
            const auto it = per_snippet.find(id);
            if (it == per_snippet.end())
                throw Error("method '" + method + "' has no sentence for snippet '" + id + "'");
            task.candidates.push_back({key_for(pos), it->second});
        }
        set.tasks.push_back(std::move(task));
    }
    return set;
}

std::string serialize_ranking_tasks(const RankingTaskSet &set) {
    Json header;
    header["format"] = kTaskFormat;
    header["version"] = kTaskVersion;
    header["seed"] = set.seed;
    header["methods"] = set.methods;
    header["criteria"] = set.criteria;
    std::string out = header.dump() + "\n";
    for (const auto &t : set.tasks) {
        Json j;
        j["snippet_id"] = t.snippet_id;
        j["candidates"] = Json::array();
        for (const auto &c : t.candidates)
            j["candidates"].push_back(Json{{"key", c.key}, {"sentence", c.sentence}});
        out += j.dump() + "\n";
    }
    return out;
}

RankingTaskSet parse_ranking_tasks(std::string_view text, std::string_view source) {
    RankingTaskSet set;
    bool have_header = false;
    std::set<std::string> seen;
    std::size_t n = 0;
    for (const auto line : util::split_lines(text)) {
        ++n;
        if (util::trim(line).empty())
            continue;
        const auto where = std::string(source) + ":" + std::to_string(n) + ": ";
        try {
            const auto j = Json::parse(line);
            if (!have_header) {
                if (j.value("format", std::string()) != kTaskFormat)
                    throw Error("not a ranking task file");
                if (j.at("version").get<int>() != kTaskVersion)
                    throw Error("unsupported ranking task version " + j.at("version").dump());
                set.seed = j.at("seed").get<std::uint64_t>();
                set.methods = j.at("methods").get<std::vector<std::string>>();
                set.criteria = j.at("criteria").get<std::vector<std::string>>();
                if (set.methods.size() < 2 || !std::is_sorted(set.methods.begin(), set.methods.end()) ||
                    std::adjacent_find(set.methods.begin(), set.methods.end()) != set.methods.end())
                    throw Error("methods must be at least two sorted unique names");
                if (set.criteria.empty())
                    throw Error("no criteria");
                have_header = true;
                continue;
            }
            RankingTask t;
            t.snippet_id = j.at("snippet_id").get<std::string>();
            if (!seen.insert(t.snippet_id).second)
                throw Error("duplicate snippet '" + t.snippet_id + "'");
            for (const auto &c : j.at("candidates"))
                t.candidates.push_back({c.at("key").get<std::string>(), c.at("sentence").get<std::string>()});
            if (t.candidates.size() != set.methods.size())
                throw Error("expected " + std::to_string(set.methods.size()) + " candidates");
            for (std::size_t i = 0; i < t.candidates.size(); ++i)
                if (t.candidates[i].key != key_for(i))
                    throw Error("candidate " + std::to_string(i + 1) + " must have key " + key_for(i));
            set.tasks.push_back(std::move(t));
        } catch (const nlohmann::json::exception &e) {
            throw Error(where + e.what());
        } catch (const Error &e) {
            throw Error(where + e.what());
        }
    }
    if (!have_header)
        throw Error(std::string(source) + ": missing ranking task header");
    return set;
}

void write_ranking_tasks(const RankingTaskSet &set, const std::filesystem::path &path) {
    util::write_file_atomic(path, serialize_ranking_tasks(set));
}

RankingTaskSet read_ranking_tasks(const std::filesystem::path &path) {
    const auto text = util::read_file(path);
    return parse_ranking_tasks(text, path.string());
}

std::vector<RankingRecord> import_rankings(const RankingTaskSet &set, std::string_view responses,
                                           std::string_view source) {
    std::set<std::string> snippets;
    for (const auto &t : set.tasks)
        snippets.insert(t.snippet_id);
    const auto m = set.methods.size();
    std::vector<RankingRecord> out;
    std::size_t n = 0;
    for (const auto line : util::split_lines(responses)) {
        ++n;
        if (util::trim(line).empty())
            continue;
        const auto where = std::string(source) + ":" + std::to_string(n) + ": ";
        try {
            const auto j = Json::parse(line);
            RankingRecord r;
            r.snippet_id = j.at("snippet_id").get<std::string>();
            r.criterion = j.at("criterion").get<std::string>();
            if (!snippets.count(r.snippet_id))
                throw Error("unknown snippet '" + r.snippet_id + "'");
            if (std::find(set.criteria.begin(), set.criteria.end(), r.criterion) == set.criteria.end())
                throw Error("unknown criterion '" + r.criterion + "'");
            const auto order = blinding_order(set.seed, r.snippet_id, m);
            const auto &ranks = j.at("ranks");
            if (!ranks.is_object() || ranks.size() != m)
                throw Error("ranks must assign all " + std::to_string(m) + " keys");
            for (std::size_t pos = 0; pos < m; ++pos) {
                const auto key = key_for(pos);
                if (!ranks.contains(key))
                    throw Error("missing rank for key " + key);
                r.ranks[set.methods[order[pos]]] = ranks.at(key).get<int>();
            }
            validate_ranking(r);
            out.push_back(std::move(r));
        } catch (const nlohmann::json::exception &e) {
            throw Error(where + e.what());
        } catch (const Error &e) {
            throw Error(where + e.what());
        }
    }
    return out;
}

std::vector<RankingRecord> import_rankings(const RankingTaskSet &set, const std::filesystem::path &responses) {
    const auto text = util::read_file(responses);
    return import_rankings(set, text, responses.string());
}

} // namespace moviedesc::eval
