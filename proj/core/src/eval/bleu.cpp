#include "moviedesc/eval/bleu.hpp"

#include "moviedesc/error.hpp"
#include "moviedesc/semantic/tagger.hpp"
#include "util/csv.hpp"
#include "util/io.hpp"
#include "util/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

namespace moviedesc::eval {
namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts ngrams(const std::vector<std::string> &tokens, std::size_t n) {
    NgramCounts out;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i)
        ++out[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                       tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
    return out;
}

std::size_t closest_reference_length(const EvalPair &pair) {
    const auto c = pair.candidate.size();
    std::size_t best = pair.references.front().size();
    for (const auto &ref : pair.references) {
        const auto r = ref.size();
        const auto d = r > c ? r - c : c - r;
        const auto bd = best > c ? best - c : c - best;
        if (d < bd || (d == bd && r < best))
            best = r;
    }
    return best;
}

std::vector<std::string> json_tokens(const nlohmann::json &j) {
    if (j.is_string())
        return eval_tokens(j.get<std::string>());
    if (!j.is_array())
        throw Error("expected a sentence string or token array");
    std::vector<std::string> out;
    for (const auto &t : j) {
        if (!t.is_string())
            throw Error("token arrays hold strings");
        out.push_back(util::lowercase(t.get<std::string>()));
    }
    return out;
}

std::vector<EvalPair> parse_jsonl(std::string_view text, std::string_view source) {
    std::vector<EvalPair> out;
    std::size_t n = 0;
    for (const auto line : util::split_lines(text)) {
        ++n;
        if (util::trim(line).empty())
            continue;
        const auto where = std::string(source) + ":" + std::to_string(n) + ": ";
        try {
            const auto j = nlohmann::json::parse(line);
            EvalPair p;
            p.snippet_id = j.at("snippet_id").get<std::string>();
            p.candidate = json_tokens(j.at("candidate"));
            if (j.contains("references")) {
                for (const auto &r : j.at("references"))
                    p.references.push_back(json_tokens(r));
            }
            if (j.contains("reference"))
                p.references.push_back(json_tokens(j.at("reference")));
            if (p.references.empty())
                throw Error("no references");
            out.push_back(std::move(p));
        } catch (const nlohmann::json::exception &e) {
            throw Error(where + e.what());
        } catch (const Error &e) {
            throw Error(where + e.what());
        }
    }
    return out;
}

std::vector<EvalPair> parse_csv_pairs(std::string_view text, std::string_view source) {
    std::vector<EvalPair> out;
    const auto rows = util::parse_csv(text, source);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &row = rows[i];
        if (i == 0 && !row.cells.empty() && util::trim(row.cells[0]) == "snippet_id")
            continue;
        const auto where = std::string(source) + ":" + std::to_string(row.line) + ": ";
        if (row.cells.size() < 3)
            throw Error(where + "expected snippet_id,candidate,reference[,reference...]");
        EvalPair p;
        p.snippet_id = std::string(util::trim(row.cells[0]));
        if (p.snippet_id.empty())
            throw Error(where + "empty snippet_id");
        p.candidate = eval_tokens(row.cells[1]);
        for (std::size_t c = 2; c < row.cells.size(); ++c)
            if (!util::trim(row.cells[c]).empty())
                p.references.push_back(eval_tokens(row.cells[c]));
        if (p.references.empty())
            throw Error(where + "no references");
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace

std::vector<std::string> eval_tokens(std::string_view sentence) { return semantic::tokenize(sentence); }

BleuReport bleu4_report(const std::vector<EvalPair> &pairs, const BleuOptions &options) {
    if (pairs.empty())
        throw Error("bleu4 needs at least one pair");
    BleuReport r;
    for (const auto &pair : pairs) {
        if (pair.references.empty())
            throw Error("pair '" + pair.snippet_id + "' has no references");
        r.candidate_length += pair.candidate.size();
        r.reference_length += closest_reference_length(pair);
        for (std::size_t n = 1; n <= kBleuOrder; ++n) {
            NgramCounts max_ref;
            for (const auto &ref : pair.references)
                for (const auto &[g, c] : ngrams(ref, n))
                    max_ref[g] = std::max(max_ref[g], c);
            for (const auto &[g, c] : ngrams(pair.candidate, n)) {
                r.totals[n - 1] += c;
                if (const auto it = max_ref.find(g); it != max_ref.end())
                    r.matches[n - 1] += std::min(c, it->second);
            }
        }
    }
    double log_sum = 0.0;
    bool zero = false;
    for (std::size_t i = 0; i < kBleuOrder; ++i) {
        double m = static_cast<double>(r.matches[i]);
        double t = static_cast<double>(r.totals[i]);
        if (options.smoothing == BleuSmoothing::add_one && i > 0) {
            m += 1.0;
            t += 1.0;
        }
        r.precisions[i] = t > 0.0 ? m / t : 0.0;
        if (r.precisions[i] == 0.0)
            zero = true;
        else
            log_sum += std::log(r.precisions[i]);
    }
    const double c = static_cast<double>(r.candidate_length);
    const double ref = static_cast<double>(r.reference_length);
    r.brevity_penalty = c == 0.0 ? 0.0 : (c > ref ? 1.0 : std::exp(1.0 - ref / c));
    r.score = zero ? 0.0 : 100.0 * r.brevity_penalty * std::exp(log_sum / static_cast<double>(kBleuOrder));
    return r;
}

double bleu4(const std::vector<EvalPair> &pairs, const BleuOptions &options) {
    return bleu4_report(pairs, options).score;
}

std::vector<EvalPair> parse_eval_pairs(std::string_view text, std::string_view source) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    return text[first] == '{' ? parse_jsonl(text, source) : parse_csv_pairs(text, source);
}

std::vector<EvalPair> read_eval_pairs(const std::filesystem::path &path) {
    const auto text = util::read_file(path);
    return parse_eval_pairs(text, path.string());
}

} // namespace moviedesc::eval
