#include "moviedesc/align/alignment.hpp"

#include "moviedesc/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <unordered_map>

namespace moviedesc::align {
namespace {

struct RawToken {
    std::string text;
    std::size_t begin;
    std::size_t end;
};

// Word characters are ASCII alphanumerics and any non-ASCII byte; apostrophes
// vanish inside a word, everything else separates words.
std::vector<RawToken> tokenize(std::string_view text) {
    std::vector<RawToken> out;
    RawToken cur{{}, 0, 0};
    auto finish = [&](std::size_t at) {
        if (!cur.text.empty()) {
            cur.end = at;
            out.push_back(cur);
        }
        cur.text.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (std::isalnum(c) || c >= 0x80) {
            if (cur.text.empty())
                cur.begin = i;
            cur.text.push_back(static_cast<char>(std::tolower(c)));
        } else if (c == '\'' && !cur.text.empty()) {
            continue;
        } else {
            finish(i);
        }
    }
    finish(text.size());
    return out;
}

} // namespace

std::vector<std::string> normalize_tokens(std::string_view text) {
    std::vector<std::string> out;
    for (auto &t : tokenize(text))
        out.push_back(std::move(t.text));
    return out;
}

std::vector<WordMatch> align_dialogue_dp(const std::vector<std::string> &script_tokens,
                                         const std::vector<std::string> &subtitle_tokens) {
    const std::size_t n = script_tokens.size();
    const std::size_t m = subtitle_tokens.size();
    if (n == 0 || m == 0)
        return {};

    std::unordered_map<std::string_view, std::uint32_t> ids;
    auto id_of = [&](const std::string &s) {
        return ids.try_emplace(s, static_cast<std::uint32_t>(ids.size())).first->second;
    };
    std::vector<std::uint32_t> a(n);
    std::vector<std::uint32_t> b(m);
    for (std::size_t i = 0; i < n; ++i)
        a[i] = id_of(script_tokens[i]);
    constexpr auto kAbsent = static_cast<std::uint32_t>(-1);
    for (std::size_t j = 0; j < m; ++j) {
        const auto it = ids.find(subtitle_tokens[j]);
        b[j] = it == ids.end() ? kAbsent : it->second;
    }

    // suffix[i][j] = LCS length of a[i..] and b[j..]
    const std::size_t width = m + 1;
    std::vector<std::uint32_t> suffix((n + 1) * width, 0);
    auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t & { return suffix[i * width + j]; };
    for (std::size_t i = n; i-- > 0;)
        for (std::size_t j = m; j-- > 0;)
            at(i, j) = a[i] == b[j] ? at(i + 1, j + 1) + 1 : std::max(at(i + 1, j), at(i, j + 1));

    std::vector<std::vector<std::size_t>> positions(ids.size());
    for (std::size_t i = 0; i < n; ++i)
        positions[a[i]].push_back(i);

    // Greedy forward walk: the smallest feasible subtitle index first, paired
    // with the earliest script occurrence at or after the cursor.
    std::vector<WordMatch> matches;
    std::size_t i = 0;
    std::size_t j = 0;
    std::uint32_t remaining = at(0, 0);
    while (remaining > 0 && j < m) {
        for (; j < m; ++j) {
            if (b[j] == kAbsent)
                continue;
            const auto &pos = positions[b[j]];
            const auto it = std::lower_bound(pos.begin(), pos.end(), i);
            if (it == pos.end())
                continue;
            if (at(*it + 1, j + 1) + 1 == remaining) {
                matches.push_back({*it, j});
                i = *it + 1;
                ++j;
                --remaining;
                break;
            }
        }
    }
    return matches;
}

TokenStream dialogue_tokens(const std::vector<ScriptElement> &elements) {
    TokenStream stream;
    for (std::size_t e = 0; e < elements.size(); ++e) {
        const auto &el = elements[e];
        if (el.kind != ElementKind::dialogue)
            continue;
        for (auto &t : tokenize(el.text)) {
            stream.tokens.push_back(std::move(t.text));
            stream.refs.push_back({e, std::min(el.begin + t.begin, el.end), std::min(el.begin + t.end, el.end)});
        }
    }
    return stream;
}

TokenStream subtitle_tokens(const std::vector<SubtitleEntry> &subtitles) {
    TokenStream stream;
    for (std::size_t s = 0; s < subtitles.size(); ++s)
        for (auto &t : tokenize(subtitles[s].text)) {
            stream.tokens.push_back(std::move(t.text));
            stream.refs.push_back({s, t.begin, t.end});
        }
    return stream;
}

TimeInterval infer_interval(double begin, double end, const std::optional<Anchor> &before,
                            const std::optional<Anchor> &after, double default_duration_s) {
    if (before && after && after->time_s > before->time_s && after->position > before->position) {
        const double span = after->position - before->position;
        const double f0 = std::clamp((begin - before->position) / span, 0.0, 1.0);
        const double f1 = std::clamp((end - before->position) / span, 0.0, 1.0);
        const double dt = after->time_s - before->time_s;
        TimeInterval iv{before->time_s + f0 * dt, before->time_s + f1 * dt};
        if (iv.end_s > iv.start_s)
            return iv;
    }
    if (before)
        return {before->time_s, before->time_s + default_duration_s};
    if (after) {
        if (after->time_s > 0.0)
            return {std::max(0.0, after->time_s - default_duration_s), after->time_s};
        return {0.0, default_duration_s};
    }
    throw Error("unalignable script: no matched dialogue to anchor descriptions");
}

std::vector<ScoredSentence> score_descriptions(const std::vector<ScriptElement> &elements,
                                               const std::vector<WordMatch> &matches,
                                               const std::vector<SubtitleEntry> &subtitles, int window) {
    const TokenStream script = dialogue_tokens(elements);
    const TokenStream subs = subtitle_tokens(subtitles);

    std::vector<std::size_t> total(elements.size(), 0);
    std::vector<std::size_t> matched(elements.size(), 0);
    for (const auto &ref : script.refs)
        ++total[ref.element];
    for (const auto &mt : matches) {
        if (mt.script_token_index >= script.refs.size() || mt.subtitle_token_index >= subs.refs.size())
            throw Error("word match out of range for the given script and subtitles");
        ++matched[script.refs[mt.script_token_index].element];
    }

    std::vector<std::size_t> dialogue;
    for (std::size_t e = 0; e < elements.size(); ++e)
        if (elements[e].kind == ElementKind::dialogue)
            dialogue.push_back(e);

    std::vector<Anchor> ends;   // after a matched token: its subtitle's end
    std::vector<Anchor> starts; // before a matched token: its subtitle's start
    for (const auto &mt : matches) {
        const auto &ref = script.refs[mt.script_token_index];
        const auto &sub = subtitles[subs.refs[mt.subtitle_token_index].element];
        ends.push_back({static_cast<double>(ref.end), sub.interval.end_s});
        starts.push_back({static_cast<double>(ref.begin), sub.interval.start_s});
    }

    std::vector<ScoredSentence> out;
    for (std::size_t e = 0; e < elements.size(); ++e) {
        const auto &el = elements[e];
        if (el.kind != ElementKind::description)
            continue;

        const auto split = std::lower_bound(dialogue.begin(), dialogue.end(), e);
        std::size_t tokens = 0;
        std::size_t hits = 0;
        for (auto it = split, k = dialogue.begin(); it != k && split - it < window;) {
            --it;
            tokens += total[*it];
            hits += matched[*it];
        }
        for (auto it = split; it != dialogue.end() && it - split < window; ++it) {
            tokens += total[*it];
            hits += matched[*it];
        }

        std::optional<Anchor> before;
        std::optional<Anchor> after;
        for (const auto &a : ends)
            if (a.position <= static_cast<double>(el.begin))
                before = a;
        for (const auto &a : starts)
            if (a.position >= static_cast<double>(el.end)) {
                after = a;
                break;
            }

        ScoredSentence s;
        s.text = el.text;
        s.ordinal = el.ordinal;
        s.score = tokens == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(tokens);
        s.interval = infer_interval(static_cast<double>(el.begin), static_cast<double>(el.end), before, after);
        s.low_confidence = !(before && after && after->time_s > before->time_s);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<ScoredSentence> filter_reliable(const std::vector<ScoredSentence> &sentences, double min_score) {
    std::vector<ScoredSentence> out;
    std::copy_if(sentences.begin(), sentences.end(), std::back_inserter(out),
                 [&](const ScoredSentence &s) { return s.score >= min_score; });
    return out;
}

std::vector<ScoredSentence> align_script(std::string_view script_text, std::string_view srt_text,
                                         const AlignOptions &options) {
    const auto elements = parse_script(script_text, options.format);
    const auto subtitles = parse_srt(srt_text);
    const auto script = dialogue_tokens(elements);
    const auto subs = subtitle_tokens(subtitles);
    const auto matches = align_dialogue_dp(script.tokens, subs.tokens);
    auto scored = score_descriptions(elements, matches, subtitles, options.window);
    return options.keep_all ? scored : filter_reliable(scored, options.min_score);
}

} // namespace moviedesc::align
