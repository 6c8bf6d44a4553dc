#include "moviedesc/semantic/clause.hpp"

#include <algorithm>
#include <optional>

namespace moviedesc::semantic {
namespace {

std::string join(const std::vector<std::string> &tokens) {
    std::string out;
    for (const auto &t : tokens) {
        if (!out.empty())
            out.push_back(' ');
        out += t;
    }
    return out;
}

bool is_verbal(Tag t) { return t == Tag::verb || t == Tag::aux; }
bool is_nominal(Tag t) { return t == Tag::det || t == Tag::adj || t == Tag::noun || t == Tag::pron; }
bool is_separator(const std::string &token, Tag tag) {
    return tag == Tag::conj || token == "," || token == ";";
}

/// End (exclusive) of the verb group starting at `v`.
std::size_t verb_group_end(const std::vector<Tag> &tags, const std::vector<std::size_t> &idx, std::size_t v) {
    std::size_t k = v;
    while (k < idx.size()) {
        const Tag t = tags[idx[k]];
        if (t == Tag::verb || t == Tag::aux || t == Tag::adv || t == Tag::to || t == Tag::particle)
            ++k;
        else
            break;
    }
    return k;
}

} // namespace

std::string Clause::text() const { return join(tokens); }

std::vector<Clause> split_clauses(std::string_view sentence, const Tagger &tagger) {
    const auto tokens = tokenize(sentence);
    const auto tags = tagger.tag(tokens);

    // Segments hold token indices; separators between merged segments are kept.
    struct Segment {
        std::vector<std::size_t> idx;
        std::size_t separator = 0; ///< token index of the separator before it
        bool has_separator = false;
    };
    std::vector<Segment> segments(1);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (is_separator(tokens[i], tags[i])) {
            if (!segments.back().idx.empty())
                segments.push_back({});
            segments.back().separator = i;
            segments.back().has_separator = true;
            continue;
        }
        if (tags[i] == Tag::punct)
            continue;
        segments.back().idx.push_back(i);
    }
    if (segments.back().idx.empty())
        segments.pop_back();
    if (segments.empty())
        return {};

    const auto verb_in = [&](const Segment &s) {
        return std::any_of(s.idx.begin(), s.idx.end(), [&](std::size_t i) { return is_verbal(tags[i]); });
    };
    const auto append = [&](Segment &into, const Segment &from) {
        if (from.has_separator && tags[from.separator] == Tag::conj)
            into.idx.push_back(from.separator);
        into.idx.insert(into.idx.end(), from.idx.begin(), from.idx.end());
    };
    // Verbless segments are noun-phrase material: attach them to a neighbour.
    std::vector<Segment> merged;
    std::optional<Segment> pending;
    for (auto &seg : segments) {
        if (pending) {
            append(*pending, seg);
            seg = std::move(*pending);
            pending.reset();
        }
        if (verb_in(seg))
            merged.push_back(std::move(seg));
        else if (!merged.empty())
            append(merged.back(), seg);
        else
            pending = std::move(seg);
    }
    if (pending)
        merged.push_back(std::move(*pending));

    struct Part {
        std::vector<std::size_t> subject;
        std::vector<std::size_t> predicate;
        bool own_subject = false;
    };
    std::vector<Part> parts;
    std::vector<std::size_t> subject;
    for (const auto &seg : merged) {
        std::size_t v = 0;
        while (v < seg.idx.size() && !is_verbal(tags[seg.idx[v]]))
            ++v;
        Part part;
        const bool own = std::any_of(seg.idx.begin(), seg.idx.begin() + static_cast<std::ptrdiff_t>(v),
                                     [&](std::size_t i) { return is_nominal(tags[i]); });
        if (own || parts.empty() || v == seg.idx.size()) {
            part.own_subject = true;
            part.predicate = seg.idx;
            subject.assign(seg.idx.begin(), seg.idx.begin() + static_cast<std::ptrdiff_t>(v));
        } else {
            part.subject = subject;
            part.predicate = seg.idx;
        }
        parts.push_back(std::move(part));
    }

    std::vector<Clause> clauses;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        Clause clause;
        clause.source_sentence = std::string(sentence);
        for (const auto i : parts[k].subject)
            clause.tokens.push_back(tokens[i]);
        for (const auto i : parts[k].predicate)
            clause.tokens.push_back(tokens[i]);
        // A bare verb shares the object of the next verb-phrase conjunct.
        const auto &pred = parts[k].predicate;
        std::size_t v = 0;
        while (v < pred.size() && !is_verbal(tags[pred[v]]))
            ++v;
        if (v < pred.size() && verb_group_end(tags, pred, v) == pred.size() && k + 1 < parts.size() &&
            !parts[k + 1].own_subject) {
            const auto &next = parts[k + 1].predicate;
            std::size_t nv = 0;
            while (nv < next.size() && !is_verbal(tags[next[nv]]))
                ++nv;
            const auto rest = verb_group_end(tags, next, nv);
            if (rest < next.size() && is_nominal(tags[next[rest]]))
                for (std::size_t r = rest; r < next.size(); ++r)
                    clause.tokens.push_back(tokens[next[r]]);
        }
        if (!clause.tokens.empty())
            clauses.push_back(std::move(clause));
    }
    return clauses;
}

std::string_view to_string(ChunkKind kind) {
    switch (kind) {
    case ChunkKind::np:
        return "NP";
    case ChunkKind::vp:
        return "VP";
    case ChunkKind::pp:
        return "PP";
    }
    return "NP";
}

std::string Chunk::text() const { return join(tokens); }

std::string Chunk::content_text() const {
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < tokens.size(); ++i)
        if (tags[i] != Tag::det)
            kept.push_back(tokens[i]);
    return join(kept);
}

std::vector<Chunk> chunk_clause(const Clause &clause, const Tagger &tagger) {
    const auto &tokens = clause.tokens;
    const auto tags = tagger.tag(tokens);
    const std::size_t n = tokens.size();
    std::vector<Chunk> chunks;

    const auto make = [&](ChunkKind kind, std::size_t b, std::size_t e, std::size_t head) {
        Chunk c;
        c.kind = kind;
        c.tokens.assign(tokens.begin() + static_cast<std::ptrdiff_t>(b), tokens.begin() + static_cast<std::ptrdiff_t>(e));
        c.tags.assign(tags.begin() + static_cast<std::ptrdiff_t>(b), tags.begin() + static_cast<std::ptrdiff_t>(e));
        c.head = head - b;
        return c;
    };
    // Noun phrase starting at i: returns {end, head} or {i, i} if none.
    const auto noun_phrase = [&](std::size_t i) -> std::pair<std::size_t, std::size_t> {
        if (i < n && tags[i] == Tag::pron)
            return {i + 1, i};
        std::size_t j = i;
        std::size_t last_noun = n;
        while (j < n && (tags[j] == Tag::det || tags[j] == Tag::adj || tags[j] == Tag::noun)) {
            if (tags[j] == Tag::noun)
                last_noun = j;
            ++j;
        }
        if (last_noun == n)
            return {i, i};
        return {last_noun + 1, last_noun};
    };

    std::size_t i = 0;
    while (i < n) {
        const Tag t = tags[i];
        if (t == Tag::det || t == Tag::adj || t == Tag::noun || t == Tag::pron) {
            auto [end, head] = noun_phrase(i);
            if (end == i) {
                ++i;
                continue;
            }
            while (end + 1 < n && (tokens[end] == "and" || tokens[end] == "or")) {
                const auto [e2, h2] = noun_phrase(end + 1);
                if (e2 == end + 1)
                    break;
                end = e2;
                head = h2;
            }
            chunks.push_back(make(ChunkKind::np, i, end, head));
            i = end;
        } else if (t == Tag::aux || t == Tag::verb || t == Tag::to || t == Tag::adv) {
            std::size_t j = i;
            std::size_t last_verb = n;
            while (j < n) {
                const Tag u = tags[j];
                if (u == Tag::verb) {
                    last_verb = j;
                } else if (u == Tag::particle) {
                    if (last_verb == n)
                        break;
                } else if (u != Tag::aux && u != Tag::adv && u != Tag::to) {
                    break;
                }
                ++j;
            }
            if (last_verb == n) {
                ++i;
                continue;
            }
            std::size_t end = last_verb + 1;
            while (end < n && tags[end] == Tag::particle)
                ++end;
            std::size_t begin = i;
            while (begin < last_verb && tags[begin] == Tag::adv)
                ++begin;
            chunks.push_back(make(ChunkKind::vp, begin, end, last_verb));
            i = end;
        } else if (t == Tag::prep) {
            chunks.push_back(make(ChunkKind::pp, i, i + 1, i));
            ++i;
        } else {
            ++i;
        }
    }
    return chunks;
}

const std::string &head_word(const Chunk &chunk) { return chunk.tokens.at(chunk.head); }

} // namespace moviedesc::semantic
