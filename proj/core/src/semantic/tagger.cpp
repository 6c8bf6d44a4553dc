#include "moviedesc/semantic/tagger.hpp"

#include <array>
#include <cctype>

namespace moviedesc::semantic {
namespace {

bool in(std::string_view w, std::initializer_list<std::string_view> list) {
    for (const auto x : list)
        if (x == w)
            return true;
    return false;
}

bool is_determiner(std::string_view w) {
    return in(w, {"a", "an", "the", "this", "that", "these", "those", "every", "each", "some", "any", "no",
                  "another", "all", "both"});
}
bool is_possessive(std::string_view w) {
    return in(w, {"his", "her", "their", "its", "my", "your", "our"}) || (w.size() > 2 && w.ends_with("'s"));
}
bool is_pronoun(std::string_view w) {
    return in(w, {"i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us", "them", "himself",
                  "herself", "itself", "themselves", "myself", "yourself", "ourselves", "his"});
}
bool is_auxiliary(std::string_view w) {
    return in(w, {"be", "is", "are", "was", "were", "am", "been", "being", "has", "have", "had", "do", "does",
                  "did", "will", "would", "can", "could", "shall", "should", "may", "might", "must", "don't",
                  "doesn't", "didn't", "can't", "won't", "isn't", "aren't", "wasn't", "weren't", "couldn't",
                  "wouldn't", "hasn't", "haven't"});
}
bool is_preposition(std::string_view w) {
    return in(w, {"in",     "on",     "at",    "into",    "onto",   "from",    "with",    "by",     "under",
                  "over",   "through", "across", "toward", "towards", "behind", "near",    "inside", "outside",
                  "along",  "around", "past",  "up",      "down",   "off",     "out",     "of",     "for",
                  "about",  "against", "between", "beside", "above", "below",  "beneath", "upon",   "after",
                  "before", "during", "within", "without", "like"});
}
bool is_particle_word(std::string_view w) {
    return in(w, {"up", "down", "out", "off", "away", "back", "over", "around", "in", "on", "along", "through",
                  "aside", "forward"});
}
bool is_conjunction(std::string_view w) { return in(w, {"and", "or", "but", "nor", "then"}); }
bool is_adverb_word(std::string_view w) {
    return in(w, {"not", "never", "also", "still", "just", "again", "very", "too", "away", "back", "here", "there",
                  "now", "then", "soon", "almost", "even", "only", "already", "together", "forward", "aside",
                  "upstairs", "downstairs", "inside", "outside", "home"});
}
bool is_number(std::string_view w) {
    for (const char c : w)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return !w.empty();
}

struct Candidates {
    bool noun = false;
    bool verb = false;
    bool adj = false;
    bool participle = false; ///< verb form ending in -ing or -ed
    bool closed = false;     ///< member of a closed class
};

} // namespace

std::string_view to_string(Tag tag) {
    static constexpr std::array<std::string_view, 12> names{"DET", "ADJ",  "NOUN",     "PRON", "VERB", "AUX",
                                                            "TO",  "PREP", "PARTICLE", "CONJ", "ADV",  "PUNCT"};
    return names[static_cast<std::size_t>(tag)];
}

bool is_punctuation(std::string_view token) {
    return token.size() == 1 && std::ispunct(static_cast<unsigned char>(token[0])) && token[0] != '\'' &&
           token[0] != '-';
}

std::vector<std::string> tokenize(std::string_view sentence) {
    std::vector<std::string> out;
    std::string cur;
    const auto word_char = [](unsigned char c) { return std::isalnum(c) || c >= 0x80; };
    for (std::size_t i = 0; i < sentence.size(); ++i) {
        const auto c = static_cast<unsigned char>(sentence[i]);
        const bool inner = (c == '\'' || c == '-') && !cur.empty() && i + 1 < sentence.size() &&
                           word_char(static_cast<unsigned char>(sentence[i + 1]));
        if (word_char(c) || inner) {
            cur.push_back(static_cast<char>(std::tolower(c)));
            continue;
        }
        if (!cur.empty())
            out.push_back(std::move(cur));
        cur.clear();
        if (std::ispunct(c) && c != '\'' && c != '"' && c != '-')
            out.emplace_back(1, static_cast<char>(c));
    }
    if (!cur.empty())
        out.push_back(std::move(cur));
    return out;
}

std::vector<Tag> LexiconTagger::tag(const std::vector<std::string> &tokens) const {
    const std::size_t n = tokens.size();
    std::vector<Candidates> cand(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto &w = tokens[i];
        auto &c = cand[i];
        c.closed = is_determiner(w) || is_possessive(w) || is_pronoun(w) || is_auxiliary(w) || w == "to" ||
                   is_preposition(w) || is_conjunction(w) || is_adverb_word(w) || is_punctuation(w);
        if (c.closed)
            continue;
        c.noun = lexicon_.is_noun(lexicon_.noun_lemma(w));
        const auto vl = lexicon_.verb_lemma(w);
        c.verb = lexicon_.is_verb(vl);
        c.participle = c.verb && vl != w && (w.ends_with("ing") || w.ends_with("ed"));
        c.adj = lexicon_.is_adjective(w) || is_number(w);
    }
    const auto nominal_start = [&](std::size_t i) {
        if (i >= n)
            return false;
        const auto &w = tokens[i];
        if (is_determiner(w) || is_possessive(w) || is_pronoun(w))
            return true;
        return !cand[i].closed;
    };
    const auto verb_ahead = [&](std::size_t i) {
        while (i < n && is_adverb_word(tokens[i]))
            ++i;
        return i < n && cand[i].verb;
    };

    std::vector<Tag> tags(n, Tag::noun);
    bool seen_verb = false;
    for (std::size_t i = 0; i < n; ++i) {
        const auto &w = tokens[i];
        const auto &c = cand[i];
        const bool has_prev = i > 0;
        const Tag prev = has_prev ? tags[i - 1] : Tag::punct;
        const bool after_verb = has_prev && (prev == Tag::verb || prev == Tag::particle ||
                                             (prev == Tag::adv && i > 1 && tags[i - 2] == Tag::verb));
        Tag t = Tag::noun;
        if (is_punctuation(w)) {
            t = Tag::punct;
        } else if (w == "to") {
            t = verb_ahead(i + 1) && !(i + 1 < n && cand[i + 1].noun && !cand[i + 1].verb) ? Tag::to : Tag::prep;
        } else if (is_possessive(w)) {
            const bool next_nominal = i + 1 < n && !cand[i + 1].closed && !(cand[i + 1].verb && !cand[i + 1].noun);
            t = next_nominal ? Tag::det : is_pronoun(w) ? Tag::pron : Tag::noun;
        } else if (is_determiner(w)) {
            t = Tag::det;
        } else if (is_auxiliary(w)) {
            t = verb_ahead(i + 1) ? Tag::aux : Tag::verb;
        } else if (is_pronoun(w)) {
            t = Tag::pron;
        } else if (is_conjunction(w)) {
            t = Tag::conj;
        } else if (is_particle_word(w) && after_verb &&
                   (!nominal_start(i + 1) || (prev == Tag::verb && lexicon_.is_phrasal(lexicon_.verb_lemma(tokens[i - 1]), w)))) {
            t = Tag::particle;
        } else if (is_preposition(w)) {
            t = Tag::prep;
        } else if (is_adverb_word(w)) {
            t = Tag::adv;
        } else if (!c.noun && !c.verb && !c.adj && w.size() > 3 && w.ends_with("ly")) {
            t = Tag::adv;
        } else {
            const bool in_np = has_prev && (prev == Tag::det || prev == Tag::adj);
            if (c.verb && c.participle && !c.noun) {
                t = in_np ? Tag::adj : Tag::verb;
            } else if (c.adj && !c.noun) {
                t = c.verb && !in_np && has_prev && prev != Tag::prep ? Tag::verb : Tag::adj;
            } else if (c.noun && c.verb) {
                if (!has_prev || in_np || prev == Tag::prep || prev == Tag::verb || prev == Tag::particle)
                    t = Tag::noun;
                else if (prev == Tag::conj)
                    t = seen_verb ? Tag::verb : Tag::noun;
                else
                    t = Tag::verb;
            } else if (c.verb) {
                t = in_np ? Tag::noun : Tag::verb;
            } else {
                t = Tag::noun;
            }
        }
        tags[i] = t;
        if (t == Tag::verb)
            seen_verb = true;
    }
    return tags;
}

} // namespace moviedesc::semantic
