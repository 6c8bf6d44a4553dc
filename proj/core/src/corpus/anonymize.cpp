#include "moviedesc/corpus/anonymize.hpp"

#include "moviedesc/corpus/project.hpp"
#include "moviedesc/error.hpp"
#include "util/io.hpp"
#include "util/text.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace moviedesc::corpus {
namespace {

bool word_byte(unsigned char c) { return std::isalnum(c) || c == '\'' || c == '-' || c >= 0x80; }

struct Token {
    std::size_t begin = 0;
    std::size_t end = 0;
    bool word = false;
    std::string lower;  ///< lowercased, possessive suffix removed
    std::string suffix; ///< possessive suffix as written, or empty
    bool capitalized = false;
};

std::vector<Token> tokenize(std::string_view text) {
    static constexpr std::string_view kCurly = "\xE2\x80\x99"; // right single quotation mark
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        Token t;
        t.begin = i;
        if (!word_byte(c) || c == '\'' || c == '-') {
            t.end = i + 1;
            out.push_back(std::move(t));
            ++i;
            continue;
        }
        while (i < text.size() && word_byte(static_cast<unsigned char>(text[i])))
            ++i;
        // A trailing quote belongs to the word only as a plural possessive.
        std::size_t end = i;
        auto body = text.substr(t.begin, end - t.begin);
        while (!body.empty() && (body.back() == '\'' || body.back() == '-') &&
               !(body.size() > 1 && body.back() == '\'' && body[body.size() - 2] == 's')) {
            body.remove_suffix(1);
            --end;
        }
        i = end;
        t.end = end;
        t.word = true;
        t.capitalized = std::isupper(static_cast<unsigned char>(body.front())) != 0;
        std::string_view base = body;
        const std::string curly_s = std::string(kCurly) + "s";
        if (base.size() > 2 && base.ends_with("'s"))
            t.suffix = "'s";
        else if (base.size() > curly_s.size() && base.ends_with(curly_s))
            t.suffix = curly_s;
        else if (base.size() > 2 && base.ends_with("s'"))
            t.suffix = "'";
        else if (base.size() > kCurly.size() + 1 && base.ends_with(kCurly) &&
                 base[base.size() - kCurly.size() - 1] == 's')
            t.suffix = std::string(kCurly);
        base.remove_suffix(t.suffix.size());
        t.lower = util::lowercase(base);
        out.push_back(std::move(t));
    }
    return out;
}

enum class Number { singular, plural };

struct Mention {
    std::size_t first = 0; ///< token index
    std::size_t last = 0;  ///< token index, inclusive
    Number number = Number::singular;
    bool possessive() const { return !suffix.empty(); }
    std::string suffix;
};

class Matcher {
  public:
    Matcher(std::string_view text, const std::vector<Token> &tokens, const NameLexicon &names,
            const PersonPatterns &patterns)
        : text_(text), t_(tokens), names_(names), p_(patterns) {}

    std::optional<Mention> mention_at(std::size_t i) const {
        if (i >= t_.size() || !t_[i].word)
            return std::nullopt;
        if (auto m = name_at(i))
            return m;
        const auto &w = t_[i].lower;
        if (w == "someone" || w == "somebody")
            return make(i, i, Number::singular);
        // Already anonymous; a description never absorbs it, which keeps the
        // rewrite idempotent.
        if (w == "people")
            return make(i, i, Number::plural);
        return description_at(i);
    }

  private:
    Mention make(std::size_t first, std::size_t last, Number n) const {
        return Mention{first, last, n, t_[last].suffix};
    }

    /// Length in tokens of a name entry matched at i, or 0. Only the last
    /// word may carry a possessive.
    std::size_t name_length(std::size_t i) const {
        for (const auto &entry : names_.entries()) {
            if (i + entry.size() > t_.size())
                continue;
            bool ok = true;
            for (std::size_t k = 0; k < entry.size() && ok; ++k) {
                const auto &tok = t_[i + k];
                ok = tok.word && tok.capitalized && tok.lower == entry[k] &&
                     (tok.suffix.empty() || k + 1 == entry.size());
            }
            if (ok)
                return entry.size();
        }
        return 0;
    }

    std::optional<Mention> name_at(std::size_t i) const {
        std::size_t j = i;
        while (j < t_.size() && t_[j].word && t_[j].capitalized && t_[j].suffix.empty() &&
               p_.titles.contains(t_[j].lower)) {
            ++j;
            if (j < t_.size() && !t_[j].word && text_[t_[j].begin] == '.')
                ++j;
        }
        std::size_t len = name_length(j);
        if (len == 0)
            return std::nullopt;
        std::size_t end = j + len;
        // Adjacent names ("Harry Potter" from two entries) form one mention.
        while (t_[end - 1].suffix.empty()) {
            const auto more = name_length(end);
            if (more == 0)
                break;
            end += more;
        }
        return make(i, end - 1, Number::singular);
    }

    std::optional<Mention> description_at(std::size_t i) const {
        std::size_t j = i;
        bool singular_det = false;
        const auto plain = [&](std::size_t k) { return k < t_.size() && t_[k].word && t_[k].suffix.empty(); };
        if (plain(j) && (p_.singular_determiners.contains(t_[j].lower) || p_.plural_determiners.contains(t_[j].lower))) {
            singular_det = p_.singular_determiners.contains(t_[j].lower);
            const bool definite = t_[j].lower == "the" || t_[j].lower == "these" || t_[j].lower == "those";
            ++j;
            // "the two men", "the other woman"
            if (definite && plain(j) && p_.plural_determiners.contains(t_[j].lower) &&
                !p_.singular_determiners.contains(t_[j].lower)) {
                singular_det = singular_det && p_.adjectives.contains(t_[j].lower);
                ++j;
            }
        }
        while (plain(j) && p_.adjectives.contains(t_[j].lower) && j + 1 < t_.size() && t_[j + 1].word)
            ++j;
        if (j >= t_.size() || !t_[j].word)
            return std::nullopt;
        const auto &noun = t_[j].lower;
        if (p_.plural.contains(noun))
            return make(i, j, Number::plural);
        if (singular_det && p_.singular.contains(noun))
            return make(i, j, Number::singular);
        return std::nullopt;
    }

    std::string_view text_;
    const std::vector<Token> &t_;
    const NameLexicon &names_;
    const PersonPatterns &p_;
};

bool sentence_initial(const std::vector<Token> &tokens, std::string_view text, std::size_t i) {
    while (i > 0) {
        const auto &prev = tokens[i - 1];
        if (prev.word)
            return false;
        const char c = text[prev.begin];
        if (c == '"' || c == '(' || c == '\'')
            --i;
        else
            return c == '.' || c == '!' || c == '?';
    }
    return true;
}

} // namespace

PersonPatterns PersonPatterns::parse(std::string_view text, std::string_view source) {
    PersonPatterns p;
    const std::pair<std::string_view, std::set<std::string, std::less<>> *> keys[] = {
        {"singular_determiners", &p.singular_determiners},
        {"plural_determiners", &p.plural_determiners},
        {"adjectives", &p.adjectives},
        {"singular", &p.singular},
        {"plural", &p.plural},
        {"titles", &p.titles},
    };
    std::size_t n = 0;
    for (auto line : util::split_lines(text)) {
        ++n;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = util::trim(line);
        if (line.empty())
            continue;
        const auto colon = line.find(':');
        if (colon == std::string_view::npos)
            throw Error("person patterns " + std::string(source) + ":" + std::to_string(n) + ": expected 'key: words'");
        const auto key = util::trim(line.substr(0, colon));
        auto *target = static_cast<std::set<std::string, std::less<>> *>(nullptr);
        for (const auto &[name, set] : keys)
            if (name == key)
                target = set;
        if (!target)
            throw Error("person patterns " + std::string(source) + ":" + std::to_string(n) + ": unknown key '" +
                        std::string(key) + "'");
        for (const auto w : util::split_ws(line.substr(colon + 1)))
            target->insert(util::lowercase(w));
    }
    return p;
}

PersonPatterns PersonPatterns::load(const std::filesystem::path &path) {
    return parse(util::read_file(path), path.string());
}

NameLexicon::NameLexicon(const std::vector<std::string> &names) {
    for (const auto &name : names) {
        std::vector<std::string> words;
        for (const auto w : util::split_ws(name))
            words.push_back(util::lowercase(w));
        if (!words.empty() && std::find(entries_.begin(), entries_.end(), words) == entries_.end())
            entries_.push_back(std::move(words));
    }
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const auto &a, const auto &b) { return a.size() > b.size(); });
}

NameLexicon NameLexicon::parse(std::string_view text) {
    std::vector<std::string> names;
    for (auto line : util::split_lines(text)) {
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = util::trim(line);
        if (!line.empty())
            names.emplace_back(line);
    }
    return NameLexicon(names);
}

NameLexicon NameLexicon::load(const std::filesystem::path &path) { return parse(util::read_file(path)); }

AnonymizeResult anonymize(std::string_view sentence, const NameLexicon &names, const PersonPatterns &patterns) {
    const auto tokens = tokenize(sentence);
    const Matcher matcher(sentence, tokens, names, patterns);
    const auto is_word = [&](std::size_t k, std::string_view w) {
        return k < tokens.size() && tokens[k].word && tokens[k].suffix.empty() && tokens[k].lower == w;
    };
    const auto is_comma = [&](std::size_t k) {
        return k < tokens.size() && !tokens[k].word && sentence[tokens[k].begin] == ',';
    };

    AnonymizeResult result;
    std::size_t copied = 0;
    std::size_t i = 0;
    while (i < tokens.size()) {
        auto first = matcher.mention_at(i);
        if (!first) {
            ++i;
            continue;
        }
        // Coordination: m (, m)* (,)? and m (and m)*
        Mention span = *first;
        std::size_t mentions = 1;
        std::size_t committed = 1;
        Mention committed_span = span;
        std::size_t k = span.last + 1;
        while (!span.possessive()) {
            std::size_t next = k;
            bool conj = false;
            if (is_comma(next))
                ++next;
            if (is_word(next, "and")) {
                conj = true;
                ++next;
            }
            if (next == k)
                break;
            const auto m = matcher.mention_at(next);
            if (!m)
                break;
            span.last = m->last;
            span.suffix = m->suffix;
            ++mentions;
            if (conj) {
                committed = mentions;
                committed_span = span;
            }
            k = m->last + 1;
        }
        Number number = first->number;
        if (committed >= 2) {
            span = committed_span;
            number = Number::plural;
        } else {
            span = *first;
        }

        std::string replacement = number == Number::plural ? "people" : "someone";
        if (sentence_initial(tokens, sentence, span.first))
            replacement[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(replacement[0])));
        replacement += span.suffix;
        const auto begin = tokens[span.first].begin;
        const auto end = tokens[span.last].end;
        const auto original = sentence.substr(begin, end - begin);
        result.text.append(sentence.substr(copied, begin - copied));
        result.text += replacement;
        copied = end;
        if (original != replacement)
            result.replacements.push_back({begin, std::string(original), replacement});
        i = span.last + 1;
    }
    result.text.append(sentence.substr(copied));
    return result;
}

std::size_t anonymize_movie(CorpusProject &project, std::string_view movie_id, const NameLexicon &names,
                            const PersonPatterns &patterns, std::vector<SnippetReplacement> *log) {
    if (!project.find_movie(movie_id))
        throw Error("unknown movie '" + std::string(movie_id) + "'");
    std::size_t changed = 0;
    const auto snippets = project.snippets();
    for (const auto &s : snippets) {
        if (s.movie_id != movie_id || s.locked)
            continue;
        auto r = anonymize(s.sentence, names, patterns);
        if (r.text == s.sentence)
            continue;
        if (log)
            for (auto &rep : r.replacements)
                log->push_back({s.id, std::move(rep)});
        Snippet next = s;
        next.sentence = std::move(r.text);
        project.replace_snippet(std::move(next));
        ++changed;
    }
    return changed;
}

} // namespace moviedesc::corpus
