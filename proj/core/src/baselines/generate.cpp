#include "moviedesc/baselines/generate.hpp"

#include "moviedesc/error.hpp"
#include "moviedesc/semantic/tagger.hpp"
#include "util/text.hpp"

#include <cctype>
#include <optional>

namespace moviedesc::baselines {
namespace {

bool vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool doubles_final(std::string_view w) {
    if (w.size() < 3)
        return false;
    const char c = w[w.size() - 1];
    if (vowel(c) || c == 'w' || c == 'x' || c == 'y')
        return false;
    if (!vowel(w[w.size() - 2]) || vowel(w[w.size() - 3]))
        return false;
    int groups = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (vowel(w[i]) && (i == 0 || !vowel(w[i - 1])))
            ++groups;
    return groups == 1;
}

std::string tuple_key(const semantic::SRTuple &t) {
    return std::string(semantic::to_string(t.mode)) + "\t" + t.str();
}

std::vector<std::string> surface_tokens(std::string_view label) { return semantic::tokenize(label_surface(label)); }

std::string best_of(const std::map<std::string, std::size_t> &counts) {
    const std::string *best = nullptr;
    std::size_t best_n = 0;
    for (const auto &[text, n] : counts)
        if (n > best_n) {
            best = &text;
            best_n = n;
        }
    return *best;
}

constexpr VerbForm kForms[] = {VerbForm::base, VerbForm::s, VerbForm::ed, VerbForm::ing};
constexpr std::string_view kFormNames[] = {"base", "s", "ed", "ing"};

/// Pattern tokens: literal words or "{slot}" / "{verb:form}" placeholders.
std::optional<std::vector<std::string>> make_pattern(const semantic::SRTuple &t, const std::string &sentence) {
    auto tokens = semantic::tokenize(sentence);
    std::vector<bool> used(tokens.size(), false);

    const auto take = [&](std::size_t at, std::size_t len, std::string placeholder) {
        tokens[at] = std::move(placeholder);
        for (std::size_t k = 1; k < len; ++k)
            tokens[at + k].clear();
        for (std::size_t k = 0; k < len; ++k)
            used[at + k] = true;
    };
    const auto find_span = [&](const std::vector<std::string> &span, std::size_t &at) {
        if (span.empty())
            return false;
        for (std::size_t i = 0; i + span.size() <= tokens.size(); ++i) {
            bool ok = true;
            for (std::size_t k = 0; k < span.size() && ok; ++k)
                ok = !used[i + k] && tokens[i + k] == span[k];
            if (ok) {
                at = i;
                return true;
            }
        }
        return false;
    };
    const auto noun_slot = [&](const std::optional<std::string> &label, const char *name) {
        if (!label)
            return true;
        std::size_t at = 0;
        const auto span = surface_tokens(*label);
        if (!find_span(span, at))
            return false;
        take(at, span.size(), std::string("{") + name + "}");
        return true;
    };

    if (!noun_slot(t.subject, "subject"))
        return std::nullopt;
    const auto verb = surface_tokens(t.verb);
    if (verb.empty())
        return std::nullopt;
    bool verb_found = false;
    for (std::size_t f = 0; f < 4 && !verb_found; ++f) {
        auto span = verb;
        span[0] = inflect(verb[0], kForms[f]);
        std::size_t at = 0;
        if (find_span(span, at)) {
            take(at, span.size(), "{verb:" + std::string(kFormNames[f]) + "}");
            verb_found = true;
        }
    }
    if (!verb_found || !noun_slot(t.object, "object") || !noun_slot(t.location, "location"))
        return std::nullopt;
    std::vector<std::string> out;
    for (auto &tok : tokens)
        if (!tok.empty())
            out.push_back(std::move(tok));
    return out;
}

std::string fill(std::string_view pattern, const semantic::SRTuple &t) {
    std::vector<std::string> out;
    for (const auto tok : util::split_ws(pattern)) {
        const auto append = [&](const std::vector<std::string> &words) { out.insert(out.end(), words.begin(), words.end()); };
        if (tok == "{subject}")
            append(surface_tokens(*t.subject));
        else if (tok == "{object}")
            append(surface_tokens(*t.object));
        else if (tok == "{location}")
            append(surface_tokens(*t.location));
        else if (tok.starts_with("{verb:")) {
            auto words = surface_tokens(t.verb);
            const auto form = tok.substr(6, tok.size() - 7);
            for (std::size_t f = 0; f < 4; ++f)
                if (kFormNames[f] == form)
                    words[0] = inflect(words[0], kForms[f]);
            append(words);
        } else {
            out.emplace_back(tok);
        }
    }
    return detokenize(out);
}

} // namespace

std::string inflect(std::string_view lemma, VerbForm form) {
    std::string w(lemma);
    if (w.empty())
        return w;
    const auto ends = [&](std::string_view s) { return w.ends_with(s); };
    const bool consonant_y = w.size() > 1 && w.back() == 'y' && !vowel(w[w.size() - 2]);
    switch (form) {
    case VerbForm::base:
        return w;
    case VerbForm::s:
        if (ends("s") || ends("x") || ends("z") || ends("ch") || ends("sh") || ends("o"))
            return w + "es";
        if (consonant_y)
            return w.substr(0, w.size() - 1) + "ies";
        return w + "s";
    case VerbForm::ed:
        if (ends("e"))
            return w + "d";
        if (consonant_y)
            return w.substr(0, w.size() - 1) + "ied";
        if (doubles_final(w))
            return w + w.back() + "ed";
        return w + "ed";
    case VerbForm::ing:
        if (ends("ie"))
            return w.substr(0, w.size() - 2) + "ying";
        if (ends("e") && !ends("ee") && w.size() > 2)
            return w.substr(0, w.size() - 1) + "ing";
        if (doubles_final(w))
            return w + w.back() + "ing";
        return w + "ing";
    }
    return w;
}

std::string label_surface(std::string_view label) {
    const auto hash = label.rfind('#');
    if (hash != std::string_view::npos && hash + 1 < label.size() &&
        std::isdigit(static_cast<unsigned char>(label[hash + 1])))
        label = label.substr(0, hash);
    return std::string(label);
}

std::string detokenize(const std::vector<std::string> &tokens) {
    std::string out;
    for (const auto &tok : tokens) {
        const bool attach = tok.size() == 1 && std::string_view(".,!?;:").find(tok[0]) != std::string_view::npos;
        if (!out.empty() && !attach)
            out += ' ';
        out += tok;
    }
    if (!out.empty())
        out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

TemplateBank TemplateBank::fit(const std::vector<SrSentencePair> &pairs) {
    if (pairs.empty())
        throw Error("template bank: no training pairs");
    TemplateBank bank;
    for (const auto &[tuple, sentence] : pairs) {
        ++bank.exact_[tuple_key(tuple)][sentence];
        if (const auto pattern = make_pattern(tuple, sentence)) {
            std::string text;
            for (const auto &tok : *pattern)
                text += (text.empty() ? "" : " ") + tok;
            ++bank.patterns_[{tuple.verb, tuple.subject.has_value(), tuple.object.has_value(),
                              tuple.location.has_value()}][text];
        }
    }
    return bank;
}

std::size_t TemplateBank::pattern_count() const {
    std::size_t n = 0;
    for (const auto &[_, m] : patterns_)
        n += m.size();
    return n;
}

Generation TemplateBank::generate(const semantic::SRTuple &tuple) const {
    if (empty())
        throw Error("template bank is empty");
    if (const auto it = exact_.find(tuple_key(tuple)); it != exact_.end())
        return {best_of(it->second), GenerationLevel::exact};

    auto t = tuple;
    const auto try_level = [&](GenerationLevel level) -> std::optional<Generation> {
        const auto it = patterns_.find({t.verb, t.subject.has_value(), t.object.has_value(), t.location.has_value()});
        if (it == patterns_.end())
            return std::nullopt;
        return Generation{fill(best_of(it->second), t), level};
    };
    if (auto g = try_level(GenerationLevel::pattern))
        return *g;
    if (t.location) {
        t.location.reset();
        if (auto g = try_level(GenerationLevel::drop_location))
            return *g;
    }
    if (t.object) {
        t.object.reset();
        if (auto g = try_level(GenerationLevel::drop_object))
            return *g;
    }
    auto words = surface_tokens(tuple.verb);
    if (words.empty())
        throw Error("cannot generate for an empty verb");
    words[0] = inflect(words[0], VerbForm::s);
    words.insert(words.begin(), "someone");
    words.emplace_back(".");
    return {detokenize(words), GenerationLevel::fallback};
}

} // namespace moviedesc::baselines
