#include "moviedesc/semantic/lexicon.hpp"

#include "moviedesc/error.hpp"
#include "util/io.hpp"
#include "util/text.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace moviedesc::semantic {
namespace {

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string &what) {
    throw Error("lexicon " + std::string(source) + ":" + std::to_string(line) + ": " + what);
}

/// Calls `fn(line_number, content)` for every non-blank, non-comment line.
template <typename Fn> void for_each_entry(std::string_view text, Fn &&fn) {
    std::size_t n = 0;
    for (const auto raw : util::split_lines(text)) {
        ++n;
        const auto line = util::trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        fn(n, line);
    }
}

bool is_word(std::string_view w) {
    if (w.empty())
        return false;
    for (const char c : w)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '\'' || c == '_'))
            return false;
    return true;
}

bool is_consonant(char c) { return std::string_view("aeiou").find(c) == std::string_view::npos; }

const std::vector<SenseEntry> kNoSenses;

} // namespace

std::string_view to_string(PartOfSpeech pos) { return pos == PartOfSpeech::noun ? "noun" : "verb"; }

std::string Sense::str() const { return lemma + "#" + std::to_string(number); }

Sense parse_sense(std::string_view text, PartOfSpeech pos) {
    const auto hash = text.find('#');
    if (hash == std::string_view::npos || hash == 0)
        throw Error("malformed sense '" + std::string(text) + "'");
    int number = 0;
    const auto digits = text.substr(hash + 1);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), number);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || number < 1)
        throw Error("malformed sense '" + std::string(text) + "'");
    return {std::string(text.substr(0, hash)), pos, number};
}

std::string_view to_string(Restriction r) {
    switch (r) {
    case Restriction::any:
        return "any";
    case Restriction::animate:
        return "animate";
    case Restriction::solid:
        return "solid";
    case Restriction::location:
        return "location";
    case Restriction::machine:
        return "machine";
    }
    return "any";
}

std::optional<Restriction> parse_restriction(std::string_view text) {
    for (const auto r :
         {Restriction::any, Restriction::animate, Restriction::solid, Restriction::location, Restriction::machine})
        if (to_string(r) == text)
            return r;
    return std::nullopt;
}

PropertySet::PropertySet(std::initializer_list<Restriction> items) {
    for (const auto r : items)
        add(r);
}

void PropertySet::add(Restriction r) {
    if (r != Restriction::any)
        bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(r));
}

bool PropertySet::satisfies(Restriction r) const {
    return r == Restriction::any || (bits_ & (1u << static_cast<unsigned>(r))) != 0;
}

Lexicon Lexicon::load(const std::string &dir) {
    namespace fs = std::filesystem;
    const fs::path root(dir);
    Lexicon lex;
    lex.add_nouns(util::read_file(root / "nouns.txt"), "nouns.txt");
    lex.add_senses(util::read_file(root / "senses.txt"), "senses.txt");
    lex.add_frames(util::read_file(root / "frames.txt"), "frames.txt");
    if (fs::exists(root / "forms.txt"))
        lex.add_forms(util::read_file(root / "forms.txt"), "forms.txt");
    if (fs::exists(root / "adjectives.txt"))
        lex.add_adjectives(util::read_file(root / "adjectives.txt"), "adjectives.txt");
    if (fs::exists(root / "phrasal.txt"))
        lex.add_phrasal(util::read_file(root / "phrasal.txt"), "phrasal.txt");
    return lex;
}

void Lexicon::add_nouns(std::string_view text, std::string_view source) {
    for_each_entry(text, [&](std::size_t n, std::string_view line) {
        if (const auto arrow = line.find("->"); arrow != std::string_view::npos) {
            const auto word = util::trim(line.substr(0, arrow));
            const auto target = util::trim(line.substr(arrow + 2));
            if (!is_word(word) || !is_word(target))
                fail(source, n, "malformed alias");
            aliases_[std::string(word)] = std::string(target);
            return;
        }
        const auto colon = line.find(':');
        if (colon == std::string_view::npos)
            fail(source, n, "expected 'lemma: properties'");
        const auto lemma = util::trim(line.substr(0, colon));
        if (!is_word(lemma))
            fail(source, n, "malformed lemma");
        if (nouns_.contains(lemma))
            fail(source, n, "duplicate noun '" + std::string(lemma) + "'");
        PropertySet props;
        for (const auto item : util::split(line.substr(colon + 1), ',')) {
            if (item.empty())
                continue;
            const auto r = parse_restriction(item);
            if (!r)
                fail(source, n, "unknown property '" + std::string(item) + "'");
            props.add(*r);
        }
        nouns_.emplace(std::string(lemma), props);
    });
}

void Lexicon::add_frames(std::string_view text, std::string_view source) {
    std::map<std::string, int> per_sense;
    for (const auto &f : frames_)
        ++per_sense[f.verb_sense.str()];
    for_each_entry(text, [&](std::size_t n, std::string_view line) {
        const auto colon = line.find(':');
        const auto bar = line.rfind('|');
        if (colon == std::string_view::npos || bar == std::string_view::npos || bar < colon)
            fail(source, n, "expected 'lemma#n: PATTERN | roles'");
        VerbFrame frame;
        try {
            frame.verb_sense = parse_sense(util::trim(line.substr(0, colon)), PartOfSpeech::verb);
        } catch (const Error &e) {
            fail(source, n, e.what());
        }
        frame.pattern_text = std::string(util::trim(line.substr(colon + 1, bar - colon - 1)));
        int verbs = 0;
        for (const auto sym : util::split_ws(frame.pattern_text)) {
            PatternSlot slot;
            if (sym == "NP") {
                slot.kind = PatternSlot::Kind::np;
            } else if (sym == "V") {
                slot.kind = PatternSlot::Kind::verb;
                ++verbs;
            } else if (sym == "PP") {
                slot.kind = PatternSlot::Kind::pp;
            } else if (sym == "NP.Location") {
                slot.kind = PatternSlot::Kind::pp;
                slot.prepositions = {"in",     "on",    "at",      "inside", "into",   "onto",  "under",
                                     "behind", "near",  "across",  "along",  "around", "over",  "through",
                                     "by",     "beside", "outside", "above",  "below",  "beneath"};
            } else if (sym.starts_with("PP.")) {
                slot.kind = PatternSlot::Kind::pp;
                for (const auto prep : util::split(sym.substr(3), '|')) {
                    if (!is_word(prep))
                        fail(source, n, "malformed preposition in '" + std::string(sym) + "'");
                    slot.prepositions.emplace_back(prep);
                }
            } else {
                fail(source, n, "unknown pattern symbol '" + std::string(sym) + "'");
            }
            frame.pattern.push_back(std::move(slot));
        }
        if (verbs != 1)
            fail(source, n, "pattern must contain exactly one V");
        for (const auto item : util::split(line.substr(bar + 1), ',')) {
            if (item.empty())
                fail(source, n, "empty role");
            RoleSpec spec;
            const auto c = item.find(':');
            spec.role = std::string(util::trim(item.substr(0, c)));
            if (c != std::string_view::npos) {
                const auto r = parse_restriction(util::trim(item.substr(c + 1)));
                if (!r)
                    fail(source, n, "unknown restriction in '" + std::string(item) + "'");
                spec.restriction = *r;
            }
            frame.roles.push_back(std::move(spec));
        }
        if (frame.roles.size() + 1 != frame.pattern.size())
            fail(source, n, "roles must cover every non-V slot");
        frame.id = frame.verb_sense.str() + "." + std::to_string(++per_sense[frame.verb_sense.str()]);
        verbs_.insert(frame.verb_sense.lemma);
        frames_.push_back(std::move(frame));
    });
}

void Lexicon::add_senses(std::string_view text, std::string_view source) {
    for_each_entry(text, [&](std::size_t n, std::string_view line) {
        const auto colon = line.find(':');
        if (colon == std::string_view::npos)
            fail(source, n, "expected 'lemma: N=context ...'");
        auto head = util::trim(line.substr(0, colon));
        std::vector<PartOfSpeech> targets{PartOfSpeech::noun, PartOfSpeech::verb};
        if (head.ends_with("/n")) {
            targets = {PartOfSpeech::noun};
            head.remove_suffix(2);
        } else if (head.ends_with("/v")) {
            targets = {PartOfSpeech::verb};
            head.remove_suffix(2);
        }
        if (!is_word(head))
            fail(source, n, "malformed lemma");
        std::vector<SenseEntry> entries;
        for (const auto tok : util::split_ws(line.substr(colon + 1))) {
            if (tok.front() == '@') {
                if (entries.empty())
                    fail(source, n, "synset before any sense");
                try {
                    entries.back().synset = parse_sense(tok.substr(1), PartOfSpeech::verb).str();
                } catch (const Error &e) {
                    fail(source, n, e.what());
                }
                continue;
            }
            const auto eq = tok.find('=');
            SenseEntry entry;
            const auto num = tok.substr(0, eq);
            const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), entry.number);
            if (ec != std::errc() || ptr != num.data() + num.size() || entry.number < 1)
                fail(source, n, "malformed sense '" + std::string(tok) + "'");
            if (entry.number != static_cast<int>(entries.size()) + 1)
                fail(source, n, "senses must be numbered 1, 2, ...");
            if (eq != std::string_view::npos)
                for (const auto w : util::split(tok.substr(eq + 1), ','))
                    if (!w.empty())
                        entry.context.emplace_back(w);
            entries.push_back(std::move(entry));
        }
        if (entries.empty())
            fail(source, n, "no senses listed");
        for (const auto pos : targets) {
            auto &table = pos == PartOfSpeech::noun ? noun_senses_ : verb_senses_;
            if (table.contains(head))
                fail(source, n, "duplicate sense list for '" + std::string(head) + "'");
            table.emplace(std::string(head), entries);
            if (pos == PartOfSpeech::verb)
                verbs_.insert(std::string(head));
        }
    });
}

void Lexicon::add_forms(std::string_view text, std::string_view source) {
    for_each_entry(text, [&](std::size_t n, std::string_view line) {
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(source, n, "expected 'form=lemma'");
        const auto form = util::trim(line.substr(0, eq));
        const auto lemma = util::trim(line.substr(eq + 1));
        if (!is_word(form) || !is_word(lemma))
            fail(source, n, "malformed form");
        forms_[std::string(form)] = std::string(lemma);
    });
}

void Lexicon::add_adjectives(std::string_view text, std::string_view source) {
    for_each_entry(text, [&](std::size_t n, std::string_view line) {
        if (!is_word(line))
            fail(source, n, "malformed adjective");
        adjectives_.emplace(line);
    });
}

void Lexicon::add_phrasal(std::string_view text, std::string_view source) {
    for_each_entry(text, [&](std::size_t n, std::string_view line) {
        const auto words = util::split_ws(line);
        if (words.size() != 2 || !is_word(words[0]) || !is_word(words[1]))
            fail(source, n, "expected 'verb particle'");
        phrasal_.insert(std::string(words[0]) + " " + std::string(words[1]));
    });
}

std::string Lexicon::noun_lemma(std::string_view word) const {
    if (const auto it = aliases_.find(word); it != aliases_.end())
        return it->second;
    if (is_noun(word))
        return std::string(word);
    if (const auto it = forms_.find(word); it != forms_.end() && is_noun(it->second))
        return it->second;
    const std::string w(word);
    std::vector<std::string> candidates;
    if (w.ends_with("ies"))
        candidates.push_back(w.substr(0, w.size() - 3) + "y");
    if (w.ends_with("ves")) {
        candidates.push_back(w.substr(0, w.size() - 3) + "f");
        candidates.push_back(w.substr(0, w.size() - 3) + "fe");
    }
    if (w.ends_with("es"))
        candidates.push_back(w.substr(0, w.size() - 2));
    if (w.ends_with("s") && !w.ends_with("ss"))
        candidates.push_back(w.substr(0, w.size() - 1));
    for (const auto &c : candidates)
        if (is_noun(c))
            return c;
    return w;
}

std::string Lexicon::verb_lemma(std::string_view word) const {
    if (const auto it = forms_.find(word); it != forms_.end())
        return it->second;
    if (is_verb(word))
        return std::string(word);
    const std::string w(word);
    std::vector<std::string> candidates;
    const auto stem = [&](std::size_t cut) { return w.substr(0, w.size() - cut); };
    const auto undouble = [&](std::size_t cut) {
        const std::string s = stem(cut);
        if (s.size() >= 2 && s[s.size() - 1] == s[s.size() - 2] && is_consonant(s.back()))
            candidates.push_back(s.substr(0, s.size() - 1));
    };
    if (w.ends_with("ies"))
        candidates.push_back(stem(3) + "y");
    if (w.ends_with("es"))
        candidates.push_back(stem(2));
    if (w.ends_with("s"))
        candidates.push_back(stem(1));
    if (w.ends_with("ied"))
        candidates.push_back(stem(3) + "y");
    if (w.ends_with("ed")) {
        candidates.push_back(stem(2));
        candidates.push_back(stem(1));
        undouble(2);
    }
    if (w.ends_with("ing") && w.size() > 4) {
        candidates.push_back(stem(3));
        candidates.push_back(stem(3) + "e");
        undouble(3);
        if (w.ends_with("ying"))
            candidates.push_back(stem(4) + "ie");
    }
    for (const auto &c : candidates)
        if (is_verb(c))
            return c;
    return w;
}

bool Lexicon::is_noun(std::string_view lemma) const { return nouns_.contains(lemma) || noun_senses_.contains(lemma); }
bool Lexicon::is_verb(std::string_view lemma) const { return verbs_.contains(lemma); }
bool Lexicon::is_adjective(std::string_view word) const { return adjectives_.contains(word); }
bool Lexicon::is_alias(std::string_view word) const { return aliases_.contains(word); }
bool Lexicon::is_phrasal(std::string_view verb_lemma, std::string_view particle) const {
    return phrasal_.contains(std::string(verb_lemma) + " " + std::string(particle));
}

std::optional<PropertySet> Lexicon::properties(std::string_view lemma) const {
    if (const auto it = nouns_.find(lemma); it != nouns_.end())
        return it->second;
    return std::nullopt;
}

const std::vector<SenseEntry> &Lexicon::senses(std::string_view lemma, PartOfSpeech pos) const {
    const auto &table = pos == PartOfSpeech::noun ? noun_senses_ : verb_senses_;
    const auto it = table.find(lemma);
    return it == table.end() ? kNoSenses : it->second;
}

std::string Lexicon::sense_label(const Sense &sense) const {
    const auto &list = senses(sense.lemma, sense.pos);
    if (sense.number >= 1 && static_cast<std::size_t>(sense.number) <= list.size()) {
        const auto &entry = list[static_cast<std::size_t>(sense.number - 1)];
        if (!entry.synset.empty())
            return entry.synset;
    }
    return sense.str();
}

std::vector<Lexicon::FrameCandidate> Lexicon::frames_for(std::string_view lemma) const {
    // label reached -> own sense number, first listed sense wins
    std::map<std::string, int> reach;
    const auto &list = senses(lemma, PartOfSpeech::verb);
    for (const auto &entry : list) {
        const Sense own{std::string(lemma), PartOfSpeech::verb, entry.number};
        reach.emplace(own.str(), entry.number);
        if (!entry.synset.empty())
            reach.emplace(entry.synset, entry.number);
    }
    std::vector<FrameCandidate> out;
    for (std::size_t i = 0; i < frames_.size(); ++i) {
        const auto &sense = frames_[i].verb_sense;
        if (list.empty()) {
            if (sense.lemma == lemma)
                out.push_back({i, sense});
            continue;
        }
        if (const auto it = reach.find(sense.str()); it != reach.end())
            out.push_back({i, Sense{std::string(lemma), PartOfSpeech::verb, it->second}});
    }
    return out;
}

} // namespace moviedesc::semantic
