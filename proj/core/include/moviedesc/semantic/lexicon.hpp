#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace moviedesc::semantic {

enum class PartOfSpeech { noun, verb };

std::string_view to_string(PartOfSpeech pos);

/// A word sense, rendered "lemma#n".
struct Sense {
    std::string lemma;
    PartOfSpeech pos = PartOfSpeech::noun;
    int number = 1;

    std::string str() const;

    friend bool operator==(const Sense &, const Sense &) = default;
};

/// Parses "lemma#n". Throws on malformed input.
Sense parse_sense(std::string_view text, PartOfSpeech pos);

enum class Restriction : std::uint8_t { any, animate, solid, location, machine };

std::string_view to_string(Restriction r);
std::optional<Restriction> parse_restriction(std::string_view text);

/// Set of noun properties; `any` is always satisfied.
class PropertySet {
  public:
    PropertySet() = default;
    PropertySet(std::initializer_list<Restriction> items);

    void add(Restriction r);
    bool satisfies(Restriction r) const;
    bool empty() const { return bits_ == 0; }

    friend bool operator==(const PropertySet &, const PropertySet &) = default;

  private:
    std::uint8_t bits_ = 0;
};

/// One symbol of a syntactic pattern.
struct PatternSlot {
    enum class Kind { np, verb, pp } kind = Kind::np;
    /// For pp slots: accepted prepositions; empty accepts any.
    std::vector<std::string> prepositions;

    friend bool operator==(const PatternSlot &, const PatternSlot &) = default;
};

struct RoleSpec {
    std::string role;
    Restriction restriction = Restriction::any;

    friend bool operator==(const RoleSpec &, const RoleSpec &) = default;
};

struct VerbFrame {
    std::string id; ///< "lemma#n.k", k counting frames of the sense from 1
    Sense verb_sense;
    std::vector<PatternSlot> pattern;
    /// One entry per non-V slot, in pattern order.
    std::vector<RoleSpec> roles;
    std::string pattern_text;
};

struct SenseEntry {
    int number = 1;
    std::vector<std::string> context;
    /// Synset label the sense renders as; empty renders "lemma#number".
    std::string synset;
};

/// Immutable after construction; safe to share across threads.
class Lexicon {
  public:
    Lexicon() = default;

    /// Loads nouns.txt, frames.txt, senses.txt and, when present, forms.txt,
    /// adjectives.txt and phrasal.txt from `dir`.
    static Lexicon load(const std::string &dir);

    /// Each parser appends to the lexicon. `source` names the input in errors.
    void add_nouns(std::string_view text, std::string_view source = "nouns");
    void add_frames(std::string_view text, std::string_view source = "frames");
    void add_senses(std::string_view text, std::string_view source = "senses");
    void add_forms(std::string_view text, std::string_view source = "forms");
    void add_adjectives(std::string_view text, std::string_view source = "adjectives");
    /// Lines of "verb particle".
    void add_phrasal(std::string_view text, std::string_view source = "phrasal");

    /// Lemma of `word` as a noun: alias target, irregular form, or a
    /// plural-stripped form known to the lexicon; otherwise `word` itself.
    std::string noun_lemma(std::string_view word) const;
    std::string verb_lemma(std::string_view word) const;

    bool is_noun(std::string_view lemma) const;
    bool is_verb(std::string_view lemma) const;
    bool is_adjective(std::string_view word) const;
    bool is_alias(std::string_view word) const;
    /// The particle may sit between the verb and its object.
    bool is_phrasal(std::string_view verb_lemma, std::string_view particle) const;

    std::optional<PropertySet> properties(std::string_view lemma) const;

    /// Senses listed for the lemma and part of speech; empty when unlisted.
    const std::vector<SenseEntry> &senses(std::string_view lemma, PartOfSpeech pos) const;
    /// Synset label when set, else sense.str().
    std::string sense_label(const Sense &sense) const;

    const std::vector<VerbFrame> &frames() const { return frames_; }
    struct FrameCandidate {
        std::size_t frame = 0; ///< index into frames()
        Sense sense;           ///< the verb's own sense that reaches the frame
    };
    /// Every frame reachable from a sense of the verb `lemma`, directly or
    /// through the sense's synset label, in lexicon order. A lemma with frames
    /// but no sense list reaches the frames of its own senses.
    std::vector<FrameCandidate> frames_for(std::string_view lemma) const;

  private:
    std::map<std::string, PropertySet, std::less<>> nouns_;
    std::map<std::string, std::string, std::less<>> aliases_;
    std::map<std::string, std::string, std::less<>> forms_;
    std::set<std::string, std::less<>> adjectives_;
    std::set<std::string, std::less<>> verbs_;
    std::set<std::string, std::less<>> phrasal_; ///< "verb particle"
    std::map<std::string, std::vector<SenseEntry>, std::less<>> noun_senses_;
    std::map<std::string, std::vector<SenseEntry>, std::less<>> verb_senses_;
    std::vector<VerbFrame> frames_;
};

} // namespace moviedesc::semantic
