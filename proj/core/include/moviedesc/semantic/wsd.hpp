#pragma once

#include "moviedesc/semantic/clause.hpp"
#include "moviedesc/semantic/lexicon.hpp"

namespace moviedesc::semantic {

/// Chooses a sense number for a lemma listed in the lexicon.
class Disambiguator {
  public:
    virtual ~Disambiguator() = default;
    virtual int choose(std::string_view lemma, PartOfSpeech pos, const Clause &context,
                       const Lexicon &lexicon) const = 0;
};

/// Always sense 1.
class MostFrequentSense : public Disambiguator {
  public:
    int choose(std::string_view lemma, PartOfSpeech pos, const Clause &context,
               const Lexicon &lexicon) const override;
};

/// Picks the sense whose context words overlap most with the clause's noun
/// and verb lemmas. No overlap, or a tie, goes to the lower sense number.
class ContextOverlap : public Disambiguator {
  public:
    int choose(std::string_view lemma, PartOfSpeech pos, const Clause &context,
               const Lexicon &lexicon) const override;
};

struct Disambiguation {
    Sense sense;
    bool out_of_lexicon = false;
};

/// Sense of `lemma`. A lemma without a sense list gets sense 1; it is flagged
/// out-of-lexicon unless it is a known noun (nouns) or has frames (verbs).
Disambiguation disambiguate(std::string_view lemma, PartOfSpeech pos, const Clause &context,
                            const Disambiguator &wsd, const Lexicon &lexicon);

} // namespace moviedesc::semantic
