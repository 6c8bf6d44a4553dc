#include "moviedesc/semantic/wsd.hpp"

#include "moviedesc/error.hpp"

#include <set>

namespace moviedesc::semantic {

int MostFrequentSense::choose(std::string_view, PartOfSpeech, const Clause &, const Lexicon &) const { return 1; }

int ContextOverlap::choose(std::string_view lemma, PartOfSpeech pos, const Clause &context,
                           const Lexicon &lexicon) const {
    std::set<std::string, std::less<>> words;
    for (const auto &tok : context.tokens) {
        if (tok == lemma)
            continue;
        words.insert(tok);
        words.insert(lexicon.noun_lemma(tok));
        words.insert(lexicon.verb_lemma(tok));
    }
    int best = 1;
    std::size_t best_overlap = 0;
    for (const auto &entry : lexicon.senses(lemma, pos)) {
        std::size_t overlap = 0;
        for (const auto &w : entry.context)
            overlap += words.contains(w) ? 1 : 0;
        if (overlap > best_overlap) {
            best_overlap = overlap;
            best = entry.number;
        }
    }
    return best;
}

Disambiguation disambiguate(std::string_view lemma, PartOfSpeech pos, const Clause &context,
                            const Disambiguator &wsd, const Lexicon &lexicon) {
    const auto &list = lexicon.senses(lemma, pos);
    if (list.empty()) {
        const bool known = pos == PartOfSpeech::noun ? lexicon.is_noun(lemma) : !lexicon.frames_for(lemma).empty();
        return {Sense{std::string(lemma), pos, 1}, !known};
    }
    const int number = wsd.choose(lemma, pos, context, lexicon);
    if (number < 1 || static_cast<std::size_t>(number) > list.size())
        throw Error("disambiguator chose sense " + std::to_string(number) + " of '" + std::string(lemma) + "', which has " +
                    std::to_string(list.size()));
    return {Sense{std::string(lemma), pos, number}, false};
}

} // namespace moviedesc::semantic
