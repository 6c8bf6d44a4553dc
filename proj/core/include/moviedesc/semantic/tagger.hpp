#pragma once

#include "moviedesc/semantic/lexicon.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace moviedesc::semantic {

enum class Tag { det, adj, noun, pron, verb, aux, to, prep, particle, conj, adv, punct };

std::string_view to_string(Tag tag);

/// Lowercased words and single punctuation marks. Apostrophes and hyphens
/// inside a word stay part of it.
std::vector<std::string> tokenize(std::string_view sentence);

bool is_punctuation(std::string_view token);

/// Part-of-speech provider. Implementations must return one tag per token.
class Tagger {
  public:
    virtual ~Tagger() = default;
    virtual std::vector<Tag> tag(const std::vector<std::string> &tokens) const = 0;
};

/// Closed-class word lists plus the lexicon's nouns, verbs and adjectives,
/// resolved left to right by local context. Unknown words are nouns.
class LexiconTagger : public Tagger {
  public:
    explicit LexiconTagger(const Lexicon &lexicon) : lexicon_(lexicon) {}
    std::vector<Tag> tag(const std::vector<std::string> &tokens) const override;

  private:
    const Lexicon &lexicon_;
};

} // namespace moviedesc::semantic
