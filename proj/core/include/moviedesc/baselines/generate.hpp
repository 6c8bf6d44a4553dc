#pragma once

#include "moviedesc/semantic/sr.hpp"

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace moviedesc::baselines {

using SrSentencePair = std::pair<semantic::SRTuple, std::string>;

enum class VerbForm { base, s, ed, ing };

/// Regular English inflection; a short consonant-vowel-consonant stem doubles
/// its last consonant before -ed/-ing.
std::string inflect(std::string_view lemma, VerbForm form);

/// Label text without a "#n" sense suffix.
std::string label_surface(std::string_view label);

/// Joins tokens with spaces, attaches . , ! ? ; : to the preceding token and
/// capitalizes the first letter.
std::string detokenize(const std::vector<std::string> &tokens);

/// Which rule produced a generated sentence.
enum class GenerationLevel { exact, pattern, drop_location, drop_object, fallback };

struct Generation {
    std::string sentence;
    GenerationLevel level = GenerationLevel::fallback;
};

/// Retrieval-and-substitution stand-in for a phrase-based translator. Each
/// training sentence whose slot labels can all be located becomes a pattern
/// with placeholders, keyed by verb and filled-slot signature.
class TemplateBank {
  public:
    /// Throws on an empty pair list.
    static TemplateBank fit(const std::vector<SrSentencePair> &pairs);

    /// A tuple seen in training yields its most frequent sentence. Otherwise
    /// the most frequent pattern for (verb, signature) is filled in, backing
    /// off by dropping the location and then the object, and finally
    /// "Someone <verb>s.". Count ties go to the lexicographically smaller
    /// sentence or pattern.
    Generation generate(const semantic::SRTuple &tuple) const;

    std::size_t pattern_count() const;
    bool empty() const { return exact_.empty() && patterns_.empty(); }

  private:
    using Key = std::tuple<std::string, bool, bool, bool>; ///< verb, subject, object, location
    std::map<std::string, std::map<std::string, std::size_t>> exact_;
    std::map<Key, std::map<std::string, std::size_t>> patterns_;
};

} // namespace moviedesc::baselines
