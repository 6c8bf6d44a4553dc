#pragma once

#include "moviedesc/semantic/sr.hpp"
#include "moviedesc/semantic/wsd.hpp"

#include <optional>
#include <string>
#include <vector>

namespace moviedesc::semantic {

struct ClauseAnalysis {
    Clause clause;
    std::vector<Chunk> chunks;
    /// Disambiguated sense of the first verb phrase's head.
    std::optional<Sense> verb_sense;
    std::vector<RoleAssignment> assignments; ///< every surviving frame
    std::optional<std::size_t> chosen;      ///< index into assignments
    /// "no-verb", "no-frame", "no-match", "out-of-lexicon:<lemma>".
    std::vector<std::string> flags;
    std::size_t dropped_roles = 0;

    /// The chosen assignment's tuple, or a verb-only tuple when no frame
    /// survived; nullopt without a verb.
    std::optional<SRTuple> tuple(LabelMode mode, const Lexicon &lexicon) const;
};

/// Clause splitting, chunking, disambiguation and frame matching. Among
/// surviving frames the first whose verb sense equals the disambiguated one
/// is chosen, else the first. Holds references; all three must outlive it.
class SemanticParser {
  public:
    SemanticParser(const Lexicon &lexicon, const Tagger &tagger, const Disambiguator &wsd)
        : lexicon_(lexicon), tagger_(tagger), wsd_(wsd) {}

    std::vector<ClauseAnalysis> parse(std::string_view sentence) const;
    ClauseAnalysis analyze(const Clause &clause) const;

    const Lexicon &lexicon() const { return lexicon_; }

  private:
    const Lexicon &lexicon_;
    const Tagger &tagger_;
    const Disambiguator &wsd_;
};

/// One JSON object (no trailing newline) with sentence id, clause index,
/// clause text, source sentence, frame id, flags and the tuple's labels.
std::string sr_record_json(std::string_view sentence_id, std::size_t clause_index, const ClauseAnalysis &analysis,
                           LabelMode mode, const Lexicon &lexicon);

} // namespace moviedesc::semantic
