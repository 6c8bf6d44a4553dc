#pragma once

#include "moviedesc/semantic/clause.hpp"
#include "moviedesc/semantic/lexicon.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace moviedesc::semantic {

struct RoleBinding {
    std::string role;  ///< "Action" for the verb slot
    std::size_t chunk = 0; ///< index of the bound NP or VP chunk
    std::string preposition; ///< set for slots folded from PP + NP
    Sense sense;
    std::string sense_label; ///< sense-mode label (synset-aware)
    std::string text_label;  ///< text-mode label

    friend bool operator==(const RoleBinding &, const RoleBinding &) = default;
};

struct RoleAssignment {
    std::size_t frame = 0; ///< index into Lexicon::frames()
    std::string frame_id;
    std::vector<RoleBinding> bindings; ///< pattern order, verb included

    const RoleBinding *find(std::string_view role) const;

    friend bool operator==(const RoleAssignment &, const RoleAssignment &) = default;
};

/// Sense chooser for noun heads; receives the noun lemma.
using NounSenseFn = std::function<Sense(std::string_view lemma)>;

struct FrameMatch {
    std::vector<RoleAssignment> assignments; ///< survivors, lexicon order
    bool no_frame = false;                   ///< the verb has no frames at all
};

/// Syntactic then semantic frame match for the frames of every sense of
/// `verb_lemma`. A PP chunk and the NP after it fill one pattern slot; a PP
/// with no NP after it is ignored. Patterns must cover the chunk sequence
/// exactly. `noun_sense` defaults to sense 1.
FrameMatch match_verb_frames(std::string_view verb_lemma, const std::vector<Chunk> &chunks, const Lexicon &lexicon,
                             const NounSenseFn &noun_sense = {});

/// Label of an NP chunk in text mode: a lone aliased pronoun reads as its
/// target lemma, anything else as its text without determiners.
std::string np_text_label(const Chunk &chunk, const Lexicon &lexicon);

/// True when every bound NP head satisfies its slot's restriction.
bool satisfies_restrictions(const RoleAssignment &assignment, const std::vector<Chunk> &chunks,
                            const Lexicon &lexicon);

} // namespace moviedesc::semantic
