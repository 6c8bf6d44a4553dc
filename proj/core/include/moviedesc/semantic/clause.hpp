#pragma once

#include "moviedesc/semantic/tagger.hpp"

#include <string>
#include <vector>

namespace moviedesc::semantic {

struct Clause {
    std::vector<std::string> tokens; ///< lowercased, punctuation removed
    std::string source_sentence;

    std::string text() const;
};

/// Splits coordinated verb phrases into one clause each. The subject is
/// copied into every conjunct; a bare verb followed by a conjunct whose
/// remainder starts with a noun phrase shares that remainder ("he shot and
/// modified the video"). A conjunct with its own subject stands alone.
std::vector<Clause> split_clauses(std::string_view sentence, const Tagger &tagger);

enum class ChunkKind { np, vp, pp };

std::string_view to_string(ChunkKind kind);

struct Chunk {
    ChunkKind kind = ChunkKind::np;
    std::vector<std::string> tokens;
    std::vector<Tag> tags;
    std::size_t head = 0; ///< index into tokens

    std::string text() const;
    /// Tokens without determiners.
    std::string content_text() const;
};

/// Deterministic chunk grammar over tags:
///   NP = (DET | ADJ | NOUN)* NOUN | PRON, optionally coordinated with and/or
///   VP = (AUX | ADV)* VERB ((TO) VERB)* PARTICLE*
///   PP = PREP
/// Tokens outside any chunk (adverbs, conjunctions, stray adjectives) are
/// skipped.
std::vector<Chunk> chunk_clause(const Clause &clause, const Tagger &tagger);

/// NP: rightmost noun or pronoun. VP: last verb.
const std::string &head_word(const Chunk &chunk);

} // namespace moviedesc::semantic
