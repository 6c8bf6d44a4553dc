#include "moviedesc/semantic/frames.hpp"

#include <algorithm>

namespace moviedesc::semantic {
namespace {

struct Slot {
    PatternSlot::Kind kind;
    std::size_t chunk;
    std::string preposition;
};

std::vector<Slot> fold_slots(const std::vector<Chunk> &chunks) {
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        switch (chunks[i].kind) {
        case ChunkKind::np:
            slots.push_back({PatternSlot::Kind::np, i, {}});
            break;
        case ChunkKind::vp:
            slots.push_back({PatternSlot::Kind::verb, i, {}});
            break;
        case ChunkKind::pp:
            if (i + 1 < chunks.size() && chunks[i + 1].kind == ChunkKind::np) {
                slots.push_back({PatternSlot::Kind::pp, i + 1, head_word(chunks[i])});
                ++i;
            }
            break;
        }
    }
    return slots;
}

bool head_satisfies(const Chunk &np, Restriction r, const Lexicon &lexicon) {
    if (r == Restriction::any)
        return true;
    const auto props = lexicon.properties(lexicon.noun_lemma(head_word(np)));
    return props && props->satisfies(r);
}

} // namespace

const RoleBinding *RoleAssignment::find(std::string_view role) const {
    const auto it = std::find_if(bindings.begin(), bindings.end(), [&](const RoleBinding &b) { return b.role == role; });
    return it == bindings.end() ? nullptr : &*it;
}

std::string np_text_label(const Chunk &chunk, const Lexicon &lexicon) {
    if (chunk.tokens.size() == 1 && lexicon.is_alias(chunk.tokens[0]))
        return lexicon.noun_lemma(chunk.tokens[0]);
    return chunk.content_text();
}

FrameMatch match_verb_frames(std::string_view verb_lemma, const std::vector<Chunk> &chunks, const Lexicon &lexicon,
                             const NounSenseFn &noun_sense) {
    FrameMatch out;
    const auto candidates = lexicon.frames_for(verb_lemma);
    if (candidates.empty()) {
        out.no_frame = true;
        return out;
    }
    const auto slots = fold_slots(chunks);
    for (const auto &cand : candidates) {
        const auto &frame = lexicon.frames()[cand.frame];
        if (frame.pattern.size() != slots.size())
            continue;
        // Step 1: syntactic match.
        bool ok = true;
        for (std::size_t s = 0; s < slots.size() && ok; ++s) {
            const auto &want = frame.pattern[s];
            ok = want.kind == slots[s].kind;
            if (ok && want.kind == PatternSlot::Kind::pp && !want.prepositions.empty())
                ok = std::find(want.prepositions.begin(), want.prepositions.end(), slots[s].preposition) !=
                     want.prepositions.end();
            if (ok && want.kind == PatternSlot::Kind::verb)
                ok = lexicon.verb_lemma(head_word(chunks[slots[s].chunk])) == verb_lemma;
        }
        if (!ok)
            continue;
        // Step 2: selectional restrictions.
        RoleAssignment assignment;
        assignment.frame = cand.frame;
        assignment.frame_id = frame.id;
        std::size_t role = 0;
        for (std::size_t s = 0; s < slots.size() && ok; ++s) {
            const auto &chunk = chunks[slots[s].chunk];
            RoleBinding b;
            b.chunk = slots[s].chunk;
            b.preposition = slots[s].preposition;
            if (slots[s].kind == PatternSlot::Kind::verb) {
                b.role = "Action";
                b.sense = cand.sense;
                b.sense_label = lexicon.sense_label(cand.sense);
                b.text_label = std::string(verb_lemma);
            } else {
                const auto &spec = frame.roles[role++];
                if (!head_satisfies(chunk, spec.restriction, lexicon)) {
                    ok = false;
                    break;
                }
                const auto lemma = lexicon.noun_lemma(head_word(chunk));
                b.role = spec.role;
                b.sense = noun_sense ? noun_sense(lemma) : Sense{lemma, PartOfSpeech::noun, 1};
                b.sense_label = lexicon.sense_label(b.sense);
                b.text_label = np_text_label(chunk, lexicon);
            }
            assignment.bindings.push_back(std::move(b));
        }
        if (ok)
            out.assignments.push_back(std::move(assignment));
    }
    return out;
}

bool satisfies_restrictions(const RoleAssignment &assignment, const std::vector<Chunk> &chunks,
                            const Lexicon &lexicon) {
    const auto &frame = lexicon.frames().at(assignment.frame);
    std::size_t role = 0;
    for (const auto &b : assignment.bindings) {
        if (b.role == "Action")
            continue;
        if (role >= frame.roles.size() || b.chunk >= chunks.size())
            return false;
        if (!head_satisfies(chunks[b.chunk], frame.roles[role++].restriction, lexicon))
            return false;
    }
    return role == frame.roles.size();
}

} // namespace moviedesc::semantic
