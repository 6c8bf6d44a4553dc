#include "moviedesc/semantic/parser.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>

namespace moviedesc::semantic {

std::optional<SRTuple> ClauseAnalysis::tuple(LabelMode mode, const Lexicon &lexicon) const {
    if (chosen)
        return to_sr(assignments.at(*chosen), mode);
    if (!verb_sense)
        return std::nullopt;
    SRTuple t;
    t.mode = mode;
    t.verb = mode == LabelMode::sense ? lexicon.sense_label(*verb_sense) : verb_sense->lemma;
    return t;
}

ClauseAnalysis SemanticParser::analyze(const Clause &clause) const {
    ClauseAnalysis a;
    a.clause = clause;
    a.chunks = chunk_clause(clause, tagger_);

    const auto flag_oov = [&](const std::string &lemma) {
        const auto f = "out-of-lexicon:" + lemma;
        if (std::find(a.flags.begin(), a.flags.end(), f) == a.flags.end())
            a.flags.push_back(f);
    };
    const auto vp = std::find_if(a.chunks.begin(), a.chunks.end(),
                                 [](const Chunk &c) { return c.kind == ChunkKind::vp; });
    if (vp == a.chunks.end()) {
        a.flags.emplace_back("no-verb");
        return a;
    }
    const auto verb_lemma = lexicon_.verb_lemma(head_word(*vp));
    const auto verb = disambiguate(verb_lemma, PartOfSpeech::verb, clause, wsd_, lexicon_);
    a.verb_sense = verb.sense;
    if (verb.out_of_lexicon)
        flag_oov(verb_lemma);

    // Every NP head is disambiguated up front so out-of-lexicon nouns are
    // flagged whether or not a frame binds them.
    std::map<std::string, Sense, std::less<>> noun_senses;
    for (const auto &chunk : a.chunks) {
        if (chunk.kind != ChunkKind::np)
            continue;
        const auto lemma = lexicon_.noun_lemma(head_word(chunk));
        if (noun_senses.contains(lemma))
            continue;
        const auto d = disambiguate(lemma, PartOfSpeech::noun, clause, wsd_, lexicon_);
        if (d.out_of_lexicon && chunk.tags[chunk.head] == Tag::noun)
            flag_oov(lemma);
        noun_senses.emplace(lemma, d.sense);
    }
    const NounSenseFn noun_sense = [&](std::string_view lemma) { return noun_senses.find(lemma)->second; };
    auto match = match_verb_frames(verb_lemma, a.chunks, lexicon_, noun_sense);
    a.assignments = std::move(match.assignments);
    if (match.no_frame) {
        a.flags.emplace_back("no-frame");
    } else if (a.assignments.empty()) {
        a.flags.emplace_back("no-match");
    } else {
        a.chosen = 0;
        for (std::size_t k = 0; k < a.assignments.size(); ++k) {
            const auto *action = a.assignments[k].find("Action");
            if (action && action->sense == verb.sense) {
                a.chosen = k;
                break;
            }
        }
        a.dropped_roles = dropped_roles(a.assignments[*a.chosen]);
    }
    return a;
}

std::vector<ClauseAnalysis> SemanticParser::parse(std::string_view sentence) const {
    std::vector<ClauseAnalysis> out;
    for (const auto &clause : split_clauses(sentence, tagger_))
        out.push_back(analyze(clause));
    return out;
}

std::string sr_record_json(std::string_view sentence_id, std::size_t clause_index, const ClauseAnalysis &analysis,
                           LabelMode mode, const Lexicon &lexicon) {
    nlohmann::ordered_json j;
    j["sentence_id"] = sentence_id;
    j["clause_index"] = clause_index;
    j["clause"] = analysis.clause.text();
    j["sentence"] = analysis.clause.source_sentence;
    j["mode"] = to_string(mode);
    const auto t = analysis.tuple(mode, lexicon);
    const auto put = [&](const char *key, const std::optional<std::string> &v) {
        if (v)
            j[key] = *v;
        else
            j[key] = nullptr;
    };
    put("subject", t ? t->subject : std::nullopt);
    put("verb", t ? std::optional<std::string>(t->verb) : std::nullopt);
    put("object", t ? t->object : std::nullopt);
    put("location", t ? t->location : std::nullopt);
    if (analysis.chosen)
        j["frame_id"] = analysis.assignments[*analysis.chosen].frame_id;
    else
        j["frame_id"] = nullptr;
    j["flags"] = analysis.flags;
    return j.dump();
}

} // namespace moviedesc::semantic
