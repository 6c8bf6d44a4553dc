#include "doctest.h"

#include "moviedesc/error.hpp"
#include "moviedesc/semantic/parser.hpp"

#include "rng.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

using namespace moviedesc;
using namespace moviedesc::semantic;

namespace {

const Lexicon &bundled() {
    static const Lexicon lex = Lexicon::load(std::string(MOVIEDESC_DATA_DIR) + "/lexicon");
    return lex;
}

std::string slurp(const std::string &rel) {
    std::ifstream in(std::string(MOVIEDESC_TEST_DATA) + "/" + rel, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string render(const std::vector<Chunk> &chunks) {
    std::string out;
    for (const auto &c : chunks) {
        if (!out.empty())
            out += ' ';
        out += "[" + std::string(to_string(c.kind)) + " " + c.text() + "]";
    }
    return out;
}

Clause clause_of(const std::string &text) {
    Clause c;
    c.tokens = tokenize(text);
    c.source_sentence = text;
    return c;
}

const char *const kTable4 = "He began to shoot a video in the moving bus";

/// Frame-by-frame reference: syntactic slots then restrictions, written
/// directly against the lexicon tables.
std::vector<std::string> reference_frames(const std::string &verb_lemma, const std::vector<Chunk> &chunks,
                                          const Lexicon &lex) {
    struct S {
        char kind;
        const Chunk *np;
        std::string prep;
    };
    std::vector<S> slots;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        if (chunks[i].kind == ChunkKind::np)
            slots.push_back({'n', &chunks[i], ""});
        else if (chunks[i].kind == ChunkKind::vp)
            slots.push_back({'v', nullptr, ""});
        else if (i + 1 < chunks.size() && chunks[i + 1].kind == ChunkKind::np) {
            slots.push_back({'p', &chunks[i + 1], chunks[i].tokens[0]});
            ++i;
        }
    }
    std::vector<std::string> ids;
    for (const auto &cand : lex.frames_for(verb_lemma)) {
        const auto &f = lex.frames()[cand.frame];
        if (f.pattern.size() != slots.size())
            continue;
        bool ok = true;
        std::size_t role = 0;
        for (std::size_t s = 0; s < slots.size() && ok; ++s) {
            const auto &p = f.pattern[s];
            const char want = p.kind == PatternSlot::Kind::np ? 'n' : p.kind == PatternSlot::Kind::verb ? 'v' : 'p';
            if (want != slots[s].kind) {
                ok = false;
                break;
            }
            if (want == 'p' && !p.prepositions.empty() &&
                std::find(p.prepositions.begin(), p.prepositions.end(), slots[s].prep) == p.prepositions.end())
                ok = false;
            if (want == 'v')
                continue;
            const auto r = f.roles[role++].restriction;
            const auto props = lex.properties(lex.noun_lemma(head_word(*slots[s].np)));
            if (r != Restriction::any && !(props && props->satisfies(r)))
                ok = false;
        }
        if (ok)
            ids.push_back(f.id);
    }
    return ids;
}

} // namespace

TEST_CASE("lexicon file formats") {
    Lexicon lex;
    lex.add_nouns("# comment\nbus: solid,machine\n\nman: animate\nhe -> man\n");
    lex.add_senses("shoot/v: 1=kill,gun 2=film,video\nfilm/v: 1=video @shoot#2\n");
    lex.add_frames("shoot#2: NP V NP | Agent:animate, Patient:solid\nshoot#2: NP V | Agent\n");
    CHECK(lex.properties("bus") == PropertySet{Restriction::solid, Restriction::machine});
    CHECK(lex.properties("bus")->satisfies(Restriction::any));
    CHECK(!lex.properties("man")->satisfies(Restriction::solid));
    CHECK(lex.noun_lemma("he") == "man");
    CHECK(lex.noun_lemma("buses") == "bus");
    CHECK(lex.senses("shoot", PartOfSpeech::verb).size() == 2);
    CHECK(lex.senses("shoot", PartOfSpeech::noun).empty());
    CHECK(lex.sense_label({"film", PartOfSpeech::verb, 1}) == "shoot#2");
    CHECK(lex.sense_label({"shoot", PartOfSpeech::verb, 1}) == "shoot#1");
    REQUIRE(lex.frames().size() == 2);
    CHECK(lex.frames()[0].id == "shoot#2.1");
    CHECK(lex.frames()[1].id == "shoot#2.2");
    CHECK(lex.frames()[1].roles[0].restriction == Restriction::any);
    const auto film = lex.frames_for("film");
    REQUIRE(film.size() == 2);
    CHECK(film[0].sense == Sense{"film", PartOfSpeech::verb, 1});
}

TEST_CASE("lexicon errors name the line") {
    Lexicon lex;
    CHECK_THROWS_WITH_AS(lex.add_nouns("bus: solid\ncar: shiny\n", "n.txt"), doctest::Contains("n.txt:2"), Error);
    CHECK_THROWS_WITH_AS(lex.add_nouns("bus: solid\nbus: solid\n"), doctest::Contains("duplicate"), Error);
    CHECK_THROWS_WITH_AS(lex.add_frames("x#1: NP NP | A, B\n"), doctest::Contains("exactly one V"), Error);
    CHECK_THROWS_WITH_AS(lex.add_frames("x#1: NP V NP | A\n"), doctest::Contains("every non-V slot"), Error);
    CHECK_THROWS_WITH_AS(lex.add_frames("x#1: NP V QP | A, B\n"), doctest::Contains("unknown pattern symbol"),
                         Error);
    CHECK_THROWS_WITH_AS(lex.add_frames("x: NP V | A\n"), doctest::Contains("malformed sense"), Error);
    CHECK_THROWS_WITH_AS(lex.add_senses("x: 2=a\n"), doctest::Contains("numbered"), Error);
    CHECK_THROWS_AS(Lexicon::load("/nonexistent/lexicon"), Error);
}

TEST_CASE("bundled lexicon loads and is sized for testing") {
    const auto &lex = bundled();
    CHECK(lex.frames().size() >= 50);
    std::set<std::string> verbs;
    for (const auto &f : lex.frames()) {
        CHECK(f.roles.size() + 1 == f.pattern.size());
        verbs.insert(f.verb_sense.lemma);
    }
    CHECK(verbs.size() >= 40);
    for (const auto *noun : {"bus", "video", "man", "woman", "someone", "people", "kitchen"})
        CHECK_MESSAGE(lex.properties(noun).has_value(), noun);
}

TEST_CASE("lemmatization") {
    const auto &lex = bundled();
    CHECK(lex.verb_lemma("began") == "begin");
    CHECK(lex.verb_lemma("shoots") == "shoot");
    CHECK(lex.verb_lemma("moving") == "move");
    CHECK(lex.verb_lemma("modified") == "modify");
    CHECK(lex.verb_lemma("dropped") == "drop");
    CHECK(lex.verb_lemma("running") == "run");
    CHECK(lex.verb_lemma("zorps") == "zorps");
    CHECK(lex.noun_lemma("men") == "man");
    CHECK(lex.noun_lemma("buses") == "bus");
    CHECK(lex.noun_lemma("she") == "woman");
}

TEST_CASE("tokenize") {
    CHECK(tokenize("He began, to shoot!") == std::vector<std::string>{"he", "began", ",", "to", "shoot", "!"});
    CHECK(tokenize("Abby's well-worn coat") == std::vector<std::string>{"abby's", "well-worn", "coat"});
    CHECK(tokenize("").empty());
}

TEST_CASE("tagger on the table sentence") {
    const LexiconTagger tagger(bundled());
    const auto tags = tagger.tag(tokenize(kTable4));
    const std::vector<Tag> want{Tag::pron, Tag::verb, Tag::to,  Tag::verb, Tag::det,
                                Tag::noun, Tag::prep, Tag::det, Tag::adj,  Tag::noun};
    CHECK(tags == want);
}

TEST_CASE("split_clauses examples") {
    const LexiconTagger tagger(bundled());
    const auto two = split_clauses("He shot and modified the video", tagger);
    REQUIRE(two.size() == 2);
    CHECK(two[0].text() == "he shot the video");
    CHECK(two[1].text() == "he modified the video");
    const auto one = split_clauses("Abby gets in the basket.", tagger);
    REQUIRE(one.size() == 1);
    CHECK(one[0].text() == "abby gets in the basket");
    CHECK(one[0].source_sentence == "Abby gets in the basket.");
    CHECK(split_clauses("...", tagger).empty());
}

TEST_CASE("split_clauses golden fixture") {
    const LexiconTagger tagger(bundled());
    std::istringstream in(slurp("semantic/clauses.golden"));
    std::string line;
    std::string sentence;
    std::vector<std::string> expected;
    std::size_t sentences = 0;
    const auto check = [&] {
        if (sentence.empty())
            return;
        ++sentences;
        std::vector<std::string> got;
        for (const auto &c : split_clauses(sentence, tagger))
            got.push_back(c.text());
        CAPTURE(sentence);
        CHECK(got == expected);
    };
    while (std::getline(in, line)) {
        if (line.empty()) {
            check();
            sentence.clear();
            expected.clear();
        } else if (line.starts_with("= ")) {
            expected.push_back(line.substr(2));
        } else {
            sentence = line;
        }
    }
    check();
    CHECK(sentences == 20);
}

TEST_CASE("split_clauses preserves content words") {
    const LexiconTagger tagger(bundled());
    const std::vector<std::string> subjects{"he", "the old woman", "someone", "people", "a young girl", "the dog"};
    const std::vector<std::string> verbs{"opens", "holds", "drops", "watches", "reads", "carries", "stands",
                                         "smiles", "waits", "shot", "takes"};
    const std::vector<std::string> objects{"the door", "a letter", "the cup", "the phone", "", "the bag"};
    const std::vector<std::string> joins{" and ", ", ", " then ", ", and "};
    testing::Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        std::string sentence = subjects[rng.index(subjects.size())];
        const int parts = rng.integer(1, 3);
        for (int p = 0; p < parts; ++p) {
            if (p > 0) {
                sentence += joins[rng.index(joins.size())];
                if (rng.uniform() < 0.3)
                    sentence += subjects[rng.index(subjects.size())] + " ";
            } else {
                sentence += " ";
            }
            sentence += verbs[rng.index(verbs.size())];
            const auto &obj = objects[rng.index(objects.size())];
            if (!obj.empty())
                sentence += " " + obj;
        }
        sentence += ".";
        std::multiset<std::string> produced;
        const auto clauses = split_clauses(sentence, tagger);
        for (const auto &c : clauses) {
            CHECK(!c.tokens.empty());
            produced.insert(c.tokens.begin(), c.tokens.end());
        }
        const auto tokens = tokenize(sentence);
        const auto tags = tagger.tag(tokens);
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (tags[i] == Tag::conj || tags[i] == Tag::punct || tags[i] == Tag::det)
                continue;
            CAPTURE(sentence);
            CHECK(produced.contains(tokens[i]));
        }
    }
}

TEST_CASE("chunk_clause examples") {
    const LexiconTagger tagger(bundled());
    CHECK(render(chunk_clause(clause_of("the man begin to shoot a video in the moving bus"), tagger)) ==
          "[NP the man] [VP begin to shoot] [NP a video] [PP in] [NP the moving bus]");
    const auto single = chunk_clause(clause_of("someone"), tagger);
    REQUIRE(single.size() == 1);
    CHECK(single[0].kind == ChunkKind::np);
    CHECK(chunk_clause(clause_of(""), tagger).empty());
}

TEST_CASE("chunk_clause golden fixture") {
    const LexiconTagger tagger(bundled());
    std::istringstream in(slurp("semantic/chunks.golden"));
    std::string clause;
    std::string chunks;
    std::size_t n = 0;
    while (std::getline(in, clause) && std::getline(in, chunks)) {
        CAPTURE(clause);
        CHECK(render(chunk_clause(clause_of(clause), tagger)) == chunks.substr(2));
        ++n;
    }
    CHECK(n >= 30);
}

TEST_CASE("chunk invariants") {
    const LexiconTagger tagger(bundled());
    std::istringstream in(slurp("semantic/chunks.golden"));
    std::string clause;
    std::string skip;
    while (std::getline(in, clause) && std::getline(in, skip)) {
        for (const auto &c : chunk_clause(clause_of(clause), tagger)) {
            REQUIRE(c.head < c.tokens.size());
            const Tag h = c.tags[c.head];
            if (c.kind == ChunkKind::np)
                CHECK((h == Tag::noun || h == Tag::pron));
            else if (c.kind == ChunkKind::vp)
                CHECK(h == Tag::verb);
            else
                CHECK(h == Tag::prep);
        }
    }
}

TEST_CASE("head_word") {
    const LexiconTagger tagger(bundled());
    const auto chunks = chunk_clause(clause_of("the man begin to shoot a video in the moving bus"), tagger);
    REQUIRE(chunks.size() == 5);
    CHECK(head_word(chunks[4]) == "bus");
    CHECK(head_word(chunks[1]) == "shoot");
    const auto video = chunk_clause(clause_of("video"), tagger);
    REQUIRE(video.size() == 1);
    CHECK(head_word(video[0]) == "video");
}

TEST_CASE("disambiguate") {
    const auto &lex = bundled();
    const MostFrequentSense mfs;
    const ContextOverlap overlap;
    const auto table = clause_of("he began to shoot a video in the moving bus");
    const auto bus = disambiguate("bus", PartOfSpeech::noun, table, mfs, lex);
    CHECK(bus.sense.str() == "bus#1");
    CHECK(!bus.out_of_lexicon);
    CHECK(disambiguate("shoot", PartOfSpeech::verb, table, overlap, lex).sense.str() == "shoot#2");
    CHECK(disambiguate("shoot", PartOfSpeech::verb, table, mfs, lex).sense.str() == "shoot#1");
    CHECK(disambiguate("shoot", PartOfSpeech::verb, clause_of("he shoots the man with a gun"), overlap, lex)
              .sense.str() == "shoot#1");
    const auto zorp = disambiguate("zorp", PartOfSpeech::noun, table, mfs, lex);
    CHECK(zorp.sense.str() == "zorp#1");
    CHECK(zorp.out_of_lexicon);

    struct Broken : Disambiguator {
        int choose(std::string_view, PartOfSpeech, const Clause &, const Lexicon &) const override { return 9; }
    };
    CHECK_THROWS_AS(disambiguate("shoot", PartOfSpeech::verb, table, Broken{}, lex), Error);
}

TEST_CASE("match_verb_frames on the table sentence") {
    const auto &lex = bundled();
    const LexiconTagger tagger(lex);
    const auto chunks = chunk_clause(split_clauses(kTable4, tagger).at(0), tagger);
    const auto match = match_verb_frames("shoot", chunks, lex);
    CHECK(!match.no_frame);
    REQUIRE(match.assignments.size() == 1);
    const auto &a = match.assignments[0];
    CHECK(a.frame_id == "shoot#2.2");
    REQUIRE(a.bindings.size() == 4);
    CHECK(a.find("Agent")->sense_label == "man#1");
    CHECK(a.find("Action")->sense_label == "shoot#2");
    CHECK(a.find("Patient")->sense_label == "video#1");
    CHECK(a.find("Location")->sense_label == "bus#1");
    CHECK(a.find("Location")->preposition == "in");
    CHECK(a.find("Instrument") == nullptr);
}

TEST_CASE("selectional restrictions pick the sense") {
    const auto &lex = bundled();
    const LexiconTagger tagger(lex);
    const auto solid = match_verb_frames("shoot", chunk_clause(clause_of("he shoots a video"), tagger), lex);
    REQUIRE(solid.assignments.size() == 1);
    CHECK(solid.assignments[0].find("Action")->sense.number == 2);
    const auto animate = match_verb_frames("shoot", chunk_clause(clause_of("he shoots the man"), tagger), lex);
    REQUIRE(animate.assignments.size() == 1);
    CHECK(animate.assignments[0].find("Action")->sense.number == 1);
}

TEST_CASE("selectional restrictions decide shoot on the constructed sentences") {
    const auto &lex = bundled();
    const LexiconTagger tagger(lex);
    const MostFrequentSense wsd;
    const SemanticParser parser(lex, tagger, wsd);
    std::istringstream in(slurp("semantic/shoot_senses.tsv"));
    int n = 0;
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#')
            continue;
        const auto tab = line.find('\t');
        const auto sentence = line.substr(0, tab);
        CAPTURE(sentence);
        const auto clauses = parser.parse(sentence);
        REQUIRE(clauses.size() == 1);
        REQUIRE(clauses[0].chosen);
        for (const auto &a : clauses[0].assignments) {
            CHECK(a.find("Action")->sense.number == std::stoi(line.substr(tab + 1)));
            CHECK(satisfies_restrictions(a, clauses[0].chunks, lex));
        }
        ++n;
    }
    CHECK(n == 10);
}

TEST_CASE("match_verb_frames failures") {
    const auto &lex = bundled();
    const LexiconTagger tagger(lex);
    const auto vp_only = match_verb_frames("shoot", chunk_clause(clause_of("shoot"), tagger), lex);
    CHECK(vp_only.assignments.empty());
    CHECK(!vp_only.no_frame);
    const auto unknown = match_verb_frames("zorp", chunk_clause(clause_of("he zorps"), tagger), lex);
    CHECK(unknown.assignments.empty());
    CHECK(unknown.no_frame);
}

TEST_CASE("frame matches equal the reference and re-validate") {
    const auto &lex = bundled();
    const LexiconTagger tagger(lex);
    const std::vector<std::string> nps{"he", "the woman", "a video", "the man", "the bus", "the kitchen",
                                       "the dog", "a letter", "the car", "someone", "it", "the table"};
    const std::vector<std::string> preps{"in", "on", "at", "with", "to", "from", "into", "for"};
    std::set<std::string> lemmas;
    for (const auto &f : lex.frames())
        lemmas.insert(f.verb_sense.lemma);
    const std::vector<std::string> verbs(lemmas.begin(), lemmas.end());
    testing::Rng rng(29);
    std::size_t matched = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const auto &verb = verbs[rng.index(verbs.size())];
        std::string text = nps[rng.index(nps.size())] + " " + verb;
        if (rng.uniform() < 0.7)
            text += " " + nps[rng.index(nps.size())];
        if (rng.uniform() < 0.5)
            text += " " + preps[rng.index(preps.size())] + " " + nps[rng.index(nps.size())];
        const auto chunks = chunk_clause(clause_of(text), tagger);
        const auto match = match_verb_frames(verb, chunks, lex);
        std::vector<std::string> got;
        for (const auto &a : match.assignments) {
            got.push_back(a.frame_id);
            CHECK(satisfies_restrictions(a, chunks, lex));
        }
        CAPTURE(text);
        CHECK(got == reference_frames(verb, chunks, lex));
        matched += got.empty() ? 0 : 1;
    }
    CHECK(matched > 100);
}

TEST_CASE("to_sr") {
    const auto &lex = bundled();
    const LexiconTagger tagger(lex);
    const auto chunks = chunk_clause(split_clauses(kTable4, tagger).at(0), tagger);
    const auto a = match_verb_frames("shoot", chunks, lex).assignments.at(0);
    const auto sense = to_sr(a, LabelMode::sense);
    CHECK(sense.subject == "man#1");
    CHECK(sense.verb == "shoot#2");
    CHECK(sense.object == "video#1");
    CHECK(sense.location == "bus#1");
    CHECK(sense.str() == "<man#1, shoot#2, video#1, bus#1>");
    const auto text = to_sr(a, LabelMode::text);
    CHECK(text.str() == "<man, shoot, video, moving bus>");
    CHECK(to_sr(a, LabelMode::sense) == sense);

    const auto intransitive =
        match_verb_frames("wait", chunk_clause(clause_of("someone waits"), tagger), lex).assignments.at(0);
    const auto t = to_sr(intransitive, LabelMode::sense);
    CHECK(t.subject == "someone#1");
    CHECK(t.verb == "wait#1");
    CHECK(!t.object);
    CHECK(!t.location);

    CHECK_THROWS_AS(to_sr(RoleAssignment{}, LabelMode::sense), Error);
}

TEST_CASE("role grouping and dropped roles") {
    CHECK(role_slot("Agent") == SrSlot::subject);
    CHECK(role_slot("Experiencer") == SrSlot::subject);
    CHECK(role_slot("Action") == SrSlot::verb);
    CHECK(role_slot("Theme") == SrSlot::object);
    CHECK(role_slot("Stimulus") == SrSlot::object);
    CHECK(role_slot("Destination") == SrSlot::location);
    CHECK(!role_slot("Instrument"));
    const auto &lex = bundled();
    const LexiconTagger tagger(lex);
    const auto give =
        match_verb_frames("give", chunk_clause(clause_of("she gives a letter to the man"), tagger), lex);
    REQUIRE(give.assignments.size() == 1);
    CHECK(dropped_roles(give.assignments[0]) == 1);
    CHECK(to_sr(give.assignments[0], LabelMode::text).str() == "<woman, give, letter, ->");
}

TEST_CASE("different verbs with one sense share a sense label") {
    const auto &lex = bundled();
    const LexiconTagger tagger(lex);
    const auto grab = match_verb_frames("grab", chunk_clause(clause_of("someone grabs the bag"), tagger), lex);
    const auto take = match_verb_frames("take", chunk_clause(clause_of("someone takes the bag"), tagger), lex);
    REQUIRE(!grab.assignments.empty());
    REQUIRE(!take.assignments.empty());
    CHECK(to_sr(grab.assignments[0], LabelMode::sense).verb == to_sr(take.assignments[0], LabelMode::sense).verb);
    CHECK(to_sr(grab.assignments[0], LabelMode::text).verb != to_sr(take.assignments[0], LabelMode::text).verb);
}

TEST_CASE("extract_label_vocab") {
    std::vector<SRTuple> tuples;
    for (int i = 0; i < 29; ++i)
        tuples.push_back({std::nullopt, "run", std::nullopt, std::nullopt, LabelMode::text});
    for (int i = 0; i < 30; ++i)
        tuples.push_back({"someone", "walk", std::nullopt, "street", LabelMode::text});
    const auto v30 = extract_label_vocab(tuples, SrSlot::verb, 30);
    CHECK(v30.labels() == std::vector<std::string>{"walk"});
    CHECK(v30.counts.at("walk") == 30);
    CHECK(extract_label_vocab(tuples, SrSlot::verb, 1).labels() == std::vector<std::string>{"run", "walk"});
    CHECK(extract_label_vocab(tuples, SrSlot::location, 1).labels() == std::vector<std::string>{"street"});
    CHECK(extract_label_vocab({}, SrSlot::verb, 1).counts.empty());
    tuples.push_back({std::nullopt, "run#1", std::nullopt, std::nullopt, LabelMode::sense});
    CHECK_THROWS_AS(extract_label_vocab(tuples, SrSlot::verb, 1), Error);
}

TEST_CASE("extract_label_vocab counting oracle and monotonicity") {
    testing::Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        std::map<std::string, std::size_t> truth;
        std::vector<SRTuple> tuples;
        const int n = rng.integer(0, 300);
        for (int i = 0; i < n; ++i) {
            SRTuple t;
            t.mode = LabelMode::sense;
            t.verb = "v" + std::to_string(rng.integer(0, 9));
            if (rng.uniform() < 0.6) {
                t.object = "o" + std::to_string(rng.integer(0, 14));
                ++truth[*t.object];
            }
            tuples.push_back(t);
        }
        std::size_t prev_size = SIZE_MAX;
        for (const std::size_t min : {1, 3, 10, 30, 100}) {
            const auto v = extract_label_vocab(tuples, SrSlot::object, min);
            std::map<std::string, std::size_t> want;
            for (const auto &[k, c] : truth)
                if (c >= min)
                    want.emplace(k, c);
            CHECK(v.counts == want);
            CHECK(v.counts.size() <= prev_size);
            prev_size = v.counts.size();
        }
    }
}

TEST_CASE("semantic parser pipeline on the table sentence") {
    const auto &lex = bundled();
    const LexiconTagger tagger(lex);
    const ContextOverlap wsd;
    const SemanticParser parser(lex, tagger, wsd);
    const auto clauses = parser.parse(kTable4);
    REQUIRE(clauses.size() == 1);
    const auto &a = clauses[0];
    CHECK(a.verb_sense->str() == "shoot#2");
    REQUIRE(a.chosen);
    CHECK(a.tuple(LabelMode::sense, lex)->str() == "<man#1, shoot#2, video#1, bus#1>");
    CHECK(a.flags.empty());

    const auto j = nlohmann::json::parse(sr_record_json("s1", 0, a, LabelMode::sense, lex));
    CHECK(j["sentence_id"] == "s1");
    CHECK(j["clause_index"] == 0);
    CHECK(j["subject"] == "man#1");
    CHECK(j["verb"] == "shoot#2");
    CHECK(j["object"] == "video#1");
    CHECK(j["location"] == "bus#1");
    CHECK(j["frame_id"] == "shoot#2.2");
    CHECK(j["flags"].empty());
}

TEST_CASE("semantic parser flags") {
    const auto &lex = bundled();
    const LexiconTagger tagger(lex);
    const MostFrequentSense wsd;
    const SemanticParser parser(lex, tagger, wsd);

    const auto no_frame = parser.parse("Someone sleeps in the bed.");
    REQUIRE(no_frame.size() == 1);
    CHECK(std::find(no_frame[0].flags.begin(), no_frame[0].flags.end(), "no-frame") != no_frame[0].flags.end());

    const auto no_match = parser.parse("The dog follows it.");
    REQUIRE(no_match.size() == 1);
    CHECK(no_match[0].flags == std::vector<std::string>{"no-match"});
    const auto verb_only = no_match[0].tuple(LabelMode::sense, lex);
    REQUIRE(verb_only);
    CHECK(verb_only->str() == "<-, follow#1, -, ->");
    const auto j = nlohmann::json::parse(sr_record_json("s2", 0, no_match[0], LabelMode::text, lex));
    CHECK(j["verb"] == "follow");
    CHECK(j["subject"].is_null());
    CHECK(j["frame_id"].is_null());

    Clause nouns = clause_of("the red car");
    const auto no_verb = parser.analyze(nouns);
    CHECK(no_verb.flags == std::vector<std::string>{"no-verb"});
    CHECK(!no_verb.tuple(LabelMode::text, lex));

    const auto oov = parser.parse("Someone shoots a zorp.");
    REQUIRE(oov.size() == 1);
    CHECK(oov[0].flags == std::vector<std::string>{"out-of-lexicon:zorp", "no-match"});
}

TEST_CASE("mode and slot names") {
    CHECK(parse_label_mode("text") == LabelMode::text);
    CHECK(parse_label_mode("sense") == LabelMode::sense);
    CHECK_THROWS_AS(parse_label_mode("words"), Error);
    CHECK(parse_sr_slot("location") == SrSlot::location);
    CHECK_THROWS_AS(parse_sr_slot("place"), Error);
}
