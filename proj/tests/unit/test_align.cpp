#include "doctest.h"

#include "moviedesc/align/alignment.hpp"
#include "moviedesc/align/script.hpp"
#include "moviedesc/align/srt.hpp"
#include "moviedesc/error.hpp"

#include "rng.hpp"

#include <fstream>
#include <sstream>

using namespace moviedesc;
using namespace moviedesc::align;

namespace {

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string data(const std::string &rel) { return slurp(std::string(MOVIEDESC_TEST_DATA) + "/" + rel); }

// Exhaustive search over monotone matchings; returns the best cardinality and
// the lexicographically smallest (subtitle indices, then script indices)
// matching among the maxima.
struct Best {
    std::size_t size = 0;
    std::vector<WordMatch> matching;
};

void enumerate(const std::vector<std::string> &a, const std::vector<std::string> &b, std::size_t i, std::size_t j,
               std::vector<WordMatch> &cur, Best &best, bool &seen) {
    auto key = [](const std::vector<WordMatch> &m) {
        std::vector<std::pair<std::size_t, std::size_t>> k;
        for (const auto &x : m)
            k.emplace_back(x.subtitle_token_index, x.script_token_index);
        return k;
    };
    if (!seen || cur.size() > best.size || (cur.size() == best.size && key(cur) < key(best.matching))) {
        best.size = cur.size();
        best.matching = cur;
        seen = true;
    }
    for (std::size_t p = i; p < a.size(); ++p)
        for (std::size_t q = j; q < b.size(); ++q)
            if (a[p] == b[q]) {
                cur.push_back({p, q});
                enumerate(a, b, p + 1, q + 1, cur, best, seen);
                cur.pop_back();
            }
}

Best brute_force(const std::vector<std::string> &a, const std::vector<std::string> &b) {
    Best best;
    std::vector<WordMatch> cur;
    bool seen = false;
    enumerate(a, b, 0, 0, cur, best, seen);
    return best;
}

// Textbook prefix-table LCS length.
std::size_t lcs_length(const std::vector<std::string> &a, const std::vector<std::string> &b) {
    std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    return t[a.size()][b.size()];
}

std::vector<std::string> random_tokens(testing::Rng &rng, std::size_t max_len, int vocab) {
    std::vector<std::string> out(rng.index(max_len + 1));
    for (auto &t : out)
        t = "w" + std::to_string(rng.integer(0, vocab - 1));
    return out;
}

bool monotone(const std::vector<WordMatch> &m) {
    for (std::size_t k = 1; k < m.size(); ++k)
        if (m[k].script_token_index <= m[k - 1].script_token_index ||
            m[k].subtitle_token_index <= m[k - 1].subtitle_token_index)
            return false;
    return true;
}

ScriptElement element(ElementKind kind, std::string text, std::size_t ordinal, std::size_t begin) {
    const std::size_t end = begin + text.size();
    return {kind, std::move(text), ordinal, begin, end};
}

} // namespace

TEST_CASE("parse_srt reads a basic block") {
    const auto entries = parse_srt("1\n00:00:01,000 --> 00:00:02,500\nHello.\n");
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].index == 1);
    CHECK(entries[0].interval == TimeInterval{1.0, 2.5});
    CHECK(entries[0].text == "Hello.");
}

TEST_CASE("parse_srt strips formatting tags") {
    const auto entries = parse_srt("1\n00:00:01,000 --> 00:00:02,000\n<i>Hi</i>\n");
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].text == "Hi");
}

TEST_CASE("parse_srt handles CRLF and a byte-order mark") {
    const auto lf = parse_srt(data("srt/three_lf.srt"));
    const auto crlf = parse_srt(data("srt/three_crlf_bom.srt"));
    REQUIRE(lf.size() == 3);
    CHECK(lf == crlf);
    CHECK(lf[1].text == "Two lines\nof text");
    CHECK(lf[2].text == "Top line");
    CHECK(lf[2].interval == TimeInterval{6.1, 7.0});
}

TEST_CASE("parse_srt edge cases") {
    CHECK(parse_srt("").empty());
    CHECK(parse_srt("\xEF\xBB\xBF\n\n").empty());
    CHECK_THROWS_WITH_AS(parse_srt("1\n00:00:01,000 --> 00:00:02,000\nA\n\n7\n00:00:0x,000 -> 1\nB\n"),
                         doctest::Contains("srt block 7"), Error);
    CHECK_THROWS_WITH_AS(parse_srt("one\n00:00:01,000 --> 00:00:02,000\nA\n"), doctest::Contains("srt block 1"),
                         Error);
    // Overlaps are clipped to the next start.
    const auto clipped = parse_srt("1\n00:00:01,000 --> 00:00:04,000\nA\n\n2\n00:00:03,000 --> 00:00:05,000\nB\n");
    CHECK(clipped[0].interval.end_s == 3.0);
}

TEST_CASE("serialize_srt then parse_srt is the identity on normalized entries") {
    testing::Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<SubtitleEntry> entries;
        long long ms = 0;
        const int count = rng.integer(0, 12);
        for (int k = 0; k < count; ++k) {
            ms += rng.integer(0, 4000);
            const long long end = ms + rng.integer(1, 5000);
            std::string text = "line " + std::to_string(rng.integer(0, 999));
            if (rng.uniform() < 0.3)
                text += "\nsecond " + std::to_string(k);
            entries.push_back({k + 1, {ms / 1000.0, end / 1000.0}, text});
            ms = end;
        }
        CHECK(parse_srt(serialize_srt(entries)) == entries);
    }
}

TEST_CASE("parse_script classification rules") {
    SUBCASE("scene heading") {
        const auto els = parse_script("INT. HOUSE - NIGHT\n");
        REQUIRE(els.size() == 1);
        CHECK(els[0].kind == ElementKind::scene_heading);
        CHECK(els[0].text == "INT. HOUSE - NIGHT");
    }
    SUBCASE("cue then indented dialogue") {
        const auto els = parse_script("Abby waits.\n\n          ABBY\n     Hi.\n");
        REQUIRE(els.size() == 3);
        CHECK(els[1].kind == ElementKind::character_cue);
        CHECK(els[1].text == "ABBY");
        CHECK(els[2].kind == ElementKind::dialogue);
        CHECK(els[2].text == "Hi.");
    }
    SUBCASE("unclassifiable text is description") {
        const auto els = parse_script("something odd: 42\n");
        REQUIRE(els.size() == 1);
        CHECK(els[0].kind == ElementKind::description);
    }
}

TEST_CASE("parse_script golden fixtures") {
    for (const std::string name : {"excerpt", "flat"}) {
        CAPTURE(name);
        const std::string text = data("script/" + name + ".txt");
        const auto els = parse_script(text);
        std::istringstream golden(data("script/" + name + ".golden"));
        std::string line;
        std::size_t k = 0;
        while (std::getline(golden, line)) {
            REQUIRE(k < els.size());
            const auto bar = line.find('|');
            CHECK(to_string(els[k].kind) == line.substr(0, bar));
            CHECK(els[k].text == line.substr(bar + 1));
            CHECK(els[k].ordinal == k);
            ++k;
        }
        CHECK(k == els.size());
        for (std::size_t i = 1; i < els.size(); ++i)
            CHECK(els[i].begin >= els[i - 1].end);
        // Offsets point back into the source text.
        for (const auto &el : els)
            if (el.kind != ElementKind::description && el.kind != ElementKind::dialogue)
                CHECK(text.substr(el.begin, el.end - el.begin).starts_with(el.text));
    }
}

TEST_CASE("flat dialect can be forced") {
    ScriptFormat format;
    format.dialect = ScriptDialect::flat;
    const auto els = parse_script("BOB\nHey there.\n", format);
    REQUIRE(els.size() == 2);
    CHECK(els[0].kind == ElementKind::character_cue);
    CHECK(els[1].kind == ElementKind::dialogue);
}

TEST_CASE("sentence splitting") {
    const std::string text = "Mr. Smith waves. Rain falls! Does it stop? No";
    const auto spans = split_sentences(text);
    REQUIRE(spans.size() == 4);
    CHECK(text.substr(spans[0].first, spans[0].second - spans[0].first) == "Mr. Smith waves.");
    CHECK(text.substr(spans[3].first, spans[3].second - spans[3].first) == "No");
}

TEST_CASE("token normalization") {
    CHECK(normalize_tokens("Don't SHOUT, it's 9 o'clock!") ==
          std::vector<std::string>{"dont", "shout", "its", "9", "oclock"});
    CHECK(normalize_tokens("  ...  ").empty());
}

TEST_CASE("DP alignment basics") {
    const std::vector<std::string> a{"you", "said", "you", "would", "come"};
    const auto diag = align_dialogue_dp(a, a);
    REQUIRE(diag.size() == a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        CHECK(diag[k] == WordMatch{k, k});
    CHECK(align_dialogue_dp(a, {"nothing", "shared"}).empty());
    CHECK(align_dialogue_dp({}, a).empty());
}

TEST_CASE("DP alignment prefers the earliest subtitle indices") {
    const auto m = align_dialogue_dp({"x"}, {"x", "x"});
    REQUIRE(m.size() == 1);
    CHECK(m[0] == WordMatch{0, 0});
}

TEST_CASE("DP alignment equals exhaustive enumeration on short lists") {
    testing::Rng rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = random_tokens(rng, 8, 4);
        const auto b = random_tokens(rng, 8, 4);
        const auto got = align_dialogue_dp(a, b);
        const auto best = brute_force(a, b);
        CHECK(monotone(got));
        CHECK(got.size() == best.size);
        CHECK(got == best.matching);
    }
}

TEST_CASE("DP alignment cardinality equals LCS and is symmetric") {
    testing::Rng rng(18);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_tokens(rng, 50, 8);
        const auto b = random_tokens(rng, 50, 8);
        const auto ab = align_dialogue_dp(a, b);
        CHECK(ab.size() == lcs_length(a, b));
        CHECK(ab.size() == align_dialogue_dp(b, a).size());
        CHECK(monotone(ab));
        for (const auto &m : ab)
            CHECK(a[m.script_token_index] == b[m.subtitle_token_index]);
    }
}

TEST_CASE("infer_interval interpolation") {
    const Anchor before{0.0, 10.0};
    const Anchor after{100.0, 20.0};
    const auto mid = infer_interval(40.0, 60.0, before, after);
    CHECK(mid.start_s == doctest::Approx(14.0));
    CHECK(mid.end_s == doctest::Approx(16.0));
    const auto full = infer_interval(0.0, 100.0, before, after);
    CHECK(full == TimeInterval{10.0, 20.0});
}

TEST_CASE("infer_interval boundary fallbacks") {
    CHECK(kDefaultDescriptionDuration == 3.4);
    const auto tail = infer_interval(500.0, 520.0, Anchor{400.0, 50.0}, std::nullopt);
    CHECK(tail.start_s == 50.0);
    CHECK(tail.end_s == doctest::Approx(53.4));
    const auto head = infer_interval(0.0, 20.0, std::nullopt, Anchor{100.0, 12.0});
    CHECK(head.start_s == doctest::Approx(8.6));
    CHECK(head.end_s == 12.0);
    CHECK_THROWS_WITH_AS(infer_interval(0.0, 1.0, std::nullopt, std::nullopt),
                         doctest::Contains("unalignable script"), Error);
}

TEST_CASE("infer_interval stays inside its anchors") {
    testing::Rng rng(19);
    for (int trial = 0; trial < 500; ++trial) {
        const double pb = rng.uniform(0, 1000);
        const double pa = pb + rng.uniform(1, 1000);
        const double tb = rng.uniform(0, 5000);
        const double ta = tb + rng.uniform(0.5, 60);
        const double b = rng.uniform(pb, pa - 0.5);
        const double e = rng.uniform(b + 0.25, pa);
        const auto iv = infer_interval(b, e, Anchor{pb, tb}, Anchor{pa, ta});
        CHECK(iv.start_s >= tb);
        CHECK(iv.end_s <= ta);
        CHECK(iv.end_s > iv.start_s);
    }
}

TEST_CASE("score_descriptions ratios") {
    // d0 | cue | D1 "a b c" | desc | cue | D2 "d e f"
    std::vector<ScriptElement> els;
    els.push_back(element(ElementKind::character_cue, "ANN", 0, 0));
    els.push_back(element(ElementKind::dialogue, "a b c", 1, 10));
    els.push_back(element(ElementKind::description, "She sits.", 2, 20));
    els.push_back(element(ElementKind::character_cue, "BEN", 3, 40));
    els.push_back(element(ElementKind::dialogue, "d e f", 4, 50));
    const std::vector<SubtitleEntry> subs{{1, {10.0, 12.0}, "a b c"}, {2, {20.0, 22.0}, "d e f"}};

    SUBCASE("all matched") {
        const auto m = align_dialogue_dp(dialogue_tokens(els).tokens, subtitle_tokens(subs).tokens);
        const auto scored = score_descriptions(els, m, subs);
        REQUIRE(scored.size() == 1);
        CHECK(scored[0].score == 1.0);
        CHECK(scored[0].text == "She sits.");
        CHECK(!scored[0].low_confidence);
        CHECK(scored[0].interval.start_s >= 12.0);
        CHECK(scored[0].interval.end_s <= 20.0);
    }
    SUBCASE("half matched") {
        const std::vector<WordMatch> m{{0, 0}, {1, 1}, {5, 5}};
        const auto scored = score_descriptions(els, m, subs);
        CHECK(scored[0].score == doctest::Approx(0.5));
    }
    SUBCASE("nothing matched is unalignable") {
        CHECK_THROWS_AS(score_descriptions(els, {}, subs), Error);
    }
}

TEST_CASE("score_descriptions window and zero score") {
    std::vector<ScriptElement> els;
    els.push_back(element(ElementKind::dialogue, "one", 0, 0));
    els.push_back(element(ElementKind::dialogue, "two", 1, 10));
    els.push_back(element(ElementKind::dialogue, "three", 2, 20));
    els.push_back(element(ElementKind::description, "Far away.", 3, 30));
    const std::vector<SubtitleEntry> subs{{1, {1.0, 2.0}, "one"}};
    const std::vector<WordMatch> m{{0, 0}};
    // window 2 sees "two" and "three" only; window 3 also sees "one".
    CHECK(score_descriptions(els, m, subs, 2)[0].score == 0.0);
    CHECK(score_descriptions(els, m, subs, 3)[0].score == doctest::Approx(1.0 / 3.0));
    CHECK(score_descriptions(els, m, subs, 2)[0].low_confidence);
}

TEST_CASE("filter_reliable") {
    std::vector<ScoredSentence> in(3);
    in[0].score = 0.4;
    in[1].score = 0.5;
    in[2].score = 0.9;
    const auto kept = filter_reliable(in);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].score == 0.5);
    CHECK(kept[1].score == 0.9);
    CHECK(filter_reliable({}).empty());
    CHECK(filter_reliable(in, 0.0).size() == 3);
    CHECK(filter_reliable(kept).size() == kept.size());
    CHECK(kDefaultMinScore == 0.5);
}

TEST_CASE("align_script end to end on the excerpt") {
    const std::string srt = "1\n00:00:10,000 --> 00:00:12,000\nYou said you would be home by eight.\n\n"
                            "2\n00:00:13,000 --> 00:00:14,000\nThe road was flooded.\n\n"
                            "3\n00:00:20,000 --> 00:00:21,000\nDinner is cold.\n\n"
                            "4\n00:00:30,000 --> 00:00:31,000\nWho is that?\n\n"
                            "5\n00:00:36,000 --> 00:00:37,000\nStay here.\n";
    AlignOptions options;
    options.keep_all = true;
    const auto all = align_script(data("script/excerpt.txt"), srt, options);
    REQUIRE(all.size() == 7);
    for (const auto &s : all)
        CHECK(s.score == 1.0);
    // "Mike sets a paper bag..." lies between the second and third subtitle.
    CHECK(all[2].interval.start_s >= 14.0);
    CHECK(all[2].interval.end_s <= 20.0);
    // Descriptions before the first anchor fall back to the default duration.
    CHECK(all[0].low_confidence);
    CHECK(all[0].interval.end_s <= 10.0);
}
