#include "moviedesc/corpus/stats.hpp"

#include "util/text.hpp"

#include <cstdio>

namespace moviedesc::corpus {
namespace {

struct Accumulator {
    SourceStats stats;
    double kept_s = 0.0;

    void add(const Snippet &s) {
        const auto words = count_words(s.sentence);
        stats.words_before += words;
        if (s.tag != CurationTag::keep)
            return;
        stats.words_after += words;
        ++stats.sentences;
        kept_s += s.interval.duration();
    }

    SourceStats finish() const {
        SourceStats out = stats;
        out.avg_clip_s = out.sentences ? kept_s / static_cast<double>(out.sentences) : 0.0;
        out.total_h = kept_s / 3600.0;
        return out;
    }
};

std::string row(const char *label, const SourceStats &s) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-8s %14zu %13zu %10zu %17.2f %17.2f\n", label, s.words_before, s.words_after,
                  s.sentences, s.avg_clip_s, s.total_h);
    return buf;
}

} // namespace

std::size_t count_words(std::string_view sentence) { return util::split_ws(sentence).size(); }

CorpusStats compute_stats(const CorpusProject &project) {
    Accumulator dvs;
    Accumulator script;
    Accumulator total;
    for (const auto &s : project.snippets()) {
        (s.source == Source::dvs ? dvs : script).add(s);
        total.add(s);
    }
    return {dvs.finish(), script.finish(), total.finish()};
}

std::string format_stats_table(const CorpusStats &stats) {
    char header[160];
    std::snprintf(header, sizeof header, "%-8s %14s %13s %10s %17s %17s\n", "Source", "Words before", "Words after",
                  "Sentences", "Avg. length (s)", "Total length (h)");
    return std::string(header) + row("DVS", stats.dvs) + row("Script", stats.script) + row("Total", stats.total);
}

} // namespace moviedesc::corpus
