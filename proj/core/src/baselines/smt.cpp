#include "moviedesc/baselines/smt.hpp"

#include "moviedesc/error.hpp"
#include "moviedesc/semantic/tagger.hpp"
#include "util/io.hpp"
#include "util/text.hpp"

#include <algorithm>

namespace moviedesc::baselines {
namespace {

std::string underscore(std::string s) {
    std::replace(s.begin(), s.end(), ' ', '_');
    return s;
}

std::vector<std::string_view> lines_of(const std::string &text) {
    auto lines = util::split_lines(text);
    if (!lines.empty() && lines.back().empty())
        lines.pop_back();
    return lines;
}

} // namespace

std::string smt_source_line(const semantic::SRTuple &t) {
    std::string out;
    const auto add = [&](const std::optional<std::string> &label) {
        if (!label)
            return;
        if (!out.empty())
            out += ' ';
        out += underscore(*label);
    };
    add(t.subject);
    add(t.verb);
    add(t.object);
    add(t.location);
    return out;
}

std::string smt_target_line(std::string_view sentence) {
    std::string out;
    for (const auto &tok : semantic::tokenize(sentence))
        out += (out.empty() ? "" : " ") + tok;
    return out;
}

std::string smt_layout_line(const semantic::SRTuple &t) {
    return std::string{t.subject ? 'S' : '-', 'V', t.object ? 'O' : '-', t.location ? 'L' : '-'};
}

void export_smt_parallel(const std::vector<SrSentencePair> &pairs, const std::filesystem::path &out_src,
                         const std::filesystem::path &out_tgt, const std::optional<std::filesystem::path> &out_layout) {
    if (pairs.empty())
        throw Error("export_smt_parallel: no pairs");
    std::string src, tgt, layout;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto &[tuple, sentence] = pairs[i];
        if (tuple.verb.empty())
            throw Error("export_smt_parallel: pair " + std::to_string(i) + " has no verb");
        for (const auto *label : {&tuple.subject, &tuple.object, &tuple.location})
            if (*label && label->value().empty())
                throw Error("export_smt_parallel: pair " + std::to_string(i) + " has an empty label");
        const auto target = smt_target_line(sentence);
        if (target.empty())
            throw Error("export_smt_parallel: pair " + std::to_string(i) + " has an empty sentence");
        src += smt_source_line(tuple) + "\n";
        tgt += target + "\n";
        layout += smt_layout_line(tuple) + "\n";
    }
    util::write_file_atomic(out_src, src);
    util::write_file_atomic(out_tgt, tgt);
    if (out_layout)
        util::write_file_atomic(*out_layout, layout);
}

std::vector<SrSentencePair> read_smt_parallel(const std::filesystem::path &src_path,
                                              const std::filesystem::path &tgt_path,
                                              const std::filesystem::path &layout_path, semantic::LabelMode mode) {
    const auto src_text = util::read_file(src_path);
    const auto tgt_text = util::read_file(tgt_path);
    const auto layout_text = util::read_file(layout_path);
    const auto src = lines_of(src_text);
    const auto tgt = lines_of(tgt_text);
    const auto layout = lines_of(layout_text);
    if (src.size() != tgt.size() || src.size() != layout.size())
        throw Error("parallel files differ in line count: " + src_path.string() + " has " +
                    std::to_string(src.size()) + ", " + tgt_path.string() + " has " + std::to_string(tgt.size()) +
                    ", " + layout_path.string() + " has " + std::to_string(layout.size()));
    std::vector<SrSentencePair> out;
    for (std::size_t i = 0; i < src.size(); ++i) {
        const auto where = src_path.string() + ":" + std::to_string(i + 1) + ": ";
        const auto words = util::split_ws(src[i]);
        const auto lay = layout[i];
        if (lay.size() != 4 || lay[1] != 'V')
            throw Error(layout_path.string() + ":" + std::to_string(i + 1) + ": bad layout '" + std::string(lay) + "'");
        const auto filled = static_cast<std::size_t>(std::count_if(lay.begin(), lay.end(), [](char c) { return c != '-'; }));
        if (words.size() != filled)
            throw Error(where + "expected " + std::to_string(filled) + " labels, found " + std::to_string(words.size()));
        semantic::SRTuple t;
        t.mode = mode;
        std::size_t w = 0;
        const auto next = [&] {
            std::string s(words[w++]);
            std::replace(s.begin(), s.end(), '_', ' ');
            return s;
        };
        if (lay[0] == 'S')
            t.subject = next();
        t.verb = next();
        if (lay[2] == 'O')
            t.object = next();
        if (lay[3] == 'L')
            t.location = next();
        out.emplace_back(std::move(t), std::string(tgt[i]));
    }
    return out;
}

} // namespace moviedesc::baselines
