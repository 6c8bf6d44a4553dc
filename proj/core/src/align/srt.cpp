#include "moviedesc/align/srt.hpp"

#include "moviedesc/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <regex>

namespace moviedesc::align {
namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos)
            break;
        pos = nl + 1;
    }
    return lines;
}

std::string strip_tags(std::string_view line) {
    std::string out;
    out.reserve(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        const char close = c == '<' ? '>' : c == '{' ? '}' : '\0';
        if (close != '\0') {
            const auto j = line.find(close, i + 1);
            if (j != std::string_view::npos) {
                i = j;
                continue;
            }
        }
        out.push_back(c);
    }
    return std::string(trim(out));
}

double to_seconds(const std::smatch &m, int first) {
    std::string frac = m[first + 3].str();
    frac.resize(3, '0');
    const long long ms = ((std::stoll(m[first].str()) * 60 + std::stoll(m[first + 1].str())) * 60 +
                          std::stoll(m[first + 2].str())) * 1000 + std::stoll(frac);
    return static_cast<double>(ms) / 1000.0;
}

} // namespace

std::vector<SubtitleEntry> parse_srt(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF"))
        text.remove_prefix(3);

    static const std::regex timing(
        R"(^\s*(\d+):(\d{1,2}):(\d{1,2})[,.](\d{1,3})\s*-->\s*(\d+):(\d{1,2}):(\d{1,2})[,.](\d{1,3}).*$)");

    const auto lines = split_lines(text);
    std::vector<SubtitleEntry> entries;
    std::size_t i = 0;
    int block = 0;
    while (i < lines.size()) {
        if (trim(lines[i]).empty()) {
            ++i;
            continue;
        }
        ++block;
        const auto index_line = trim(lines[i]);
        int index = 0;
        const auto [ptr, ec] = std::from_chars(index_line.data(), index_line.data() + index_line.size(), index);
        if (ec != std::errc{} || ptr != index_line.data() + index_line.size())
            throw Error("srt block " + std::to_string(block) + ": expected a numeric index, got '" +
                        std::string(index_line) + "'");
        const std::string label = "srt block " + std::to_string(index);
        if (i + 1 >= lines.size())
            throw Error(label + ": missing timestamp line");
        const std::string timing_line(lines[i + 1]);
        std::smatch m;
        if (!std::regex_match(timing_line, m, timing))
            throw Error(label + ": malformed timestamp line '" + timing_line + "'");

        SubtitleEntry entry;
        entry.index = index;
        entry.interval = {to_seconds(m, 1), to_seconds(m, 5)};
        if (!(entry.interval.end_s > entry.interval.start_s))
            throw Error(label + ": end time not after start time");
        i += 2;
        std::string body;
        while (i < lines.size() && !trim(lines[i]).empty()) {
            const auto clean = strip_tags(lines[i]);
            if (!clean.empty()) {
                if (!body.empty())
                    body.push_back('\n');
                body += clean;
            }
            ++i;
        }
        entry.text = std::move(body);

        if (!entries.empty()) {
            SubtitleEntry &prev = entries.back();
            if (entry.index <= prev.index)
                throw Error(label + ": index not increasing");
            if (entry.interval.start_s <= prev.interval.start_s)
                throw Error(label + ": starts before the previous entry");
            if (entry.interval.start_s < prev.interval.end_s)
                prev.interval.end_s = entry.interval.start_s;
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::string format_srt_time(double seconds) {
    const long long ms = std::llround(seconds * 1000.0);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld,%03lld", ms / 3600000, (ms / 60000) % 60, (ms / 1000) % 60,
                  ms % 1000);
    return buf;
}

std::string serialize_srt(const std::vector<SubtitleEntry> &entries) {
    std::string out;
    for (const auto &e : entries) {
        out += std::to_string(e.index);
        out += '\n';
        out += format_srt_time(e.interval.start_s);
        out += " --> ";
        out += format_srt_time(e.interval.end_s);
        out += '\n';
        out += e.text;
        out += "\n\n";
    }
    return out;
}

} // namespace moviedesc::align
