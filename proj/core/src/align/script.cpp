#include "moviedesc/align/script.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>

namespace moviedesc::align {
namespace {

struct Line {
    std::string_view content; // trimmed
    std::size_t begin = 0;    // byte offset of content
    int indent = 0;
    bool blank() const { return content.empty(); }
};

std::vector<Line> scan_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        std::string_view raw = text.substr(pos, nl - pos);
        if (!raw.empty() && raw.back() == '\r')
            raw.remove_suffix(1);
        Line line;
        std::size_t i = 0;
        for (; i < raw.size() && (raw[i] == ' ' || raw[i] == '\t'); ++i)
            line.indent = raw[i] == '\t' ? (line.indent / 8 + 1) * 8 : line.indent + 1;
        std::size_t e = raw.size();
        while (e > i && (raw[e - 1] == ' ' || raw[e - 1] == '\t'))
            --e;
        line.content = raw.substr(i, e - i);
        line.begin = pos + i;
        lines.push_back(line);
        if (nl >= text.size())
            break;
        pos = nl + 1;
    }
    return lines;
}

bool is_caps(std::string_view s) {
    bool letter = false;
    for (unsigned char c : s) {
        if (std::islower(c))
            return false;
        letter = letter || std::isupper(c);
    }
    return letter;
}

bool is_scene_heading(std::string_view s) {
    static constexpr std::array prefixes = {"INT.", "EXT.", "INT ", "EXT ", "INT/", "EXT/", "I/E"};
    if (!is_caps(s))
        return false;
    return std::any_of(prefixes.begin(), prefixes.end(), [&](const char *p) { return s.starts_with(p); });
}

bool is_parenthetical(std::string_view s) { return s.size() >= 2 && s.front() == '(' && s.back() == ')'; }

// Caps line short enough to be a speaker name, optionally with "(V.O.)" etc.
std::optional<std::string> cue_name(std::string_view s, std::size_t max_len) {
    if (s.size() > max_len || !is_caps(s) || is_scene_heading(s) || s.back() == ':' || is_parenthetical(s))
        return std::nullopt;
    if (const auto paren = s.find('('); paren != std::string_view::npos)
        s = s.substr(0, paren);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    if (s.empty())
        return std::nullopt;
    if (std::count(s.begin(), s.end(), ' ') > 3)
        return std::nullopt;
    return std::string(s);
}

int mode_of(const std::vector<int> &values) {
    std::map<int, int> counts;
    for (int v : values)
        ++counts[v];
    int best = 0;
    int best_count = 0;
    for (const auto &[v, c] : counts)
        if (c > best_count) {
            best = v;
            best_count = c;
        }
    return best;
}

// Accumulates consecutive lines of one block, joined by single spaces, while
// remembering the source offset of every joined character.
struct Block {
    std::string text;
    std::vector<std::size_t> source;

    bool empty() const { return text.empty(); }
    void add(const Line &line) {
        if (!text.empty()) {
            text.push_back(' ');
            source.push_back(line.begin);
        }
        for (std::size_t i = 0; i < line.content.size(); ++i) {
            text.push_back(line.content[i]);
            source.push_back(line.begin + i);
        }
    }
    void clear() {
        text.clear();
        source.clear();
    }
};

class Builder {
  public:
    void emit(ElementKind kind, std::string text, std::size_t begin, std::size_t end) {
        elements_.push_back({kind, std::move(text), elements_.size(), begin, end});
    }

    void flush_description() {
        for (const auto &[b, e] : split_sentences(description_.text))
            emit(ElementKind::description, description_.text.substr(b, e - b), description_.source[b],
                 description_.source[e - 1] + 1);
        description_.clear();
    }

    void flush_dialogue() {
        if (!dialogue_.empty())
            emit(ElementKind::dialogue, dialogue_.text, dialogue_.source.front(), dialogue_.source.back() + 1);
        dialogue_.clear();
    }

    void flush() {
        flush_description();
        flush_dialogue();
    }

    Block &description() { return description_; }
    Block &dialogue() { return dialogue_; }
    std::vector<ScriptElement> take() { return std::move(elements_); }

  private:
    std::vector<ScriptElement> elements_;
    Block description_;
    Block dialogue_;
};

} // namespace

std::string_view to_string(ElementKind kind) {
    switch (kind) {
    case ElementKind::scene_heading:
        return "scene_heading";
    case ElementKind::character_cue:
        return "character_cue";
    case ElementKind::dialogue:
        return "dialogue";
    case ElementKind::description:
        return "description";
    }
    return "description";
}

std::vector<std::pair<std::size_t, std::size_t>> split_sentences(std::string_view text) {
    static constexpr std::array abbreviations = {"Mr.", "Mrs.", "Ms.", "Dr.", "St.", "Jr.", "Sr."};
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t start = 0;
    auto push = [&](std::size_t b, std::size_t e) {
        while (b < e && std::isspace(static_cast<unsigned char>(text[b])))
            ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1])))
            --e;
        if (e > b)
            out.emplace_back(b, e);
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '.' && c != '!' && c != '?')
            continue;
        std::size_t j = i + 1;
        while (j < text.size() && (text[j] == '.' || text[j] == '!' || text[j] == '?' || text[j] == '"' ||
                                   text[j] == '\'' || text[j] == ')'))
            ++j;
        if (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
            continue;
        if (c == '.') {
            const auto word_start = text.find_last_of(" \t", i);
            const auto word = text.substr(word_start == std::string_view::npos ? 0 : word_start + 1,
                                          i + 1 - (word_start == std::string_view::npos ? 0 : word_start + 1));
            if (std::find(abbreviations.begin(), abbreviations.end(), word) != abbreviations.end())
                continue;
        }
        push(start, j);
        start = j;
        i = j - 1;
    }
    push(start, text.size());
    return out;
}

std::vector<ScriptElement> parse_script(std::string_view text, const ScriptFormat &format) {
    const auto lines = scan_lines(text);

    // Action margin: the smallest indentation of a mixed-case line.
    int margin = -1;
    for (const auto &l : lines)
        if (!l.blank() && !is_caps(l.content))
            margin = margin < 0 ? l.indent : std::min(margin, l.indent);
    if (margin < 0)
        margin = 0;

    std::vector<int> speech_indents;
    for (const auto &l : lines)
        if (!l.blank() && !is_caps(l.content) && l.indent > margin)
            speech_indents.push_back(l.indent - margin);

    ScriptDialect dialect = format.dialect;
    if (dialect == ScriptDialect::automatic)
        dialect = speech_indents.empty() ? ScriptDialect::flat : ScriptDialect::indented;

    const int speech_mode = speech_indents.empty() ? 0 : mode_of(speech_indents);
    const int dialogue_indent = format.dialogue_indent >= 0 ? format.dialogue_indent : std::max(1, speech_mode / 2);
    const int cue_indent = format.cue_indent >= 0 ? format.cue_indent : std::max(1, speech_mode);

    Builder out;
    bool in_dialogue = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const Line &line = lines[i];
        const int rel = line.indent - margin;
        if (line.blank()) {
            out.flush();
            in_dialogue = false;
            continue;
        }
        if (is_scene_heading(line.content)) {
            out.flush();
            in_dialogue = false;
            out.emit(ElementKind::scene_heading, std::string(line.content), line.begin,
                     line.begin + line.content.size());
            continue;
        }

        const bool speech_position = dialect == ScriptDialect::flat || rel >= dialogue_indent;
        if (in_dialogue && speech_position) {
            if (!is_parenthetical(line.content))
                out.dialogue().add(line);
            continue;
        }

        const auto name = cue_name(line.content, format.max_cue_length);
        bool cue = false;
        if (name) {
            if (dialect == ScriptDialect::indented) {
                cue = rel >= cue_indent;
            } else {
                const bool next_text = i + 1 < lines.size() && !lines[i + 1].blank();
                const bool fresh = i == 0 || lines[i - 1].blank();
                cue = next_text && fresh;
            }
        }
        if (cue) {
            out.flush();
            out.emit(ElementKind::character_cue, *name, line.begin, line.begin + line.content.size());
            in_dialogue = true;
            continue;
        }

        out.flush_dialogue();
        in_dialogue = false;
        out.description().add(line);
    }
    out.flush();
    return out.take();
}

} // namespace moviedesc::align
