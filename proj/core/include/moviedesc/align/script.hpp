#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace moviedesc::align {

enum class ElementKind { scene_heading, character_cue, dialogue, description };

std::string_view to_string(ElementKind kind);

/// One classified piece of a screenplay. `begin`/`end` are byte offsets into
/// the parsed text; description elements are single sentences.
struct ScriptElement {
    ElementKind kind = ElementKind::description;
    std::string text;
    std::size_t ordinal = 0;
    std::size_t begin = 0;
    std::size_t end = 0;
};

enum class ScriptDialect {
    automatic, ///< decide from the indentation distribution
    indented,  ///< cues and dialogue indented relative to action text
    flat,      ///< everything flush left; cues are caps lines followed by speech
};

struct ScriptFormat {
    ScriptDialect dialect = ScriptDialect::automatic;
    /// Minimum indentation, relative to the action margin, of a character cue
    /// in the indented dialect. Negative selects the per-file estimate.
    int cue_indent = -1;
    /// Same for dialogue lines.
    int dialogue_indent = -1;
    std::size_t max_cue_length = 40;
};

std::vector<ScriptElement> parse_script(std::string_view text, const ScriptFormat &format = {});

/// Splits prose into sentences at '.', '!' or '?' followed by whitespace or
/// the end of the text. Returns [begin, end) offsets relative to `text`.
std::vector<std::pair<std::size_t, std::size_t>> split_sentences(std::string_view text);

} // namespace moviedesc::align
