#pragma once

#include "moviedesc/time_interval.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace moviedesc::align {

struct SubtitleEntry {
    int index = 0;
    TimeInterval interval;
    std::string text; ///< lines joined with '\n', formatting tags removed

    friend bool operator==(const SubtitleEntry &, const SubtitleEntry &) = default;
};

/// Parses SubRip text. Accepts a UTF-8 byte-order mark and CRLF line endings;
/// strips <...> and {...} formatting tags. Overlapping entries are clipped so
/// that each ends no later than the next one starts.
std::vector<SubtitleEntry> parse_srt(std::string_view text);

std::string serialize_srt(const std::vector<SubtitleEntry> &entries);

/// "HH:MM:SS,mmm" with millisecond rounding.
std::string format_srt_time(double seconds);

} // namespace moviedesc::align
