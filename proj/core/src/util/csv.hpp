#pragma once

#include "moviedesc/error.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace moviedesc::util {

struct CsvRow {
    std::size_t line = 0; ///< 1-based line where the row starts
    std::vector<std::string> cells;
};

/// RFC 4180: quoted cells may contain commas, doubled quotes and newlines.
/// Blank lines are skipped. Throws on an unterminated quote.
inline std::vector<CsvRow> parse_csv(std::string_view text, std::string_view source) {
    std::vector<CsvRow> rows;
    CsvRow row;
    std::string cell;
    std::size_t line = 1;
    row.line = 1;
    bool quoted = false;
    bool any = false;
    const auto end_row = [&] {
        if (any || !cell.empty() || !row.cells.empty()) {
            row.cells.push_back(std::move(cell));
            rows.push_back(std::move(row));
        }
        row = {};
        cell.clear();
        any = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                if (c == '\n')
                    ++line;
                cell += c;
            }
            continue;
        }
        if (row.cells.empty() && cell.empty() && !any)
            row.line = line;
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            row.cells.push_back(std::move(cell));
            cell.clear();
            any = true;
        } else if (c == '\n') {
            end_row();
            ++line;
        } else if (c != '\r') {
            cell += c;
        }
    }
    if (quoted)
        throw Error(std::string(source) + ":" + std::to_string(row.line) + ": unterminated quoted cell");
    end_row();
    return rows;
}

} // namespace moviedesc::util
