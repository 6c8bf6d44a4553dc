#pragma once

#include "moviedesc/corpus/project.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace moviedesc::corpus {

/// Project files are JSON lines: a header record (format, version, revision,
/// movies) followed by one record per snippet in project order.
inline constexpr std::string_view kProjectFormat = "moviedesc-project";
inline constexpr std::string_view kProjectVersion = "1";

std::string serialize_project(const CorpusProject &project);

/// Throws Error with "<source>:<line>:" for malformed records and a migration
/// message for other versions. The header revision is restored verbatim.
CorpusProject parse_project(std::string_view text, std::string_view source = "<memory>");

/// Writes through a temp file and rename.
void save_project(const CorpusProject &project, const std::filesystem::path &path);
CorpusProject load_project(const std::filesystem::path &path);

} // namespace moviedesc::corpus
