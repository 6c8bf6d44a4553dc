#pragma once

#include "moviedesc/baselines/generate.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace moviedesc::baselines {

/// Source side: the non-empty slot labels in subject, verb, object, location
/// order, spaces inside a label replaced by underscores.
std::string smt_source_line(const semantic::SRTuple &tuple);

/// Target side: the lowercased, punctuation-split sentence.
std::string smt_target_line(std::string_view sentence);

/// Four characters, S/V/O/L for a filled slot and '-' for an empty one.
std::string smt_layout_line(const semantic::SRTuple &tuple);

/// Writes line-aligned source and target files and, when `out_layout` is
/// set, a layout file that makes the source side parseable again. Throws on
/// an empty pair list; I/O errors name the path.
void export_smt_parallel(const std::vector<SrSentencePair> &pairs, const std::filesystem::path &out_src,
                         const std::filesystem::path &out_tgt,
                         const std::optional<std::filesystem::path> &out_layout = std::nullopt);

/// Inverse of export_smt_parallel given the layout file. Pairs come back
/// with target-side sentences and the given label mode.
std::vector<SrSentencePair> read_smt_parallel(const std::filesystem::path &src, const std::filesystem::path &tgt,
                                              const std::filesystem::path &layout,
                                              semantic::LabelMode mode = semantic::LabelMode::sense);

} // namespace moviedesc::baselines
