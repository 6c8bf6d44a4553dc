#pragma once

#include "moviedesc/corpus/project.hpp"

#include <nlohmann/json.hpp>

namespace moviedesc::corpus::codec {

using Json = nlohmann::ordered_json;

Json snippet_to_json(const Snippet &s);
/// Throws Error on missing or mistyped fields.
Snippet snippet_from_json(const Json &j);

Json movie_to_json(const std::string &id, const MovieInfo &m);
std::pair<std::string, MovieInfo> movie_from_json(const Json &j);

} // namespace moviedesc::corpus::codec
