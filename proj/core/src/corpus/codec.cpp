#include "corpus/codec.hpp"

#include "moviedesc/error.hpp"

namespace moviedesc::corpus::codec {
namespace {

const Json &field(const Json &j, const char *key) {
    if (!j.is_object())
        throw Error("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end())
        throw Error(std::string("missing field '") + key + "'");
    return *it;
}

std::string string_field(const Json &j, const char *key) {
    const auto &v = field(j, key);
    if (!v.is_string())
        throw Error(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

double number_field(const Json &j, const char *key) {
    const auto &v = field(j, key);
    if (!v.is_number())
        throw Error(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

std::optional<double> optional_number(const Json &j, const char *key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null())
        return std::nullopt;
    if (!it->is_number())
        throw Error(std::string("field '") + key + "' must be a number or null");
    return it->get<double>();
}

} // namespace

Json snippet_to_json(const Snippet &s) {
    Json j;
    j["id"] = s.id;
    j["movie_id"] = s.movie_id;
    j["start_s"] = s.interval.start_s;
    j["end_s"] = s.interval.end_s;
    j["sentence"] = s.sentence;
    j["source"] = to_string(s.source);
    j["score"] = s.score ? Json(*s.score) : Json(nullptr);
    j["tag"] = to_string(s.tag);
    j["locked"] = s.locked;
    return j;
}

Snippet snippet_from_json(const Json &j) {
    Snippet s;
    s.id = string_field(j, "id");
    s.movie_id = string_field(j, "movie_id");
    s.interval = {number_field(j, "start_s"), number_field(j, "end_s")};
    s.sentence = string_field(j, "sentence");
    s.source = parse_source(string_field(j, "source"));
    s.score = optional_number(j, "score");
    if (j.contains("tag"))
        s.tag = parse_tag(string_field(j, "tag"));
    if (j.contains("locked")) {
        if (!j["locked"].is_boolean())
            throw Error("field 'locked' must be a boolean");
        s.locked = j["locked"].get<bool>();
    }
    return s;
}

Json movie_to_json(const std::string &id, const MovieInfo &m) {
    Json j;
    j["id"] = id;
    j["title"] = m.title;
    j["duration_s"] = m.duration_s ? Json(*m.duration_s) : Json(nullptr);
    j["media"] = Json::object();
    for (const auto &[role, path] : m.media)
        j["media"][role] = path;
    return j;
}

std::pair<std::string, MovieInfo> movie_from_json(const Json &j) {
    MovieInfo m;
    auto id = string_field(j, "id");
    m.title = j.contains("title") ? string_field(j, "title") : std::string();
    m.duration_s = optional_number(j, "duration_s");
    if (j.contains("media")) {
        const auto &media = j["media"];
        if (!media.is_object())
            throw Error("field 'media' must be an object");
        for (const auto &[role, path] : media.items()) {
            if (!path.is_string())
                throw Error("media path for '" + role + "' must be a string");
            m.media[role] = path.get<std::string>();
        }
    }
    return {std::move(id), std::move(m)};
}

} // namespace moviedesc::corpus::codec
