#include "common.hpp"

#include "moviedesc/error.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace moviedesc::cli {
namespace {

std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        out.push_back(std::move(line));
    }
    return out;
}

bool blank(const std::string &s) { return s.find_first_not_of(" \t") == std::string::npos; }

std::optional<std::string> string_field(const Json &j, std::initializer_list<const char *> keys) {
    for (const auto *k : keys)
        if (const auto it = j.find(k); it != j.end() && it->is_string())
            return it->get<std::string>();
    return std::nullopt;
}

} // namespace

std::filesystem::path resolve_project(const std::string &flag) {
    if (!flag.empty())
        return flag;
    if (const char *dir = std::getenv(kProjectDirEnv); dir && *dir)
        return std::filesystem::path(dir) / "project.jsonl";
    throw UsageError(std::string("--project is required when ") + kProjectDirEnv + " is unset");
}

std::filesystem::path data_dir() {
    if (const char *dir = std::getenv(kDataDirEnv); dir && *dir)
        return dir;
    // An installed binary may outlive the source tree it was built from.
    if (std::filesystem::is_directory(MOVIEDESC_DEFAULT_DATA_DIR))
        return MOVIEDESC_DEFAULT_DATA_DIR;
    return MOVIEDESC_INSTALL_DATA_DIR;
}

void emit(Context &ctx, const std::string &path, const std::string &content) {
    if (path.empty() || path == "-") {
        ctx.out << content;
        ctx.out.flush();
        return;
    }
    const std::filesystem::path target(path);
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out)
            throw Error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot replace " + target.string());
    }
}

std::vector<std::pair<std::size_t, Json>> read_jsonl(const std::filesystem::path &path) {
    std::vector<std::pair<std::size_t, Json>> out;
    std::size_t n = 0;
    for (const auto &line : lines_of(slurp(path))) {
        ++n;
        if (blank(line))
            continue;
        try {
            auto j = Json::parse(line);
            if (!j.is_object())
                throw Error("expected a JSON object");
            out.emplace_back(n, std::move(j));
        } catch (const nlohmann::json::exception &) {
            throw Error(path.string() + ":" + std::to_string(n) + ": corrupt record (not valid JSON)");
        } catch (const Error &e) {
            throw Error(path.string() + ":" + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> read_sentences(const std::filesystem::path &path) {
    const auto text = slurp(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    std::vector<std::pair<std::string, std::string>> out;
    if (first != std::string::npos && text[first] == '{') {
        for (const auto &[line, j] : read_jsonl(path)) {
            const auto id = string_field(j, {"snippet_id", "id", "sentence_id"});
            const auto sentence = string_field(j, {"sentence", "text"});
            if (id && sentence)
                out.emplace_back(*id, *sentence);
        }
        return out;
    }
    std::size_t n = 0;
    for (const auto &line : lines_of(text)) {
        ++n;
        if (!blank(line))
            out.emplace_back("L" + std::to_string(n), line);
    }
    return out;
}

Json tuple_fields(const semantic::SRTuple &t) {
    Json j;
    const auto put = [&](const char *key, const std::optional<std::string> &v) {
        j[key] = v ? Json(*v) : Json(nullptr);
    };
    put("subject", t.subject);
    j["verb"] = t.verb;
    put("object", t.object);
    put("location", t.location);
    j["mode"] = semantic::to_string(t.mode);
    return j;
}

std::optional<semantic::SRTuple> tuple_from_record(const Json &j, const std::string &where) {
    try {
        if (!j.contains("verb") || j.at("verb").is_null())
            return std::nullopt;
        semantic::SRTuple t;
        t.verb = j.at("verb").get<std::string>();
        const auto get = [&](const char *key) -> std::optional<std::string> {
            if (!j.contains(key) || j.at(key).is_null())
                return std::nullopt;
            return j.at(key).get<std::string>();
        };
        t.subject = get("subject");
        t.object = get("object");
        t.location = get("location");
        t.mode = semantic::parse_label_mode(j.value("mode", std::string("sense")));
        return t;
    } catch (const nlohmann::json::exception &e) {
        throw Error(where + ": " + e.what());
    } catch (const Error &e) {
        throw Error(where + ": " + e.what());
    }
}

std::vector<SrRecord> read_sr_records(const std::filesystem::path &path) {
    std::vector<SrRecord> out;
    for (const auto &[line, j] : read_jsonl(path)) {
        const auto where = path.string() + ":" + std::to_string(line);
        auto t = tuple_from_record(j, where);
        if (!t)
            continue;
        const auto id = string_field(j, {"snippet_id", "sentence_id", "id"});
        if (!id)
            throw Error(where + ": record has no snippet_id or sentence_id");
        bool matched = true;
        if (const auto f = j.find("flags"); f != j.end() && f->is_array())
            for (const auto &flag : *f)
                matched = matched && flag != "no-frame" && flag != "no-match";
        out.push_back({*id, string_field(j, {"sentence", "clause"}).value_or(""), std::move(*t), matched});
    }
    return out;
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

} // namespace moviedesc::cli
