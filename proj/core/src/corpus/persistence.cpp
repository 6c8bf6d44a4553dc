#include "moviedesc/corpus/persistence.hpp"

#include "corpus/codec.hpp"
#include "moviedesc/error.hpp"
#include "util/io.hpp"
#include "util/text.hpp"

namespace moviedesc::corpus {

std::string serialize_project(const CorpusProject &project) {
    codec::Json header;
    header["format"] = kProjectFormat;
    header["version"] = kProjectVersion;
    header["revision"] = project.revision();
    header["movies"] = codec::Json::array();
    for (const auto &[id, movie] : project.movies())
        header["movies"].push_back(codec::movie_to_json(id, movie));
    std::string out = header.dump();
    out += '\n';
    for (const auto &s : project.snippets()) {
        out += codec::snippet_to_json(s).dump();
        out += '\n';
    }
    return out;
}

CorpusProject parse_project(std::string_view text, std::string_view source) {
    const auto lines = util::split_lines(text);
    CorpusProject project;
    std::uint64_t revision = 0;
    bool have_header = false;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const auto line = util::trim(lines[n]);
        const auto where = "project " + std::string(source) + ":" + std::to_string(n + 1) + ": ";
        if (line.empty())
            continue;
        codec::Json j;
        try {
            j = codec::Json::parse(line);
        } catch (const nlohmann::json::parse_error &) {
            throw Error(where + "corrupt record (not valid JSON)");
        }
        try {
            if (!have_header) {
                if (!j.is_object() || j.value("format", std::string()) != kProjectFormat)
                    throw Error("missing project header");
                const auto &version = j.at("version");
                const auto v = version.is_string() ? version.get<std::string>() : version.dump();
                if (v != kProjectVersion)
                    throw Error("unsupported project version \"" + v + "\"; this build reads version " +
                                std::string(kProjectVersion) + ", migrate the file first");
                if (!j.at("revision").is_number_unsigned())
                    throw Error("field 'revision' must be a non-negative integer");
                revision = j.at("revision").get<std::uint64_t>();
                for (const auto &m : j.at("movies")) {
                    auto [id, info] = codec::movie_from_json(m);
                    if (project.find_movie(id))
                        throw Error("duplicate movie id '" + id + "'");
                    project.set_movie(id, std::move(info));
                }
                have_header = true;
                continue;
            }
            project.add_snippet(codec::snippet_from_json(j));
        } catch (const nlohmann::json::exception &e) {
            throw Error(where + e.what());
        } catch (const Error &e) {
            throw Error(where + e.what());
        }
    }
    if (!have_header)
        throw Error("project " + std::string(source) + ": empty file");
    project.restore_revision(revision);
    return project;
}

void save_project(const CorpusProject &project, const std::filesystem::path &path) {
    util::write_file_atomic(path, serialize_project(project));
}

CorpusProject load_project(const std::filesystem::path &path) {
    return parse_project(util::read_file(path), path.string());
}

} // namespace moviedesc::corpus
