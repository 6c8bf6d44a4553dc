#pragma once

#include "moviedesc/semantic/sr.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace CLI {
class App;
}

namespace moviedesc::cli {

using Json = nlohmann::ordered_json;

/// Bad flag combinations found after parsing; exit code 1.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Context {
    std::ostream &out;
    std::ostream &err;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

inline constexpr const char *kProjectDirEnv = "MOVIEDESC_PROJECT_DIR";
inline constexpr const char *kDataDirEnv = "MOVIEDESC_DATA_DIR";

/// --project when given, else $MOVIEDESC_PROJECT_DIR/project.jsonl.
std::filesystem::path resolve_project(const std::string &flag);

/// $MOVIEDESC_DATA_DIR, else the data directory baked in at build time.
std::filesystem::path data_dir();

/// Atomic write to `path`, or to ctx.out when `path` is empty.
void emit(Context &ctx, const std::string &path, const std::string &content);

/// Non-blank lines parsed as JSON objects; errors name file and line.
std::vector<std::pair<std::size_t, Json>> read_jsonl(const std::filesystem::path &path);

/// (id, sentence) from JSON lines carrying "snippet_id", "id" or
/// "sentence_id" and "sentence" or "text"; lines without both are skipped,
/// so project files work as input. Plain-text files give ids "L<line>".
std::vector<std::pair<std::string, std::string>> read_sentences(const std::filesystem::path &path);

/// SR tuple fields as written by parse-sr and crf-map.
Json tuple_fields(const semantic::SRTuple &t);
/// Reads subject/verb/object/location/mode; nullopt when verb is null.
std::optional<semantic::SRTuple> tuple_from_record(const Json &j, const std::string &where);

struct SrRecord {
    std::string id;       ///< snippet or sentence id
    std::string sentence; ///< the clause text when present
    semantic::SRTuple tuple;
    /// False when the parser flagged the clause "no-frame" or "no-match"; the
    /// slots of such a tuple are not role-checked.
    bool frame_matched = true;
};

/// Records with a verb from an SR JSON lines file. Ids come from
/// "snippet_id" or "sentence_id".
std::vector<SrRecord> read_sr_records(const std::filesystem::path &path);

std::string format_fixed(double v, int decimals);

void add_signal_commands(CLI::App &app, Context &ctx);
void add_text_commands(CLI::App &app, Context &ctx);
void add_corpus_commands(CLI::App &app, Context &ctx);
void add_baseline_commands(CLI::App &app, Context &ctx);
void add_eval_commands(CLI::App &app, Context &ctx);

} // namespace moviedesc::cli
