#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace moviedesc::testing {

/// Id under which the fixture movie is imported; DVS snippets become
/// "<id>_dvs_0001" and so on.
inline constexpr const char *kFixtureMovieId = "fixture";

/// Committed text inputs of the fixture movie (script, subtitles, narration
/// transcripts, character names, training sentences).
std::filesystem::path fixture_text_dir();

/// Writes the generated binary inputs into `dir`: original.wav, mixed.wav
/// (the default synthetic mix), train_dt.mdfv / test_dt.mdfv (seeded DT
/// histograms), lsda.csv and places.csv (seeded class scores). Test features
/// are keyed by the DVS snippet ids.
void write_fixture_inputs(const std::filesystem::path &dir);

/// Seeded "snippet_id,node,label,score" rows for every DVS snippet over the
/// labels of a build-vocab JSON file.
void write_fixture_unaries(const std::filesystem::path &vocab_json, const std::filesystem::path &out);

struct PipelineStep {
    std::string name;
    std::vector<std::string> args;
    int exit_code = 0;
    std::string err;
};

struct FixtureRun {
    std::vector<PipelineStep> steps;
    /// Files written under the output directory, relative, in step order.
    std::vector<std::string> outputs;

    bool ok() const;
    /// "<step>: exit <n>: <stderr>" for the first failing step, else empty.
    std::string first_failure() const;
};

/// Runs segment → align-script → import → anonymize → pair → stats →
/// parse-sr → build-vocab → crf-fit → crf-map → gen → nn → vwords → bleu →
/// rank-export → rank-import through the CLI entry point. `inputs` holds
/// write_fixture_inputs() output and is shared between runs so recorded media
/// paths do not depend on `out`. Stops at the first failing step.
FixtureRun run_fixture_pipeline(const std::filesystem::path &inputs, const std::filesystem::path &out);

} // namespace moviedesc::testing
