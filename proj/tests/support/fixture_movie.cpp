#include "fixture_movie.hpp"

#include "cli/app.hpp"
#include "moviedesc/baselines/crf.hpp"
#include "moviedesc/baselines/features.hpp"
#include "moviedesc/error.hpp"
#include "moviedesc/eval/ranking.hpp"
#include "moviedesc/rng.hpp"
#include "synthetic_audio.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace moviedesc::testing {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kDvsSnippets = 8;
constexpr std::size_t kTrainSnippets = 40;
constexpr std::size_t kDtDim = 24;

std::string dvs_id(int i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s_dvs_%04d", kFixtureMovieId, i);
    return buf;
}

std::string train_id(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "train_%03zu", i);
    return buf;
}

// Sparse-ish non-negative histogram; a few dominant bins per snippet.
baselines::FeatureVector histogram(Rng &rng) {
    baselines::FeatureVector v{"dt", std::vector<double>(kDtDim, 0.0)};
    for (auto &x : v.values)
        x = rng.uniform(0.0, 0.2);
    for (int k = 0; k < 3; ++k)
        v.values[rng.index(kDtDim)] += rng.uniform(1.0, 3.0);
    return baselines::l1_normalize(v);
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw Error("cannot write " + path.string());
}

std::string class_scores(Rng &rng, const std::vector<std::string> &classes) {
    std::string csv = "snippet_id,class,score\n";
    for (int i = 1; i <= kDvsSnippets; ++i)
        for (const auto &c : classes) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4f", rng.uniform());
            csv += dvs_id(i) + "," + c + "," + buf + "\n";
        }
    return csv;
}

// Stand-in judge: shorter sentences rank higher, ties by blind key.
std::string judge_responses(const fs::path &tasks_path) {
    const auto set = eval::read_ranking_tasks(tasks_path);
    std::string lines;
    for (const auto &task : set.tasks) {
        auto order = task.candidates;
        std::stable_sort(order.begin(), order.end(), [](const auto &a, const auto &b) {
            return a.sentence.size() != b.sentence.size() ? a.sentence.size() < b.sentence.size() : a.key < b.key;
        });
        for (const auto &criterion : set.criteria) {
            json j;
            j["snippet_id"] = task.snippet_id;
            j["criterion"] = criterion;
            for (std::size_t r = 0; r < order.size(); ++r)
                j["ranks"][order[r].key] = r + 1;
            lines += j.dump() + "\n";
        }
    }
    return lines;
}

} // namespace

fs::path fixture_text_dir() { return fs::path(MOVIEDESC_TEST_DATA) / "fixture_movie"; }

void write_fixture_inputs(const fs::path &dir) {
    fs::create_directories(dir);
    const auto mix = make_synthetic_mix();
    signal::write_wav(dir / "original.wav", mix.original);
    signal::write_wav(dir / "mixed.wav", mix.mixed);

    Rng rng(20150607);
    std::vector<baselines::FeatureRecord> train;
    for (std::size_t i = 1; i <= kTrainSnippets; ++i)
        train.push_back({train_id(i), histogram(rng)});
    std::vector<baselines::FeatureRecord> test;
    for (int i = 1; i <= kDvsSnippets; ++i)
        test.push_back({dvs_id(i), histogram(rng)});
    baselines::write_features(dir / "train_dt.mdfv", train);
    baselines::write_features(dir / "test_dt.mdfv", test);

    write_text(dir / "lsda.csv", class_scores(rng, {"man", "woman", "door", "lantern", "phone", "blanket"}));
    write_text(dir / "places.csv", class_scores(rng, {"kitchen", "barn", "yard"}));
}

void write_fixture_unaries(const fs::path &vocab_json, const fs::path &out) {
    std::ifstream in(vocab_json, std::ios::binary);
    if (!in)
        throw Error("cannot read " + vocab_json.string());
    const auto vocab = json::parse(in);
    Rng rng(4242);
    std::map<std::string, baselines::UnaryScores> unaries;
    for (int i = 1; i <= kDvsSnippets; ++i) {
        auto &u = unaries[dvs_id(i)];
        for (const auto node : {baselines::CrfNode::verb, baselines::CrfNode::object, baselines::CrfNode::location}) {
            const auto &labels = vocab.at("slots").at(std::string(baselines::to_string(node)));
            for (const auto &[label, _] : labels.items())
                u.at(node)[label] = std::round(rng.gaussian() * 1e4) / 1e4;
        }
    }
    baselines::write_unaries(out, unaries);
}

bool FixtureRun::ok() const { return first_failure().empty(); }

std::string FixtureRun::first_failure() const {
    for (const auto &s : steps)
        if (s.exit_code != 0)
            return s.name + ": exit " + std::to_string(s.exit_code) + ": " + s.err;
    return {};
}

FixtureRun run_fixture_pipeline(const fs::path &inputs, const fs::path &out) {
    fs::create_directories(out);
    const auto text = fixture_text_dir();
    const auto in = [&](const char *name) { return (inputs / name).string(); };
    const auto tx = [&](const char *name) { return (text / name).string(); };
    const auto o = [&](const char *name) { return (out / name).string(); };
    const auto movie = std::string(kFixtureMovieId);

    FixtureRun run;
    const auto step = [&](std::vector<std::string> args, std::vector<const char *> produced) {
        if (!run.ok())
            return;
        std::vector<const char *> argv{"moviedesc"};
        for (const auto &a : args)
            argv.push_back(a.c_str());
        std::ostringstream sout, serr;
        PipelineStep s{args.front(), args, 0, {}};
        s.exit_code = cli::run(static_cast<int>(argv.size()), argv.data(), sout, serr);
        s.err = serr.str();
        run.steps.push_back(std::move(s));
        if (run.steps.back().exit_code == 0)
            for (const auto *p : produced)
                run.outputs.emplace_back(p);
    };

    // A per-movie threshold; the percentile default over-segments this mix.
    step({"segment", "--mixed", in("mixed.wav"), "--original", in("original.wav"), "--threshold", "0.1",
          "--curve-out", o("curve.json"), "--out", o("dvs_intervals.jsonl")},
         {"dvs_intervals.jsonl", "curve.json"});
    step({"align-script", "--script", tx("script.txt"), "--srt", tx("subtitles.srt"), "--movie", movie, "--out",
          o("script_sentences.jsonl")},
         {"script_sentences.jsonl"});
    step({"import", "--project", o("project.jsonl"), "--movie", movie, "--title", "Fixture", "--dvs",
          o("dvs_intervals.jsonl"), "--dvs-sentences", tx("dvs_sentences.txt"), "--script",
          o("script_sentences.jsonl"), "--media", "original=" + in("original.wav"), "--media",
          "mixed=" + in("mixed.wav")},
         {});
    step({"anonymize", "--project", o("project.jsonl"), "--names", tx("names.txt"), "--log",
          o("anonymize_log.jsonl")},
         {"project.jsonl", "anonymize_log.jsonl"});
    // The interpolated script intervals are narrower than the narration, so
    // the fixture pairs at a lower overlap than the corpus default.
    step({"pair", "--project", o("project.jsonl"), "--movie", movie, "--min-iou", "0.2", "--out", o("pairs.jsonl")},
         {"pairs.jsonl"});
    step({"stats", "--project", o("project.jsonl"), "--out", o("stats.txt")}, {"stats.txt"});

    step({"parse-sr", "--in", tx("train_sentences.jsonl"), "--out", o("train_sr.jsonl")}, {"train_sr.jsonl"});
    step({"build-vocab", "--sr", o("train_sr.jsonl"), "--min-count", "2", "--out", o("vocab.json")},
         {"vocab.json"});
    step({"crf-fit", "--sr", o("train_sr.jsonl"), "--vocab", o("vocab.json"), "--out", o("potentials.json")},
         {"potentials.json"});
    if (run.ok()) {
        PipelineStep s{"fixture-unaries", {o("vocab.json"), o("unaries.csv")}, 0, {}};
        try {
            write_fixture_unaries(o("vocab.json"), o("unaries.csv"));
            run.outputs.emplace_back("unaries.csv");
        } catch (const std::exception &e) {
            s.exit_code = 2;
            s.err = e.what();
        }
        run.steps.push_back(std::move(s));
    }
    step({"crf-map", "--potentials", o("potentials.json"), "--unaries", o("unaries.csv"), "--out",
          o("crf_tuples.jsonl")},
         {"crf_tuples.jsonl"});
    step({"gen", "--train-sr", o("train_sr.jsonl"), "--tuples", o("crf_tuples.jsonl"), "--out",
          o("crf_sentences.jsonl")},
         {"crf_sentences.jsonl"});
    step({"nn", "--train", in("train_dt.mdfv"), "--sentences", tx("train_sentences.jsonl"), "--query",
          in("test_dt.mdfv"), "--out", o("nn.jsonl")},
         {"nn.jsonl"});
    step({"vwords", "--codebook", o("codebook.json"), "--fit-from", in("train_dt.mdfv"), "--k", "6", "--dt",
          in("test_dt.mdfv"), "--lsda", in("lsda.csv"), "--places", in("places.csv"), "--out",
          o("vw_tuples.jsonl")},
         {"codebook.json", "vw_tuples.jsonl"});
    step({"bleu", "--candidates", o("nn.jsonl"), "--references", o("project.jsonl"), "--out", o("bleu_nn.txt")},
         {"bleu_nn.txt"});
    step({"bleu", "--candidates", o("crf_sentences.jsonl"), "--references", o("project.jsonl"), "--out",
          o("bleu_crf.txt")},
         {"bleu_crf.txt"});
    step({"rank-export", "--method", "nn-dt=" + o("nn.jsonl"), "--method", "crf=" + o("crf_sentences.jsonl"),
          "--method", "reference=" + o("project.jsonl"), "--out", o("ranking_tasks.json")},
         {"ranking_tasks.json"});
    if (run.ok()) {
        PipelineStep s{"fixture-judge", {o("ranking_tasks.json"), o("responses.jsonl")}, 0, {}};
        try {
            write_text(o("responses.jsonl"), judge_responses(o("ranking_tasks.json")));
            run.outputs.emplace_back("responses.jsonl");
        } catch (const std::exception &e) {
            s.exit_code = 2;
            s.err = e.what();
        }
        run.steps.push_back(std::move(s));
    }
    step({"rank-import", "--tasks", o("ranking_tasks.json"), "--responses", o("responses.jsonl"), "--records-out",
          o("ranking_records.jsonl"), "--out", o("ranking_table.txt")},
         {"ranking_records.jsonl", "ranking_table.txt"});
    return run;
}

} // namespace moviedesc::testing
