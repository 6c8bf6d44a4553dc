#include "common.hpp"

#include "moviedesc/baselines/crf.hpp"
#include "moviedesc/baselines/features.hpp"
#include "moviedesc/baselines/generate.hpp"
#include "moviedesc/baselines/kmeans.hpp"
#include "moviedesc/baselines/retrieval.hpp"
#include "moviedesc/baselines/smt.hpp"
#include "moviedesc/baselines/visual_words.hpp"
#include "moviedesc/error.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace moviedesc::cli {
namespace {

using namespace baselines;

std::map<std::string, std::string> sentence_index(const std::string &path) {
    std::map<std::string, std::string> out;
    for (auto &[id, s] : read_sentences(path))
        out.emplace(std::move(id), std::move(s));
    return out;
}

/// SR records paired with their sentence; `sentences` overrides the record's
/// own text when given. Clauses without a frame match are left out.
std::vector<SrSentencePair> training_pairs(const std::string &sr_path, const std::string &sentences_path) {
    const auto index = sentences_path.empty() ? std::map<std::string, std::string>{} : sentence_index(sentences_path);
    std::vector<SrSentencePair> pairs;
    for (const auto &r : read_sr_records(sr_path)) {
        if (!r.frame_matched)
            continue;
        std::string sentence = r.sentence;
        if (!sentences_path.empty()) {
            const auto it = index.find(r.id);
            if (it == index.end())
                throw Error(sentences_path + ": no sentence for '" + r.id + "'");
            sentence = it->second;
        }
        if (sentence.empty())
            throw Error(sr_path + ": record '" + r.id + "' carries no sentence; pass --sentences");
        pairs.emplace_back(r.tuple, std::move(sentence));
    }
    return pairs;
}

/// CSV rows "snippet_id,class,score" with an optional header.
std::map<std::string, std::map<std::string, double>> read_class_scores(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read " + path);
    std::map<std::string, std::map<std::string, double>> out;
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) {
        ++n;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || (n == 1 && line.rfind("snippet_id", 0) == 0))
            continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');)
            cells.push_back(c);
        double score = 0.0;
        const auto where = path + ":" + std::to_string(n) + ": ";
        if (cells.size() != 3 || cells[0].empty() || cells[1].empty())
            throw Error(where + "expected snippet_id,class,score");
        const auto [ptr, ec] = std::from_chars(cells[2].data(), cells[2].data() + cells[2].size(), score);
        if (ec != std::errc() || ptr != cells[2].data() + cells[2].size() || !std::isfinite(score))
            throw Error(where + "bad score '" + cells[2] + "'");
        if (!out[cells[0]].emplace(cells[1], score).second)
            throw Error(where + "duplicate class '" + cells[1] + "'");
    }
    return out;
}

std::map<std::string, FeatureVector> features_by_id(const std::string &path, bool normalize) {
    std::map<std::string, FeatureVector> out;
    for (auto &r : read_features(path)) {
        auto v = normalize ? l1_normalize(r.vector) : std::move(r.vector);
        if (!out.emplace(r.snippet_id, std::move(v)).second)
            throw Error(path + ": duplicate snippet '" + r.snippet_id + "'");
    }
    return out;
}

semantic::LabelVocab vocab_slot(const Json &j, const char *slot, const std::string &path) {
    if (!j.contains("slots") || !j["slots"].contains(slot))
        throw Error(path + ": vocabulary has no '" + slot + "' slot");
    semantic::LabelVocab v;
    v.slot = semantic::parse_sr_slot(slot);
    v.min_count = j.value("min_count", std::size_t{1});
    v.counts = j["slots"][slot].get<std::map<std::string, std::size_t>>();
    return v;
}

struct NnArgs {
    std::string train;
    std::string sentences;
    std::string query;
    std::string out;
};

void run_nn(Context &ctx, const NnArgs &a) {
    const auto index = sentence_index(a.sentences);
    std::vector<TrainingItem> training;
    std::vector<std::string> train_ids;
    for (auto &[id, v] : features_by_id(a.train, true)) {
        const auto it = index.find(id);
        if (it == index.end())
            throw Error(a.sentences + ": no sentence for training snippet '" + id + "'");
        training.push_back({std::move(v), it->second});
        train_ids.push_back(id);
    }
    std::string lines;
    for (const auto &[id, q] : features_by_id(a.query, true)) {
        const auto n = nearest_neighbor(q, training);
        Json j;
        j["snippet_id"] = id;
        j["neighbor_id"] = train_ids[n.index];
        j["distance"] = n.distance;
        j["sentence"] = n.sentence;
        lines += j.dump() + "\n";
    }
    ctx.err << "nn: " << training.size() << " training snippets\n";
    emit(ctx, a.out, lines);
}

struct VwordsArgs {
    std::string dt;
    std::string lsda;
    std::string places;
    std::string codebook;
    std::string fit_from;
    std::size_t k = kDefaultVisualWords;
    std::uint64_t seed = kDefaultSeed;
    std::size_t iterations = kDefaultKMeansIterations;
    std::string out;
};

void run_vwords(Context &ctx, const VwordsArgs &a) {
    VisualWordCodebook codebook;
    if (!a.fit_from.empty()) {
        std::vector<FeatureVector> data;
        for (auto &[_, v] : features_by_id(a.fit_from, false))
            data.push_back(std::move(v));
        const auto r = kmeans_fit(data, {a.k, a.seed, a.iterations});
        ctx.err << "vwords: k-means k=" << a.k << " seed=" << a.seed << " " << r.iterations << " iterations"
                << (r.converged ? "" : " (not converged)") << ", objective "
                << (r.objective.empty() ? 0.0 : r.objective.back()) << "\n";
        codebook = r.codebook;
        save_codebook(codebook, a.codebook);
    } else {
        codebook = load_codebook(a.codebook);
    }
    if (a.dt.empty())
        return;
    if (a.lsda.empty() || a.places.empty())
        throw UsageError("--dt needs --lsda and --places");
    const auto lsda = read_class_scores(a.lsda);
    const auto places = read_class_scores(a.places);
    std::string lines;
    for (const auto &[id, dt] : features_by_id(a.dt, false)) {
        const auto l = lsda.find(id);
        const auto p = places.find(id);
        if (l == lsda.end() || p == places.end())
            throw Error("no detector or scene scores for snippet '" + id + "'");
        VisualWordTuple t;
        try {
            t = visual_word_tuple(l->second, dt, p->second, codebook);
        } catch (const Error &e) {
            throw Error("snippet '" + id + "': " + e.what());
        }
        semantic::SRTuple sr;
        sr.subject = t.subject_label;
        sr.verb = "vw" + std::to_string(t.activity_word);
        sr.object = t.object_label;
        sr.location = t.scene_label;
        sr.mode = semantic::LabelMode::text;
        Json j;
        j["snippet_id"] = id;
        j.update(tuple_fields(sr));
        j["activity_word"] = t.activity_word;
        lines += j.dump() + "\n";
    }
    emit(ctx, a.out, lines);
}

struct CrfFitArgs {
    std::string sr;
    std::string vocab;
    double alpha = 1.0;
    std::string out;
};

void run_crf_fit(Context &ctx, const CrfFitArgs &a) {
    std::vector<semantic::SRTuple> tuples;
    for (const auto &r : read_sr_records(a.sr))
        tuples.push_back(r.tuple);
    std::ifstream in(a.vocab, std::ios::binary);
    if (!in)
        throw Error("cannot read " + a.vocab);
    Json vocab;
    try {
        vocab = Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw Error(a.vocab + ": " + e.what());
    }
    const auto fit = fit_pairwise(tuples, vocab_slot(vocab, "verb", a.vocab), vocab_slot(vocab, "object", a.vocab),
                                  vocab_slot(vocab, "location", a.vocab), a.alpha);
    ctx.err << "crf-fit: " << fit.used << " tuples used, " << fit.skipped << " skipped\n";
    save_potentials(fit.potentials, a.out);
}

struct CrfMapArgs {
    std::string potentials;
    std::vector<std::string> unaries;
    double unary_weight = 1.0;
    double pairwise_weight = 1.0;
    std::optional<std::size_t> top_k;
    std::string out;
};

void run_crf_map(Context &ctx, const CrfMapArgs &a) {
    const auto potentials = load_potentials(a.potentials);
    std::vector<std::map<std::string, UnaryScores>> sets;
    for (const auto &u : a.unaries)
        sets.push_back(read_unaries(u));
    const auto unaries = sum_unaries(sets);
    CrfMapOptions options;
    options.weights = {a.unary_weight, a.pairwise_weight};
    options.top_k = a.top_k;
    std::string lines;
    for (const auto &[id, u] : unaries) {
        CrfMapResult r;
        try {
            r = crf_map(u, potentials, options);
        } catch (const Error &e) {
            throw Error("snippet '" + id + "': " + e.what());
        }
        Json j;
        j["snippet_id"] = id;
        j.update(tuple_fields(r.tuple));
        j["score"] = r.score;
        lines += j.dump() + "\n";
    }
    ctx.err << "crf-map: " << unaries.size() << " snippets from " << a.unaries.size() << " unary file(s)\n";
    emit(ctx, a.out, lines);
}

struct GenArgs {
    std::string train_sr;
    std::string sentences;
    std::string tuples;
    std::string subject = "someone";
    std::string out;
};

std::string_view level_name(GenerationLevel level) {
    switch (level) {
    case GenerationLevel::exact:
        return "exact";
    case GenerationLevel::pattern:
        return "pattern";
    case GenerationLevel::drop_location:
        return "drop_location";
    case GenerationLevel::drop_object:
        return "drop_object";
    case GenerationLevel::fallback:
        break;
    }
    return "fallback";
}

void run_gen(Context &ctx, const GenArgs &a) {
    const auto bank = TemplateBank::fit(training_pairs(a.train_sr, a.sentences));
    std::string lines;
    std::map<std::string_view, std::size_t> levels;
    for (const auto &r : read_sr_records(a.tuples)) {
        // CRF and visual-word tuples carry no subject.
        auto tuple = r.tuple;
        if (!tuple.subject && !a.subject.empty())
            tuple.subject = tuple.mode == semantic::LabelMode::sense ? a.subject + "#1" : a.subject;
        const auto g = bank.generate(tuple);
        ++levels[level_name(g.level)];
        Json j;
        j["snippet_id"] = r.id;
        j["sentence"] = g.sentence;
        j["level"] = level_name(g.level);
        lines += j.dump() + "\n";
    }
    ctx.err << "gen: " << bank.pattern_count() << " patterns;";
    for (const auto &[level, n] : levels)
        ctx.err << " " << level << "=" << n;
    ctx.err << "\n";
    emit(ctx, a.out, lines);
}

struct SmtArgs {
    std::string sr;
    std::string sentences;
    std::string out_src;
    std::string out_tgt;
    std::string out_layout;
};

} // namespace

void add_baseline_commands(CLI::App &app, Context &ctx) {
    auto na = std::make_shared<NnArgs>();
    auto *nn = app.add_subcommand("nn", "Nearest-neighbor sentence retrieval by histogram intersection");
    nn->add_option("--train", na->train, "Training feature file")->required()->check(CLI::ExistingFile);
    nn->add_option("--sentences", na->sentences, "Training sentences (JSON lines or a project file)")
        ->required()
        ->check(CLI::ExistingFile);
    nn->add_option("--query", na->query, "Query feature file")->required()->check(CLI::ExistingFile);
    nn->add_option("--out", na->out, "Output file (default stdout)");
    nn->callback([&ctx, na] { run_nn(ctx, *na); });

    auto va = std::make_shared<VwordsArgs>();
    auto *vw = app.add_subcommand("vwords", "Visual-word tuples from detector, DT and scene features");
    vw->add_option("--codebook", va->codebook, "Codebook JSON (read, or written with --fit-from)")->required();
    vw->add_option("--fit-from", va->fit_from, "Fit the codebook by k-means on these DT features")
        ->check(CLI::ExistingFile);
    vw->add_option("--k", va->k, "Visual words")->capture_default_str()->check(CLI::PositiveNumber);
    vw->add_option("--seed", va->seed, "k-means seed")->capture_default_str();
    vw->add_option("--iterations", va->iterations, "Maximum Lloyd iterations")->capture_default_str();
    vw->add_option("--dt", va->dt, "DT features to quantize")->check(CLI::ExistingFile);
    vw->add_option("--lsda", va->lsda, "Detector scores, CSV snippet_id,class,score")->check(CLI::ExistingFile);
    vw->add_option("--places", va->places, "Scene scores, CSV snippet_id,class,score")->check(CLI::ExistingFile);
    vw->add_option("--out", va->out, "Output file (default stdout)");
    vw->callback([&ctx, va] {
        if (va->fit_from.empty() && !std::filesystem::exists(va->codebook))
            throw UsageError("--codebook " + va->codebook + " does not exist; pass --fit-from to create it");
        run_vwords(ctx, *va);
    });

    auto fa = std::make_shared<CrfFitArgs>();
    auto *cf = app.add_subcommand("crf-fit", "Pairwise CRF potentials from training SR tuples");
    cf->add_option("--sr", fa->sr, "Training SR records")->required()->check(CLI::ExistingFile);
    cf->add_option("--vocab", fa->vocab, "Vocabulary from build-vocab")->required()->check(CLI::ExistingFile);
    cf->add_option("--alpha", fa->alpha, "Additive smoothing")->capture_default_str()->check(CLI::PositiveNumber);
    cf->add_option("--out", fa->out, "Potentials JSON")->required();
    cf->callback([&ctx, fa] { run_crf_fit(ctx, *fa); });

    auto ma = std::make_shared<CrfMapArgs>();
    auto *cm = app.add_subcommand("crf-map", "Most likely (verb, object, location) per snippet");
    cm->add_option("--potentials", ma->potentials, "From crf-fit")->required()->check(CLI::ExistingFile);
    cm->add_option("--unaries", ma->unaries, "Unary CSV files; repeated files are summed")
        ->required()
        ->check(CLI::ExistingFile);
    cm->add_option("--unary-weight", ma->unary_weight, "Weight of the unary terms")->capture_default_str();
    cm->add_option("--pairwise-weight", ma->pairwise_weight, "Weight of the pairwise terms")->capture_default_str();
    cm->add_option("--top-k", ma->top_k, "Keep the k best labels per node")->check(CLI::PositiveNumber);
    cm->add_option("--out", ma->out, "Output file (default stdout)");
    cm->callback([&ctx, ma] { run_crf_map(ctx, *ma); });

    auto ga = std::make_shared<GenArgs>();
    auto *gn = app.add_subcommand("gen", "Sentences for SR tuples from a template bank");
    gn->add_option("--train-sr", ga->train_sr, "Training SR records")->required()->check(CLI::ExistingFile);
    gn->add_option("--sentences", ga->sentences, "Training sentences by id (default: the records' own)")
        ->check(CLI::ExistingFile);
    gn->add_option("--tuples", ga->tuples, "Tuples to realize (crf-map or vwords output)")
        ->required()
        ->check(CLI::ExistingFile);
    gn->add_option("--subject", ga->subject, "Subject for tuples without one; empty keeps them subjectless")
        ->capture_default_str();
    gn->add_option("--out", ga->out, "Output file (default stdout)");
    gn->callback([&ctx, ga] { run_gen(ctx, *ga); });

    auto sa = std::make_shared<SmtArgs>();
    auto *sm = app.add_subcommand("export-smt", "Parallel SR/sentence corpus for an external translator");
    sm->add_option("--sr", sa->sr, "SR records")->required()->check(CLI::ExistingFile);
    sm->add_option("--sentences", sa->sentences, "Sentences by id (default: the records' own)")
        ->check(CLI::ExistingFile);
    sm->add_option("--out-src", sa->out_src, "Source side")->required();
    sm->add_option("--out-tgt", sa->out_tgt, "Target side")->required();
    sm->add_option("--out-layout", sa->out_layout, "Slot layout per line");
    sm->callback([&ctx, sa] {
        const auto pairs = training_pairs(sa->sr, sa->sentences);
        export_smt_parallel(pairs, sa->out_src, sa->out_tgt,
                            sa->out_layout.empty() ? std::nullopt : std::optional<std::filesystem::path>(sa->out_layout));
        ctx.err << "export-smt: " << pairs.size() << " pairs\n";
    });
}

} // namespace moviedesc::cli
