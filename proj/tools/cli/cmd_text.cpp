#include "common.hpp"

#include "moviedesc/align/alignment.hpp"
#include "moviedesc/error.hpp"
#include "moviedesc/semantic/parser.hpp"
#include "moviedesc/semantic/tagger.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace moviedesc::cli {
namespace {

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct AlignArgs {
    std::string script;
    std::string srt;
    std::string movie;
    double min_score = align::kDefaultMinScore;
    int window = align::kDefaultDialogueWindow;
    bool keep_all = false;
    std::string dialect = "auto";
    std::string out;
};

void run_align(Context &ctx, const AlignArgs &a) {
    align::AlignOptions options;
    options.min_score = a.min_score;
    options.window = a.window;
    options.keep_all = a.keep_all;
    options.format.dialect = a.dialect == "indented" ? align::ScriptDialect::indented
                             : a.dialect == "flat"   ? align::ScriptDialect::flat
                                                     : align::ScriptDialect::automatic;
    const auto sentences = align::align_script(slurp(a.script), slurp(a.srt), options);
    std::string lines;
    std::size_t low = 0;
    for (const auto &s : sentences) {
        Json j;
        j["text"] = s.text;
        j["start_s"] = s.interval.start_s;
        j["end_s"] = s.interval.end_s;
        j["score"] = s.score;
        j["movie_id"] = a.movie;
        j["low_confidence"] = s.low_confidence;
        low += s.low_confidence;
        lines += j.dump() + "\n";
    }
    ctx.err << "align-script: " << sentences.size() << " sentences" << (a.keep_all ? "" : " at or above score ")
            << (a.keep_all ? "" : format_fixed(a.min_score, 2)) << ", " << low << " timed by fallback\n";
    emit(ctx, a.out, lines);
}

struct ParseArgs {
    std::string in;
    std::string lexicon;
    std::string mode = "sense";
    std::string wsd = "overlap";
    std::string out;
};

void run_parse(Context &ctx, const ParseArgs &a) {
    const auto mode = semantic::parse_label_mode(a.mode);
    const auto lexicon = semantic::Lexicon::load(a.lexicon.empty() ? (data_dir() / "lexicon").string() : a.lexicon);
    const semantic::LexiconTagger tagger(lexicon);
    const semantic::MostFrequentSense mfs;
    const semantic::ContextOverlap overlap;
    const semantic::Disambiguator &wsd = a.wsd == "mfs" ? static_cast<const semantic::Disambiguator &>(mfs) : overlap;
    const semantic::SemanticParser parser(lexicon, tagger, wsd);

    std::string lines;
    std::size_t clauses = 0, with_verb = 0;
    for (const auto &[id, sentence] : read_sentences(a.in)) {
        const auto analyses = parser.parse(sentence);
        for (std::size_t i = 0; i < analyses.size(); ++i) {
            lines += semantic::sr_record_json(id, i, analyses[i], mode, lexicon) + "\n";
            ++clauses;
            with_verb += analyses[i].tuple(mode, lexicon).has_value();
        }
    }
    ctx.err << "parse-sr: " << clauses << " clauses, " << with_verb << " with a verb\n";
    emit(ctx, a.out, lines);
}

struct VocabArgs {
    std::string sr;
    std::size_t min_count = semantic::kMinCountFine;
    std::vector<std::string> slots{"verb", "object", "location"};
    std::string out;
};

void run_vocab(Context &ctx, const VocabArgs &a) {
    const auto records = read_sr_records(a.sr);
    std::vector<semantic::SRTuple> tuples;
    for (const auto &r : records)
        tuples.push_back(r.tuple);
    Json j;
    j["min_count"] = a.min_count;
    j["mode"] = tuples.empty() ? "sense" : std::string(semantic::to_string(tuples.front().mode));
    j["slots"] = Json::object();
    for (const auto &name : a.slots) {
        const auto slot = semantic::parse_sr_slot(name);
        const auto vocab = semantic::extract_label_vocab(tuples, slot, a.min_count);
        j["slots"][name] = vocab.counts;
        ctx.err << "build-vocab: " << name << " " << vocab.counts.size() << " labels with count >= " << a.min_count
                << "\n";
    }
    emit(ctx, a.out, j.dump(2) + "\n");
}

} // namespace

void add_text_commands(CLI::App &app, Context &ctx) {
    auto aa = std::make_shared<AlignArgs>();
    auto *al = app.add_subcommand("align-script", "Time script descriptions through subtitle-aligned dialogue");
    al->add_option("--script", aa->script, "Plain-text script")->required()->check(CLI::ExistingFile);
    al->add_option("--srt", aa->srt, "Subtitle file")->required()->check(CLI::ExistingFile);
    al->add_option("--movie", aa->movie, "Movie id recorded on each sentence");
    al->add_option("--min-score", aa->min_score, "Minimum alignment score")->capture_default_str()->check(
        CLI::Range(0.0, 1.0));
    al->add_option("--window", aa->window, "Dialogue blocks on each side")->capture_default_str()->check(
        CLI::PositiveNumber);
    al->add_flag("--keep-all", aa->keep_all, "Keep sentences below the score cut-off");
    al->add_option("--dialect", aa->dialect, "Script layout")
        ->check(CLI::IsMember({"auto", "indented", "flat"}))
        ->capture_default_str();
    al->add_option("--out", aa->out, "Output file (default stdout)");
    al->callback([&ctx, aa] { run_align(ctx, *aa); });

    auto pa = std::make_shared<ParseArgs>();
    auto *ps = app.add_subcommand("parse-sr", "Parse sentences into (subject, verb, object, location) tuples");
    ps->add_option("--in", pa->in, "Sentences: JSON lines or one per line")->required()->check(CLI::ExistingFile);
    ps->add_option("--lexicon", pa->lexicon, "Lexicon directory (default: bundled)")->check(CLI::ExistingDirectory);
    ps->add_option("--mode", pa->mode, "Label mode")->check(CLI::IsMember({"sense", "text"}))->capture_default_str();
    ps->add_option("--wsd", pa->wsd, "Sense disambiguation")
        ->check(CLI::IsMember({"overlap", "mfs"}))
        ->capture_default_str();
    ps->add_option("--out", pa->out, "Output file (default stdout)");
    ps->callback([&ctx, pa] { run_parse(ctx, *pa); });

    auto va = std::make_shared<VocabArgs>();
    auto *bv = app.add_subcommand("build-vocab", "Label vocabularies from SR records with a count cut-off");
    bv->add_option("--sr", va->sr, "SR records from parse-sr")->required()->check(CLI::ExistingFile);
    bv->add_option("--min-count", va->min_count, "Keep labels seen at least this often")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bv->add_option("--slot", va->slots, "Slots to extract")
        ->check(CLI::IsMember({"subject", "verb", "object", "location"}))
        ->capture_default_str();
    bv->add_option("--out", va->out, "Output file (default stdout)");
    bv->callback([&ctx, va] { run_vocab(ctx, *va); });
}

} // namespace moviedesc::cli
