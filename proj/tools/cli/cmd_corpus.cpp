#include "common.hpp"
#include "server.hpp"

#include "moviedesc/corpus/anonymize.hpp"
#include "moviedesc/corpus/curation.hpp"
#include "moviedesc/corpus/pairing.hpp"
#include "moviedesc/corpus/persistence.hpp"
#include "moviedesc/corpus/stats.hpp"
#include "moviedesc/error.hpp"
#include "moviedesc/signal/audio.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdio>

namespace moviedesc::cli {
namespace {

corpus::CorpusProject load_or_new(const std::filesystem::path &path) {
    if (std::filesystem::exists(path))
        return corpus::load_project(path);
    return {};
}

std::string snippet_id(const std::string &movie, corpus::Source source, std::size_t n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04zu", n);
    return movie + "_" + std::string(corpus::to_string(source)) + "_" + buf;
}

struct ImportArgs {
    std::string project;
    std::string movie;
    std::string title;
    std::optional<double> duration_s;
    std::string dvs;
    std::string dvs_sentences;
    std::string script;
    std::vector<std::string> media;
};

/// Adds or replaces one snippet; locked snippets are left as they are.
bool upsert(corpus::CorpusProject &project, corpus::Snippet s) {
    if (const auto *old = project.find_snippet(s.id)) {
        if (old->locked)
            return false;
        s.tag = old->tag;
        project.replace_snippet(std::move(s));
        return true;
    }
    project.add_snippet(std::move(s));
    return true;
}

void run_import(Context &ctx, const ImportArgs &a) {
    if (a.dvs.empty() != a.dvs_sentences.empty())
        throw UsageError("--dvs and --dvs-sentences go together");
    const auto path = resolve_project(a.project);
    auto project = load_or_new(path);

    corpus::MovieInfo info;
    if (const auto *old = project.find_movie(a.movie))
        info = *old;
    if (!a.title.empty())
        info.title = a.title;
    if (info.title.empty())
        info.title = a.movie;
    for (const auto &m : a.media) {
        const auto eq = m.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == m.size())
            throw UsageError("--media takes role=path, got '" + m + "'");
        info.media[m.substr(0, eq)] = m.substr(eq + 1);
    }
    if (a.duration_s)
        info.duration_s = a.duration_s;
    else if (!info.duration_s && info.media.count("original"))
        info.duration_s = signal::read_wav(info.media.at("original")).duration_s();
    project.set_movie(a.movie, info);

    std::size_t added = 0, kept_locked = 0;
    if (!a.dvs.empty()) {
        const auto segments = read_jsonl(a.dvs);
        const auto sentences = read_sentences(a.dvs_sentences);
        if (segments.size() != sentences.size())
            throw Error(a.dvs + ": " + std::to_string(segments.size()) + " intervals but " + a.dvs_sentences +
                        " has " + std::to_string(sentences.size()) + " sentences");
        for (std::size_t i = 0; i < segments.size(); ++i) {
            const auto &[line, j] = segments[i];
            corpus::Snippet s;
            s.id = snippet_id(a.movie, corpus::Source::dvs, i + 1);
            s.movie_id = a.movie;
            s.source = corpus::Source::dvs;
            s.sentence = sentences[i].second;
            try {
                s.interval = {j.at("start_s").get<double>(), j.at("end_s").get<double>()};
                upsert(project, s) ? ++added : ++kept_locked;
            } catch (const nlohmann::json::exception &e) {
                throw Error(a.dvs + ":" + std::to_string(line) + ": " + e.what());
            } catch (const Error &e) {
                throw Error(a.dvs + ":" + std::to_string(line) + ": " + e.what());
            }
        }
    }
    if (!a.script.empty()) {
        std::size_t n = 0;
        for (const auto &[line, j] : read_jsonl(a.script)) {
            corpus::Snippet s;
            s.id = snippet_id(a.movie, corpus::Source::script, ++n);
            s.movie_id = a.movie;
            s.source = corpus::Source::script;
            try {
                s.sentence = j.at("text").get<std::string>();
                s.interval = {j.at("start_s").get<double>(), j.at("end_s").get<double>()};
                if (j.contains("score"))
                    s.score = j.at("score").get<double>();
                upsert(project, s) ? ++added : ++kept_locked;
            } catch (const nlohmann::json::exception &e) {
                throw Error(a.script + ":" + std::to_string(line) + ": " + e.what());
            } catch (const Error &e) {
                throw Error(a.script + ":" + std::to_string(line) + ": " + e.what());
            }
        }
    }
    project.validate();
    corpus::save_project(project, path);
    ctx.err << "import: " << a.movie << ": " << added << " snippets written, " << kept_locked
            << " locked snippets left unchanged; revision " << project.revision() << "\n";
}

struct PairArgs {
    std::string project;
    std::string movie;
    double min_iou = corpus::kDefaultMinIou;
    std::string out;
};

void run_pair(Context &ctx, const PairArgs &a) {
    const auto project = corpus::load_project(resolve_project(a.project));
    std::vector<std::string> movies;
    if (!a.movie.empty())
        movies.push_back(a.movie);
    else
        for (const auto &[id, _] : project.movies())
            movies.push_back(id);
    std::string lines;
    std::size_t n = 0;
    for (const auto &m : movies)
        for (const auto &p : corpus::pair_movie(project, m, a.min_iou)) {
            Json j;
            j["movie"] = m;
            j["dvs_id"] = p.dvs_id;
            j["script_id"] = p.script_id;
            j["iou"] = p.iou;
            lines += j.dump() + "\n";
            ++n;
        }
    ctx.err << "pair: " << n << " pairs at IoU >= " << format_fixed(a.min_iou, 2) << "\n";
    emit(ctx, a.out, lines);
}

struct AnonymizeArgs {
    std::string project;
    std::string in;
    std::string names;
    std::string patterns;
    std::string movie;
    std::string log;
    std::string out;
};

Json replacement_json(const std::string &id, const corpus::Replacement &r) {
    Json j;
    j["snippet_id"] = id;
    j["offset"] = r.offset;
    j["original"] = r.original;
    j["replacement"] = r.replacement;
    return j;
}

void run_anonymize(Context &ctx, const AnonymizeArgs &a) {
    const auto patterns = corpus::PersonPatterns::load(
        a.patterns.empty() ? data_dir() / "anonymize" / "person_patterns.txt" : std::filesystem::path(a.patterns));
    const auto names = a.names.empty() ? corpus::NameLexicon(std::vector<std::string>{})
                                       : corpus::NameLexicon::load(a.names);
    std::string log;
    std::size_t changed = 0;

    if (!a.in.empty()) {
        if (!a.project.empty() || !a.movie.empty())
            throw UsageError("--in rewrites a sentence file; it does not combine with --project or --movie");
        std::string lines;
        for (const auto &[id, sentence] : read_sentences(a.in)) {
            const auto r = corpus::anonymize(sentence, names, patterns);
            changed += r.text != sentence;
            for (const auto &rep : r.replacements)
                log += replacement_json(id, rep).dump() + "\n";
            lines += Json{{"id", id}, {"sentence", r.text}}.dump() + "\n";
        }
        if (!a.log.empty())
            emit(ctx, a.log, log);
        emit(ctx, a.out, lines);
        ctx.err << "anonymize: " << changed << " sentences changed\n";
        return;
    }

    if (!a.out.empty())
        throw UsageError("--out applies to --in; project mode rewrites the project file");
    const auto path = resolve_project(a.project);
    auto project = corpus::load_project(path);
    std::vector<std::string> movies;
    if (!a.movie.empty())
        movies.push_back(a.movie);
    else
        for (const auto &[id, _] : project.movies())
            movies.push_back(id);
    std::vector<corpus::SnippetReplacement> reps;
    for (const auto &m : movies)
        changed += corpus::anonymize_movie(project, m, names, patterns, &reps);
    for (const auto &r : reps)
        log += replacement_json(r.snippet_id, r.replacement).dump() + "\n";
    if (changed)
        corpus::save_project(project, path);
    if (!a.log.empty())
        emit(ctx, a.log, log);
    ctx.err << "anonymize: " << changed << " snippets changed, " << reps.size() << " replacements\n";
}

struct StatsArgs {
    std::string project;
    std::string out;
};

struct ServeArgs {
    std::string project;
    std::string host = "127.0.0.1";
    int port = 8080;
};

void run_serve(Context &ctx, const ServeArgs &a) {
    const auto path = resolve_project(a.project);
    corpus::CurationService service(corpus::load_project(path), path);
    httplib::Server server;
    mount_curation_routes(server, service);
    if (!server.bind_to_port(a.host, a.port))
        throw Error("cannot listen on " + a.host + ":" + std::to_string(a.port));
    ctx.err << "serve: " << path.string() << " at http://" << a.host << ":" << a.port << " (revision "
            << service.revision() << ")\n";
    server.listen_after_bind();
}

} // namespace

void add_corpus_commands(CLI::App &app, Context &ctx) {
    const auto project_help = std::string("Project file (default $") + kProjectDirEnv + "/project.jsonl)";

    auto ia = std::make_shared<ImportArgs>();
    auto *im = app.add_subcommand("import", "Add a movie's DVS intervals and aligned script sentences to a project");
    im->add_option("--project", ia->project, project_help);
    im->add_option("--movie", ia->movie, "Movie id")->required();
    im->add_option("--title", ia->title, "Display title (default: the id)");
    im->add_option("--duration", ia->duration_s, "Movie length in seconds (default: from media original)")
        ->check(CLI::PositiveNumber);
    im->add_option("--dvs", ia->dvs, "Intervals from segment")->check(CLI::ExistingFile);
    im->add_option("--dvs-sentences", ia->dvs_sentences, "Transcribed narration, one per interval, in order")
        ->check(CLI::ExistingFile);
    im->add_option("--script", ia->script, "Sentences from align-script")->check(CLI::ExistingFile);
    im->add_option("--media", ia->media, "role=path, e.g. curve=c.json or mixed=m.wav");
    im->callback([&ctx, ia] { run_import(ctx, *ia); });

    auto pa = std::make_shared<PairArgs>();
    auto *pr = app.add_subcommand("pair", "Pair DVS and script snippets by interval overlap");
    pr->add_option("--project", pa->project, project_help);
    pr->add_option("--movie", pa->movie, "Restrict to one movie");
    pr->add_option("--min-iou", pa->min_iou, "Minimum intersection over union")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    pr->add_option("--out", pa->out, "Output file (default stdout)");
    pr->callback([&ctx, pa] { run_pair(ctx, *pa); });

    auto aa = std::make_shared<AnonymizeArgs>();
    auto *an = app.add_subcommand("anonymize", "Replace character names and person descriptions");
    an->add_option("--project", aa->project, project_help);
    an->add_option("--in", aa->in, "Rewrite a sentence file instead of a project")->check(CLI::ExistingFile);
    an->add_option("--names", aa->names, "Character names, one per line")->check(CLI::ExistingFile);
    an->add_option("--patterns", aa->patterns, "Person pattern file (default: bundled)")->check(CLI::ExistingFile);
    an->add_option("--movie", aa->movie, "Restrict to one movie");
    an->add_option("--log", aa->log, "Write the replacement log as JSON lines");
    an->add_option("--out", aa->out, "Output for --in (default stdout)");
    an->callback([&ctx, aa] { run_anonymize(ctx, *aa); });

    auto sa = std::make_shared<StatsArgs>();
    auto *st = app.add_subcommand("stats", "Corpus statistics per source");
    st->add_option("--project", sa->project, project_help);
    st->add_option("--out", sa->out, "Output file (default stdout)");
    st->callback([&ctx, sa] {
        const auto project = corpus::load_project(resolve_project(sa->project));
        emit(ctx, sa->out, corpus::format_stats_table(corpus::compute_stats(project)));
    });

    auto va = std::make_shared<ServeArgs>();
    auto *sv = app.add_subcommand("serve", "Serve the curation API for a project");
    sv->add_option("--project", va->project, project_help);
    sv->add_option("--host", va->host, "Bind address")->capture_default_str();
    sv->add_option("--port", va->port, "Port")->capture_default_str()->check(CLI::Range(1, 65535));
    sv->callback([&ctx, va] { run_serve(ctx, *va); });
}

} // namespace moviedesc::cli
