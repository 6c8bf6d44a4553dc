#include "common.hpp"

#include "moviedesc/error.hpp"
#include "moviedesc/eval/bleu.hpp"
#include "moviedesc/eval/ranking.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <set>

namespace moviedesc::cli {
namespace {

struct BleuArgs {
    std::string pairs;
    std::string candidates;
    std::vector<std::string> references;
    bool smooth = false;
    bool report = false;
    std::string out;
};

std::vector<eval::EvalPair> joined_pairs(const BleuArgs &a) {
    std::map<std::string, std::vector<std::vector<std::string>>> refs;
    for (const auto &path : a.references)
        for (const auto &[id, s] : read_sentences(path))
            refs[id].push_back(eval::eval_tokens(s));
    std::vector<eval::EvalPair> pairs;
    for (const auto &[id, s] : read_sentences(a.candidates)) {
        const auto it = refs.find(id);
        if (it == refs.end())
            throw Error(a.candidates + ": no reference for snippet '" + id + "'");
        pairs.push_back({id, eval::eval_tokens(s), it->second});
    }
    return pairs;
}

void run_bleu(Context &ctx, const BleuArgs &a) {
    if (a.pairs.empty() == a.candidates.empty())
        throw UsageError("pass either --pairs or --candidates with --references");
    if (!a.candidates.empty() && a.references.empty())
        throw UsageError("--candidates needs --references");
    const auto pairs = a.pairs.empty() ? joined_pairs(a) : eval::read_eval_pairs(a.pairs);
    if (pairs.empty())
        throw Error("no evaluation pairs");
    const auto r = eval::bleu4_report(pairs, {a.smooth ? eval::BleuSmoothing::add_one : eval::BleuSmoothing::none});
    if (a.report) {
        ctx.err << "bleu: " << pairs.size() << " pairs, c=" << r.candidate_length << " r=" << r.reference_length
                << " bp=" << format_fixed(r.brevity_penalty, 4);
        for (std::size_t n = 0; n < eval::kBleuOrder; ++n)
            ctx.err << " p" << n + 1 << "=" << r.matches[n] << "/" << r.totals[n];
        ctx.err << "\n";
    }
    emit(ctx, a.out, format_fixed(r.score, 2) + "\n");
}

struct RankExportArgs {
    std::vector<std::string> methods;
    std::string snippets;
    std::uint64_t seed = 42;
    std::vector<std::string> criteria = eval::kDefaultCriteria;
    std::string out;
};

void run_rank_export(Context &ctx, const RankExportArgs &a) {
    std::map<std::string, std::map<std::string, std::string>> sentences;
    std::vector<std::string> ids;
    for (const auto &m : a.methods) {
        const auto eq = m.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == m.size())
            throw UsageError("--method takes name=path, got '" + m + "'");
        const auto name = m.substr(0, eq);
        if (sentences.count(name))
            throw UsageError("method '" + name + "' given twice");
        const bool first = sentences.empty();
        auto &per = sentences[name];
        for (auto &[id, s] : read_sentences(m.substr(eq + 1)))
            if (per.emplace(id, std::move(s)).second && first)
                ids.push_back(id);
    }
    if (!a.snippets.empty()) {
        ids.clear();
        std::ifstream in(a.snippets);
        for (std::string line; std::getline(in, line);) {
            const auto b = line.find_first_not_of(" \t\r");
            if (b != std::string::npos)
                ids.push_back(line.substr(b, line.find_last_not_of(" \t\r") - b + 1));
        }
    }
    const auto set = eval::export_ranking_tasks(ids, sentences, a.seed, a.criteria);
    ctx.err << "rank-export: " << set.tasks.size() << " tasks x " << set.methods.size() << " candidates, seed "
            << set.seed << "\n";
    emit(ctx, a.out, eval::serialize_ranking_tasks(set));
}

struct RankImportArgs {
    std::string tasks;
    std::string responses;
    std::string layout = "comparison";
    std::string records_out;
    std::string out;
};

void run_rank_import(Context &ctx, const RankImportArgs &a) {
    const auto set = eval::read_ranking_tasks(a.tasks);
    const auto records = eval::import_rankings(set, std::filesystem::path(a.responses));
    if (records.empty())
        throw Error(a.responses + ": no responses");
    const auto columns = eval::mean_ranks_by_criterion(records);
    eval::RankingLayout layout;
    if (a.layout == "comparison") {
        layout = eval::comparison_layout();
    } else {
        eval::MethodBlock block;
        for (const auto &m : set.methods)
            block.rows.emplace_back(m, m);
        layout.push_back(block);
    }
    if (!a.records_out.empty()) {
        std::string lines;
        for (const auto &r : records) {
            Json j;
            j["snippet_id"] = r.snippet_id;
            j["criterion"] = r.criterion;
            j["ranks"] = r.ranks;
            lines += j.dump() + "\n";
        }
        emit(ctx, a.records_out, lines);
    }
    ctx.err << "rank-import: " << records.size() << " rankings over " << set.tasks.size() << " tasks\n";
    emit(ctx, a.out, eval::format_ranking_table(layout, columns));
}

} // namespace

void add_eval_commands(CLI::App &app, Context &ctx) {
    auto ba = std::make_shared<BleuArgs>();
    auto *bl = app.add_subcommand("bleu", "Corpus-level BLEU@4 as a percentage");
    bl->add_option("--pairs", ba->pairs, "CSV or JSON lines with snippet_id, candidate, references")
        ->check(CLI::ExistingFile);
    bl->add_option("--candidates", ba->candidates, "Generated sentences by snippet id")->check(CLI::ExistingFile);
    bl->add_option("--references", ba->references, "Reference sentences by snippet id; repeatable")
        ->check(CLI::ExistingFile);
    bl->add_flag("--smooth", ba->smooth, "Add-one smoothing for 2- to 4-gram precisions");
    bl->add_flag("--report", ba->report, "Print n-gram statistics to stderr");
    bl->add_option("--out", ba->out, "Output file (default stdout)");
    bl->callback([&ctx, ba] { run_bleu(ctx, *ba); });

    auto ea = std::make_shared<RankExportArgs>();
    auto *re = app.add_subcommand("rank-export", "Blinded ranking tasks for human judges");
    re->add_option("--method", ea->methods, "name=path to sentences by snippet id; repeat per method")->required();
    re->add_option("--snippets", ea->snippets, "Snippet ids to include, one per line (default: the first method's)")
        ->check(CLI::ExistingFile);
    re->add_option("--seed", ea->seed, "Blinding seed")->capture_default_str();
    re->add_option("--criteria", ea->criteria, "Ranking criteria")->capture_default_str();
    re->add_option("--out", ea->out, "Output file (default stdout)");
    re->callback([&ctx, ea] { run_rank_export(ctx, *ea); });

    auto ia = std::make_shared<RankImportArgs>();
    auto *ri = app.add_subcommand("rank-import", "Unblind judge responses and report mean ranks");
    ri->add_option("--tasks", ia->tasks, "Task file from rank-export")->required()->check(CLI::ExistingFile);
    ri->add_option("--responses", ia->responses, "Judge responses, JSON lines")->required()->check(CLI::ExistingFile);
    ri->add_option("--layout", ia->layout, "Row layout of the table")
        ->check(CLI::IsMember({"comparison", "plain"}))
        ->capture_default_str();
    ri->add_option("--records-out", ia->records_out, "Also write unblinded records as JSON lines");
    ri->add_option("--out", ia->out, "Output file (default stdout)");
    ri->callback([&ctx, ia] { run_rank_import(ctx, *ia); });
}

} // namespace moviedesc::cli
