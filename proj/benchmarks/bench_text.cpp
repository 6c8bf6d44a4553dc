#include "moviedesc/align/alignment.hpp"
#include "moviedesc/eval/bleu.hpp"
#include "moviedesc/rng.hpp"

#include <benchmark/benchmark.h>

using namespace moviedesc;

namespace {

std::vector<std::string> tokens(Rng &rng, std::size_t n, std::size_t vocab) {
    std::vector<std::string> out(n);
    for (auto &t : out)
        t = "w" + std::to_string(rng.index(vocab));
    return out;
}

// Dialogue of a whole script against a whole subtitle file.
void BM_AlignDialogueDp(benchmark::State &state) {
    Rng rng(1);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = tokens(rng, n, 2000), b = tokens(rng, n, 2000);
    for (auto _ : state)
        benchmark::DoNotOptimize(align::align_dialogue_dp(a, b));
}
BENCHMARK(BM_AlignDialogueDp)->Arg(1000)->Arg(5000)->Arg(15000)->Unit(benchmark::kMillisecond);

void BM_Bleu4(benchmark::State &state) {
    Rng rng(2);
    std::vector<eval::EvalPair> pairs(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        pairs[i].snippet_id = std::to_string(i);
        pairs[i].candidate = tokens(rng, 6 + rng.index(10), 300);
        pairs[i].references = {tokens(rng, 6 + rng.index(10), 300)};
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(eval::bleu4(pairs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Bleu4)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace
