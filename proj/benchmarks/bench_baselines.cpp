#include "moviedesc/baselines/crf.hpp"
#include "moviedesc/baselines/features.hpp"
#include "moviedesc/baselines/kmeans.hpp"
#include "moviedesc/rng.hpp"

#include <benchmark/benchmark.h>

using namespace moviedesc;
using namespace moviedesc::baselines;

namespace {

std::vector<std::string> labels(char prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(std::string(1, prefix) + std::to_string(i));
    return out;
}

// Label counts of the order the coarse vocabularies reach.
void BM_CrfMap(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto v = labels('v', n), o = labels('o', n), l = labels('l', n / 2);
    Rng rng(1);
    PairwisePotentials pot(v, o, l, 1.0, semantic::LabelMode::sense);
    for (int i = 0; i < 5000; ++i)
        pot.count(rng.index(v.size()), rng.index(o.size()), rng.index(l.size()));
    pot.finalize();
    UnaryScores u;
    for (const auto &x : v)
        u.verb[x] = rng.gaussian();
    for (const auto &x : o)
        u.object[x] = rng.gaussian();
    for (const auto &x : l)
        u.location[x] = rng.gaussian();
    for (auto _ : state)
        benchmark::DoNotOptimize(crf_map(u, pot));
}
BENCHMARK(BM_CrfMap)->Arg(20)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_NearestNeighborScan(benchmark::State &state) {
    Rng rng(2);
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<FeatureVector> train(n, {"dt", std::vector<double>(4000)});
    for (auto &f : train) {
        for (auto &x : f.values)
            x = rng.uniform();
        f = l1_normalize(f);
    }
    const auto q = train[n / 2];
    for (auto _ : state) {
        double best = 2.0;
        for (const auto &f : train)
            best = std::min(best, intersection_distance(q, f));
        benchmark::DoNotOptimize(best);
    }
}
BENCHMARK(BM_NearestNeighborScan)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_KMeans(benchmark::State &state) {
    Rng rng(3);
    std::vector<FeatureVector> data(2000, {"dt", std::vector<double>(32)});
    for (auto &f : data)
        for (auto &x : f.values)
            x = rng.gaussian();
    const KMeansOptions options{static_cast<std::size_t>(state.range(0)), kDefaultSeed, 20};
    for (auto _ : state)
        benchmark::DoNotOptimize(kmeans_fit(data, options));
}
BENCHMARK(BM_KMeans)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);

} // namespace
