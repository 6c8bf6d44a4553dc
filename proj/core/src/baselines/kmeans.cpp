#include "moviedesc/baselines/kmeans.hpp"

#include "moviedesc/error.hpp"
#include "moviedesc/rng.hpp"
#include "util/io.hpp"

#include <nlohmann/json.hpp>

#include <limits>

namespace moviedesc::baselines {
namespace {

double squared_distance(const std::vector<double> &a, const std::vector<double> &b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

std::size_t nearest(const std::vector<std::vector<double>> &centroids, const std::vector<double> &v,
                    double *distance = nullptr) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        const double d = squared_distance(centroids[c], v);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    if (distance)
        *distance = best_d;
    return best;
}

} // namespace

KMeansResult kmeans_fit(const std::vector<FeatureVector> &vectors, const KMeansOptions &options) {
    const std::size_t n = vectors.size();
    const std::size_t k = options.k;
    if (k == 0)
        throw Error("kmeans: k must be at least 1");
    if (n < k)
        throw Error("kmeans: " + std::to_string(n) + " vectors for k = " + std::to_string(k));
    const std::size_t dim = vectors.front().dim();
    for (std::size_t i = 0; i < n; ++i)
        if (vectors[i].dim() != dim)
            throw Error("kmeans: vector " + std::to_string(i) + " has dimension " + std::to_string(vectors[i].dim()) +
                        ", expected " + std::to_string(dim));

    KMeansResult result;
    auto &centroids = result.codebook.centroids;
    result.codebook.seed = options.seed;

    Rng rng(options.seed);
    std::vector<double> min_d(n, std::numeric_limits<double>::infinity());
    std::size_t next = rng.index(n);
    for (std::size_t c = 0; c < k; ++c) {
        centroids.push_back(vectors[next].values);
        double far = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            min_d[i] = std::min(min_d[i], squared_distance(vectors[i].values, centroids.back()));
            if (min_d[i] > far) {
                far = min_d[i];
                next = i;
            }
        }
    }

    std::vector<std::size_t> assignment(n, k);
    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        bool changed = false;
        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = 0.0;
            const auto c = nearest(centroids, vectors[i].values, &d);
            objective += d;
            changed = changed || c != assignment[i];
            assignment[i] = c;
        }
        result.objective.push_back(objective);
        result.iterations = iter + 1;
        if (!changed) {
            result.converged = true;
            break;
        }
        std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto &s = sums[assignment[i]];
            for (std::size_t j = 0; j < dim; ++j)
                s[j] += vectors[i].values[j];
            ++counts[assignment[i]];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0)
                continue;
            for (std::size_t j = 0; j < dim; ++j)
                centroids[c][j] = sums[c][j] / static_cast<double>(counts[c]);
        }
    }
    return result;
}

std::size_t kmeans_assign(const VisualWordCodebook &codebook, const FeatureVector &v) {
    if (codebook.k() == 0)
        throw Error("kmeans_assign: empty codebook");
    if (v.dim() != codebook.dim())
        throw Error("kmeans_assign: dimension " + std::to_string(v.dim()) + " vs codebook " +
                    std::to_string(codebook.dim()));
    return nearest(codebook.centroids, v.values);
}

void save_codebook(const VisualWordCodebook &codebook, const std::filesystem::path &path) {
    nlohmann::ordered_json j;
    j["seed"] = codebook.seed;
    j["centroids"] = codebook.centroids;
    util::write_file_atomic(path, j.dump() + "\n");
}

VisualWordCodebook load_codebook(const std::filesystem::path &path) {
    try {
        const auto j = nlohmann::json::parse(util::read_file(path));
        VisualWordCodebook cb;
        cb.seed = j.at("seed").get<std::uint64_t>();
        cb.centroids = j.at("centroids").get<std::vector<std::vector<double>>>();
        if (cb.centroids.empty())
            throw Error(path.string() + ": empty codebook");
        for (const auto &c : cb.centroids)
            if (c.size() != cb.dim())
                throw Error(path.string() + ": centroids differ in dimension");
        return cb;
    } catch (const nlohmann::json::exception &e) {
        throw Error(path.string() + ": " + e.what());
    }
}

} // namespace moviedesc::baselines
