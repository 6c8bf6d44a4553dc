#pragma once

#include "moviedesc/baselines/features.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace moviedesc::baselines {

inline constexpr std::size_t kDefaultVisualWords = 300;
inline constexpr std::size_t kDefaultKMeansIterations = 100;
inline constexpr std::uint64_t kDefaultSeed = 42;

struct VisualWordCodebook {
    std::vector<std::vector<double>> centroids;
    std::uint64_t seed = kDefaultSeed;

    std::size_t k() const { return centroids.size(); }
    std::size_t dim() const { return centroids.empty() ? 0 : centroids.front().size(); }

    friend bool operator==(const VisualWordCodebook &, const VisualWordCodebook &) = default;
};

struct KMeansOptions {
    std::size_t k = kDefaultVisualWords;
    std::uint64_t seed = kDefaultSeed;
    std::size_t max_iterations = kDefaultKMeansIterations;
};

struct KMeansResult {
    VisualWordCodebook codebook;
    /// Sum of squared distances after each assignment step; non-increasing.
    std::vector<double> objective;
    std::size_t iterations = 0;
    bool converged = false; ///< assignments stopped changing
};

/// Lloyd iterations from a seeded farthest-point start: the first centroid
/// is a seeded random vector, each next one the vector farthest from those
/// chosen (ties to the lowest index). Empty clusters keep their centroid.
/// Throws when there are fewer vectors than k or dimensions differ.
KMeansResult kmeans_fit(const std::vector<FeatureVector> &vectors, const KMeansOptions &options = {});

/// Nearest centroid by Euclidean distance; ties to the lowest index.
std::size_t kmeans_assign(const VisualWordCodebook &codebook, const FeatureVector &v);

/// JSON {"seed", "centroids": [[...], ...]}.
void save_codebook(const VisualWordCodebook &codebook, const std::filesystem::path &path);
VisualWordCodebook load_codebook(const std::filesystem::path &path);

} // namespace moviedesc::baselines
