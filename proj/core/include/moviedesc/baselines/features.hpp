#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace moviedesc::baselines {

/// One descriptor of a snippet, e.g. DT, LSDA, PLACES or HYBRID.
struct FeatureVector {
    std::string feature_name;
    std::vector<double> values;

    std::size_t dim() const { return values.size(); }

    friend bool operator==(const FeatureVector &, const FeatureVector &) = default;
};

/// Scales to unit L1 norm. Throws Error("unnormalizable") for an all-zero
/// vector.
FeatureVector l1_normalize(const FeatureVector &v);

/// 1 - sum_i min(a_i, b_i). On L1-normalized non-negative inputs this equals
/// half the L1 distance. Throws on a dimension mismatch.
double intersection_distance(const FeatureVector &a, const FeatureVector &b);

struct FeatureRecord {
    std::string snippet_id;
    FeatureVector vector;

    friend bool operator==(const FeatureRecord &, const FeatureRecord &) = default;
};

enum class FeatureFileFormat { binary, csv };

/// Binary: "MDFV", u32 version, u32-length-prefixed feature name, u32 dim,
/// then per record a u32-length-prefixed snippet id and dim f64 values; all
/// little-endian. CSV: "snippet_id,feature_name,v0,v1,..." per line, with an
/// optional header line starting with "snippet_id". All records in a file
/// share one feature name and dimension.
void write_features(const std::filesystem::path &path, const std::vector<FeatureRecord> &records,
                    FeatureFileFormat format = FeatureFileFormat::binary);

/// Detects the format from the magic bytes. Errors name the file and the
/// failing record.
std::vector<FeatureRecord> read_features(const std::filesystem::path &path);

} // namespace moviedesc::baselines
