#include "moviedesc/baselines/features.hpp"

#include "moviedesc/error.hpp"
#include "util/io.hpp"
#include "util/text.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>

namespace moviedesc::baselines {
namespace {

constexpr std::string_view kMagic = "MDFV";
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string &out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string &out, double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_str(std::string &out, std::string_view s) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.append(s);
}

class Reader {
  public:
    Reader(std::string_view data, std::string source) : data_(data), source_(std::move(source)) {}

    bool done() const { return pos_ == data_.size(); }

    std::uint64_t uint(int bytes, const char *what) {
        need(static_cast<std::size_t>(bytes), what);
        std::uint64_t v = 0;
        for (int i = 0; i < bytes; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += static_cast<std::size_t>(bytes);
        return v;
    }
    std::string str(const char *what) {
        const auto n = static_cast<std::size_t>(uint(4, what));
        need(n, what);
        std::string s(data_.substr(pos_, n));
        pos_ += n;
        return s;
    }
    void fail(const std::string &msg) const { throw Error(source_ + ": " + msg); }

  private:
    void need(std::size_t n, const char *what) const {
        if (data_.size() - pos_ < n)
            fail(std::string("truncated ") + what);
    }

    std::string_view data_;
    std::string source_;
    std::size_t pos_ = 0;
};

void check_consistent(const std::vector<FeatureRecord> &records, const std::string &where) {
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto &r = records[i];
        if (r.vector.feature_name != records.front().vector.feature_name ||
            r.vector.dim() != records.front().vector.dim())
            throw Error(where + ": record " + r.snippet_id + " differs in feature name or dimension");
        for (const double x : r.vector.values)
            if (!std::isfinite(x))
                throw Error(where + ": record " + r.snippet_id + " has a non-finite value");
    }
}

std::vector<FeatureRecord> read_binary(std::string_view data, const std::string &source) {
    Reader in(data.substr(kMagic.size()), source);
    if (const auto v = in.uint(4, "version"); v != kVersion)
        in.fail("unsupported feature file version " + std::to_string(v));
    const auto name = in.str("feature name");
    const auto dim = static_cast<std::size_t>(in.uint(4, "dimension"));
    std::vector<FeatureRecord> out;
    while (!in.done()) {
        FeatureRecord r;
        r.snippet_id = in.str("snippet id");
        r.vector.feature_name = name;
        r.vector.values.resize(dim);
        for (auto &x : r.vector.values)
            x = std::bit_cast<double>(in.uint(8, ("values of " + r.snippet_id).c_str()));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<FeatureRecord> read_csv(std::string_view data, const std::string &source) {
    std::vector<FeatureRecord> out;
    std::size_t n = 0;
    for (const auto line : util::split_lines(data)) {
        ++n;
        if (util::trim(line).empty() || (n == 1 && line.starts_with("snippet_id")))
            continue;
        const auto where = source + ":" + std::to_string(n);
        const auto cells = util::split(line, ',');
        if (cells.size() < 3 || cells[0].empty())
            throw Error(where + ": expected snippet_id,feature_name,values...");
        FeatureRecord r;
        r.snippet_id = std::string(cells[0]);
        r.vector.feature_name = std::string(cells[1]);
        for (std::size_t i = 2; i < cells.size(); ++i) {
            double x = 0.0;
            const auto cell = cells[i];
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
            if (ec != std::errc() || ptr != cell.data() + cell.size())
                throw Error(where + ": bad value '" + std::string(cell) + "' in record " + r.snippet_id);
            r.vector.values.push_back(x);
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

FeatureVector l1_normalize(const FeatureVector &v) {
    double norm = 0.0;
    for (const double x : v.values)
        norm += std::abs(x);
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw Error("unnormalizable");
    FeatureVector out = v;
    for (auto &x : out.values)
        x /= norm;
    return out;
}

double intersection_distance(const FeatureVector &a, const FeatureVector &b) {
    if (a.dim() != b.dim())
        throw Error("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    double inter = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        inter += std::min(a.values[i], b.values[i]);
    return 1.0 - inter;
}

void write_features(const std::filesystem::path &path, const std::vector<FeatureRecord> &records,
                    FeatureFileFormat format) {
    if (records.empty())
        throw Error(path.string() + ": no feature records to write");
    check_consistent(records, path.string());
    std::string out;
    if (format == FeatureFileFormat::binary) {
        out.append(kMagic);
        put_u32(out, kVersion);
        put_str(out, records.front().vector.feature_name);
        put_u32(out, static_cast<std::uint32_t>(records.front().vector.dim()));
        for (const auto &r : records) {
            put_str(out, r.snippet_id);
            for (const double x : r.vector.values)
                put_f64(out, x);
        }
    } else {
        out = "snippet_id,feature_name,values\n";
        char buf[32];
        for (const auto &r : records) {
            out += r.snippet_id + "," + r.vector.feature_name;
            for (const double x : r.vector.values) {
                const auto res = std::to_chars(buf, buf + sizeof buf, x);
                out += ',';
                out.append(buf, res.ptr);
            }
            out += '\n';
        }
    }
    util::write_file_atomic(path, out);
}

std::vector<FeatureRecord> read_features(const std::filesystem::path &path) {
    const auto data = util::read_file(path);
    auto records = data.starts_with(kMagic) ? read_binary(data, path.string()) : read_csv(data, path.string());
    if (records.empty())
        throw Error(path.string() + ": no feature records");
    check_consistent(records, path.string());
    return records;
}

} // namespace moviedesc::baselines
