#include "moviedesc/error.hpp"
#include "moviedesc/signal/audio.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

namespace moviedesc::signal {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const unsigned char *p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char *p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::string &out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u16(std::string &out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

} // namespace

AudioTrack read_wav(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open WAV file: " + path.string());
    const std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in), {}};
    const auto fail = [&](const std::string &what) {
        return Error(path.string() + ": " + what);
    };
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
        throw fail("not a RIFF/WAVE file");

    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint32_t rate = 0;
    std::uint16_t bits = 0;
    const unsigned char *data = nullptr;
    std::size_t data_size = 0;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const unsigned char *chunk = bytes.data() + pos;
        const std::uint32_t size = read_u32(chunk + 4);
        const std::size_t body = pos + 8;
        const std::size_t avail = std::min<std::size_t>(size, bytes.size() - body);
        if (std::memcmp(chunk, "fmt ", 4) == 0) {
            if (avail < 16)
                throw fail("truncated fmt chunk");
            format = read_u16(chunk + 8);
            channels = read_u16(chunk + 10);
            rate = read_u32(chunk + 12);
            bits = read_u16(chunk + 22);
            if (format == kFormatExtensible && avail >= 26)
                format = read_u16(chunk + 8 + 24);
        } else if (std::memcmp(chunk, "data", 4) == 0) {
            data = chunk + 8;
            data_size = avail;
        }
        pos = body + size + (size & 1U);
    }
    if (channels == 0 || rate == 0)
        throw fail("missing fmt chunk");
    if (data == nullptr)
        throw fail("missing data chunk");

    const bool pcm16 = format == kFormatPcm && bits == 16;
    const bool f32 = format == kFormatFloat && bits == 32;
    if (!pcm16 && !f32)
        throw fail("unsupported encoding (need 16-bit PCM or 32-bit float)");

    const std::size_t sample_bytes = bits / 8;
    const std::size_t frame_bytes = sample_bytes * channels;
    const std::size_t frames = data_size / frame_bytes;

    AudioTrack track;
    track.sample_rate = static_cast<int>(rate);
    track.samples.resize(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        double sum = 0.0;
        for (std::size_t c = 0; c < channels; ++c) {
            const unsigned char *p = data + i * frame_bytes + c * sample_bytes;
            if (pcm16) {
                sum += static_cast<std::int16_t>(read_u16(p)) / 32768.0;
            } else {
                sum += static_cast<double>(std::bit_cast<float>(read_u32(p)));
            }
        }
        track.samples[i] = sum / channels;
    }
    return track;
}

void write_wav(const std::filesystem::path &path, const AudioTrack &track, WavEncoding encoding) {
    if (track.sample_rate <= 0)
        throw Error("write_wav: sample rate must be positive");
    const bool pcm16 = encoding == WavEncoding::pcm16;
    const std::uint16_t bits = pcm16 ? 16 : 32;
    const std::uint32_t data_bytes = static_cast<std::uint32_t>(track.samples.size() * (bits / 8));

    std::string out;
    out.reserve(44 + data_bytes);
    out += "RIFF";
    put_u32(out, 36 + data_bytes);
    out += "WAVEfmt ";
    put_u32(out, 16);
    put_u16(out, pcm16 ? kFormatPcm : kFormatFloat);
    put_u16(out, 1);
    put_u32(out, static_cast<std::uint32_t>(track.sample_rate));
    put_u32(out, static_cast<std::uint32_t>(track.sample_rate) * (bits / 8));
    put_u16(out, bits / 8);
    put_u16(out, bits);
    out += "data";
    put_u32(out, data_bytes);
    for (double s : track.samples) {
        const double clamped = std::clamp(s, -1.0, 1.0);
        if (pcm16) {
            const auto q = static_cast<std::int16_t>(std::lround(clamped * 32767.0));
            put_u16(out, static_cast<std::uint16_t>(q));
        } else {
            put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(clamped)));
        }
    }

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw Error("cannot write WAV file: " + path.string());
    os.write(out.data(), static_cast<std::streamsize>(out.size()));
}

} // namespace moviedesc::signal
