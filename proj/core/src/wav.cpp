#include "sedlab/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sedlab {

namespace {

void put_u32(std::string& buf, uint32_t v) {
    buf.push_back(static_cast<char>(v & 0xff));
    buf.push_back(static_cast<char>((v >> 8) & 0xff));
    buf.push_back(static_cast<char>((v >> 16) & 0xff));
    buf.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16(std::string& buf, uint16_t v) {
    buf.push_back(static_cast<char>(v & 0xff));
    buf.push_back(static_cast<char>((v >> 8) & 0xff));
}

uint32_t get_u32(const unsigned char* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t get_u16(const unsigned char* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

} // namespace

void write_wav(const std::string& path, std::span<const float> samples, int sample_rate) {
    const uint32_t data_bytes = static_cast<uint32_t>(samples.size() * 2);
    std::string buf;
    buf.reserve(44 + data_bytes);
    buf += "RIFF";
    put_u32(buf, 36 + data_bytes);
    buf += "WAVE";
    buf += "fmt ";
    put_u32(buf, 16);
    put_u16(buf, 1); // PCM
    put_u16(buf, 1); // mono
    put_u32(buf, static_cast<uint32_t>(sample_rate));
    put_u32(buf, static_cast<uint32_t>(sample_rate * 2));
    put_u16(buf, 2);  // block align
    put_u16(buf, 16); // bits per sample
    buf += "data";
    put_u32(buf, data_bytes);
    for (float x : samples) {
        const float clamped = std::clamp(x, -1.0f, 1.0f);
        const auto q = static_cast<int16_t>(std::lrint(clamped * 32767.0f));
        put_u16(buf, static_cast<uint16_t>(q));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

WavData read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto* p = reinterpret_cast<const unsigned char*>(raw.data());
    if (raw.size() < 12 || std::memcmp(p, "RIFF", 4) != 0 || std::memcmp(p + 8, "WAVE", 4) != 0)
        throw std::runtime_error("not a RIFF/WAVE file: " + path);

    WavData out;
    bool have_fmt = false;
    size_t pos = 12;
    while (pos + 8 <= raw.size()) {
        const char* chunk_id = raw.data() + pos;
        const uint32_t chunk_size = get_u32(p + pos + 4);
        const size_t body = pos + 8;
        if (body + chunk_size > raw.size())
            throw std::runtime_error("truncated WAV chunk: " + path);
        if (std::memcmp(chunk_id, "fmt ", 4) == 0) {
            if (chunk_size < 16) throw std::runtime_error("short fmt chunk: " + path);
            const uint16_t format = get_u16(p + body);
            const uint16_t channels = get_u16(p + body + 2);
            const uint32_t rate = get_u32(p + body + 4);
            const uint16_t bits = get_u16(p + body + 14);
            if (format != 1 || bits != 16)
                throw std::runtime_error("unsupported WAV encoding (need 16-bit PCM): " + path);
            if (channels != 1)
                throw std::runtime_error("unsupported channel count (need mono): " + path);
            out.sample_rate = static_cast<int>(rate);
            have_fmt = true;
        } else if (std::memcmp(chunk_id, "data", 4) == 0) {
            if (!have_fmt) throw std::runtime_error("data chunk before fmt: " + path);
            const size_t n = chunk_size / 2;
            out.samples.resize(n);
            for (size_t i = 0; i < n; ++i) {
                const auto v = static_cast<int16_t>(get_u16(p + body + 2 * i));
                out.samples[i] = static_cast<float>(v) / 32767.0f;
            }
            return out;
        }
        pos = body + chunk_size + (chunk_size & 1);
    }
    throw std::runtime_error("no data chunk: " + path);
}

} // namespace sedlab
