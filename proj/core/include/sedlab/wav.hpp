#pragma once

#include <span>
#include <string>
#include <vector>

namespace sedlab {

// 16-bit PCM mono WAV. Samples are float in [-1, 1]; values outside are
// clamped on write. Scale is 32767 both directions so a round trip is exact
// up to the int16 quantization step.
void write_wav(const std::string& path, std::span<const float> samples, int sample_rate);

struct WavData {
    std::vector<float> samples;
    int sample_rate = 0;
};
WavData read_wav(const std::string& path);

} // namespace sedlab
