#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "sedlab/rng.hpp"

namespace sedlab {

struct FeatureConfig {
    int sample_rate = 16000;
    int window = 2048;
    int hop = 255;
    int n_mels = 128;
    double fmin_hz = 0.0;
    double fmax_hz = 8000.0;
    double log_floor = 1e-10;

    void validate() const;
};

// T x F log-mel matrix; T = floor(samples/hop) + 1 with centered framing.
struct MelFeatureMatrix {
    Eigen::MatrixXf values;
    double frame_hop_s = 255.0 / 16000.0;

    int frames() const { return static_cast<int>(values.rows()); }
    int bands() const { return static_cast<int>(values.cols()); }
};

// Hann-windowed centered STFT (reflect padding), magnitude, HTK-spaced
// triangular mel filterbank, log(x + floor). Window/filterbank/FFT tables are
// cached per instance.
class MelExtractor {
public:
    explicit MelExtractor(FeatureConfig cfg = {});
    const FeatureConfig& config() const { return cfg_; }
    MelFeatureMatrix compute(std::span<const float> wave) const;
    MelFeatureMatrix compute(std::span<const double> wave) const;

private:
    FeatureConfig cfg_;
    std::vector<double> window_;
    // per mel band: first FFT bin index + triangle weights
    std::vector<std::pair<int, std::vector<double>>> filterbank_;
    std::shared_ptr<const class FftPlan> plan_;
};

struct FeatureStats {
    Eigen::VectorXf mean; // per band
    Eigen::VectorXf std;
};

FeatureStats compute_feature_stats(const std::vector<MelFeatureMatrix>& features);
FeatureStats identity_stats(int n_bands);

// (x - mean) / max(std, 1e-6) per band; throws on band-count mismatch.
void normalize(MelFeatureMatrix& features, const FeatureStats& stats);

// Adds zero-mean white Gaussian noise scaled so the feature-to-noise power
// ratio (mean square over the whole matrix) matches snr_db. Infinity leaves
// the input untouched.
void add_noise_at_snr(MelFeatureMatrix& features, double snr_db, Rng& rng);

// Binary cache: "SEDFEAT1" magic, uint32 T, uint32 F, float64 hop_s, then
// T*F little-endian float32 row-major.
void write_feature_cache(const std::string& path, const MelFeatureMatrix& features);
MelFeatureMatrix read_feature_cache(const std::string& path);

} // namespace sedlab
