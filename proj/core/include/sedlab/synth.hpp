#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sedlab/rng.hpp"
#include "sedlab/types.hpp"

namespace sedlab {

struct PitchShiftRange {
    bool enabled = false;
    double min_semitones = -3.0;
    double max_semitones = 3.0;
};

struct ReverbParams {
    bool enabled = false;
    double rt_min_s = 0.1;
    double rt_max_s = 0.4;
};

struct SynthConfig {
    int max_events_per_clip = 5;
    double snr_db_lo = 6.0;
    double snr_db_hi = 30.0;
    PitchShiftRange pitch_shift;
    ReverbParams reverb;
    double background_level_db = -30.0; // target background RMS in dBFS
    uint64_t seed = 0;

    void validate() const;
};

struct RoomImpulseResponse {
    std::vector<double> taps; // taps[0] is the direct path
    int sample_rate = kSampleRate;
};

// Parametric waveform for one class: each class id maps to a distinct family
// (tone, harmonic stack, chirp, AM noise, ping train, ...) with 10 ms
// raised-cosine fades and peak below 1. Deterministic given the rng state.
std::vector<double> procedural_event(int class_id, double duration_s, Rng& rng);

// Pink/brown noise texture, RMS-normalized to 1.
std::vector<double> procedural_background(int kind, double duration_s, Rng& rng);

EventBank build_procedural_bank(const ClassVocabulary& vocab, int items_per_class,
                                int n_backgrounds, uint64_t seed);

// Resample-then-time-correct pitch shift. Preserves length exactly; moves the
// dominant spectral peak by 2^(semitones/12). 0 semitones returns a copy.
std::vector<double> pitch_shift(std::span<const double> wave, double semitones);

// Full linear convolution (length n + taps - 1) via FFT.
std::vector<double> apply_rir(std::span<const double> wave, const RoomImpulseResponse& rir);

// White noise with an exponential decay envelope reaching -60 dB at
// rt_decay_s, unit energy, positive direct-path tap.
RoomImpulseResponse generate_rir(double rt_decay_s, Rng& rng);

// Returns the foreground scaled so that rms(fg)/rms(bg) matches snr_db,
// both RMS taken over the foreground's support.
std::vector<double> mix_at_snr(std::span<const double> foreground,
                               std::span<const double> background_segment, double snr_db);

// One synthesized clip plus its constituent parts (used by energy-support
// checks and the dataset manifest). `events[i]` is annotation i's component
// at full clip length; all parts carry the final peak normalization.
struct SoundscapeParts {
    AudioClip clip; // Strong labels, sorted by onset
    std::vector<double> background;
    std::vector<std::vector<double>> events;
    std::string background_id;
    std::vector<std::string> event_source_ids;
};

// Deterministic given (bank, config, clip_seed). Draw order from the clip
// rng, which the determinism tests rely on:
//   1. background index; 2. crop offset (only when the background is longer
//   than the clip); 3. event count k ~ uniform{0..max_events}; then per event
//   4. foreground index, 5. semitones (only when pitch_shift.enabled),
//   6. decay time + taps (only when reverb.enabled), 7. SNR, 8. onset sample.
// An event whose transformed length exceeds the clip is redrawn (bounded).
SoundscapeParts generate_soundscape_parts(const EventBank& bank, const SynthConfig& cfg,
                                          uint64_t clip_seed, const std::string& clip_name);

AudioClip generate_soundscape(const EventBank& bank, const SynthConfig& cfg,
                              uint64_t clip_seed, const std::string& clip_name);

} // namespace sedlab
