#include "sedlab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sedlab/fft.hpp"

namespace sedlab {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 2.0 * kPi;

double rms(std::span<const double> x) {
    if (x.empty()) return 0.0;
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc / static_cast<double>(x.size()));
}

void apply_fades(std::vector<double>& x, int fade_samples) {
    const int n = static_cast<int>(x.size());
    const int fade = std::min(fade_samples, n / 2);
    for (int i = 0; i < fade; ++i) {
        // raised cosine from 0 to 1
        const double g = 0.5 - 0.5 * std::cos(kPi * (i + 1) / static_cast<double>(fade + 1));
        x[i] *= g;
        x[n - 1 - i] *= g;
    }
}

void normalize_peak(std::vector<double>& x, double target) {
    double peak = 0.0;
    for (double v : x) peak = std::max(peak, std::abs(v));
    if (peak <= 0.0) return;
    const double g = target / peak;
    for (double& v : x) v *= g;
}

// Families are deliberately spread over distinct frequency ranges so that
// different classes stay decorrelated.
std::vector<double> family_waveform(int family, int n, Rng& rng) {
    const double sr = kSampleRate;
    std::vector<double> x(n, 0.0);
    switch (family) {
        case 0: { // pure tone
            const double f = rng.log_uniform(200.0, 900.0);
            const double phi = rng.uniform(0.0, kTwoPi);
            for (int i = 0; i < n; ++i) x[i] = std::sin(kTwoPi * f * i / sr + phi);
            break;
        }
        case 1: { // harmonic stack
            const double f0 = rng.log_uniform(100.0, 320.0);
            for (int k = 1; k <= 5; ++k) {
                const double phi = rng.uniform(0.0, kTwoPi);
                const double a = 1.0 / k;
                for (int i = 0; i < n; ++i)
                    x[i] += a * std::sin(kTwoPi * f0 * k * i / sr + phi);
            }
            break;
        }
        case 2: { // rising chirp
            const double f0 = rng.uniform(300.0, 700.0);
            const double f1 = rng.uniform(2200.0, 3800.0);
            const double dur = n / sr;
            for (int i = 0; i < n; ++i) {
                const double t = i / sr;
                x[i] = std::sin(kTwoPi * (f0 * t + 0.5 * (f1 - f0) * t * t / dur));
            }
            break;
        }
        case 3: { // amplitude-modulated noise
            const double f_am = rng.uniform(3.0, 9.0);
            const double phi = rng.uniform(0.0, kTwoPi);
            for (int i = 0; i < n; ++i) {
                const double env = 0.55 + 0.45 * std::sin(kTwoPi * f_am * i / sr + phi);
                x[i] = env * rng.normal();
            }
            break;
        }
        case 4: { // ping train: decaying tone bursts
            const double fc = rng.uniform(1200.0, 2500.0);
            const double rate = rng.uniform(6.0, 12.0);
            const double period = sr / rate;
            const int ping_len = static_cast<int>(0.12 * sr);
            for (double start = 0.0; start < n; start += period) {
                const int s0 = static_cast<int>(start);
                for (int j = 0; j < ping_len && s0 + j < n; ++j) {
                    const double tau = j / sr;
                    x[s0 + j] += std::sin(kTwoPi * fc * tau) * std::exp(-tau / 0.03);
                }
            }
            break;
        }
        case 5: { // vibrato tone
            const double fc = rng.log_uniform(500.0, 1600.0);
            const double dev = 0.035 * fc;
            const double f_lfo = rng.uniform(4.5, 7.0);
            double phase = rng.uniform(0.0, kTwoPi);
            for (int i = 0; i < n; ++i) {
                const double f_inst = fc + dev * std::sin(kTwoPi * f_lfo * i / sr);
                phase += kTwoPi * f_inst / sr;
                x[i] = std::sin(phase);
            }
            break;
        }
        case 6: { // odd-harmonic (square-like) tone
            const double f0 = rng.log_uniform(150.0, 480.0);
            const double phi = rng.uniform(0.0, kTwoPi);
            for (int k = 1; k <= 9; k += 2) {
                const double a = 1.0 / k;
                for (int i = 0; i < n; ++i)
                    x[i] += a * std::sin(kTwoPi * f0 * k * i / sr + k * phi);
            }
            break;
        }
        case 7: { // narrow-band noise: dense random sinusoids in one band
            const double lo = rng.log_uniform(1600.0, 3800.0);
            const double hi = std::min(lo * 1.6, 7500.0);
            for (int k = 0; k < 48; ++k) {
                const double f = rng.uniform(lo, hi);
                const double phi = rng.uniform(0.0, kTwoPi);
                for (int i = 0; i < n; ++i) x[i] += std::sin(kTwoPi * f * i / sr + phi);
            }
            break;
        }
        case 8: { // gated beep train
            const double f0 = rng.uniform(800.0, 2000.0);
            const double gate_hz = rng.uniform(2.5, 5.0);
            const double phi = rng.uniform(0.0, kTwoPi);
            const int ramp = static_cast<int>(0.005 * sr);
            const int period = static_cast<int>(sr / gate_hz);
            const int on_len = period / 2;
            for (int i = 0; i < n; ++i) {
                const int pos = i % period;
                double g = 0.0;
                if (pos < on_len) {
                    g = 1.0;
                    if (pos < ramp) g = 0.5 - 0.5 * std::cos(kPi * pos / ramp);
                    const int tail = on_len - 1 - pos;
                    if (tail < ramp) g = std::min(g, 0.5 - 0.5 * std::cos(kPi * tail / ramp));
                }
                x[i] = g * std::sin(kTwoPi * f0 * i / sr + phi);
            }
            break;
        }
        case 9: { // falling chirp
            const double f0 = rng.uniform(2400.0, 3800.0);
            const double f1 = rng.uniform(250.0, 600.0);
            const double dur = n / sr;
            for (int i = 0; i < n; ++i) {
                const double t = i / sr;
                x[i] = std::sin(kTwoPi * (f0 * t + 0.5 * (f1 - f0) * t * t / dur));
            }
            break;
        }
        default:
            throw std::invalid_argument("procedural_event: unknown class id");
    }
    return x;
}

// Time-stretch by `factor` (output length = round(input * factor)) using
// windowed overlap-add with a correlation search for grain alignment.
std::vector<double> wsola_stretch(std::span<const double> x, double factor, size_t out_len) {
    const size_t m = x.size();
    if (m == 0) return {};
    // window: largest power of two <= m/4, capped at 1024
    size_t win = 64;
    while (win * 2 <= std::min<size_t>(1024, m / 4)) win *= 2;
    if (m < 4 * win) {
        // too short for aligned grains: plain linear-interp stretch
        std::vector<double> out(out_len);
        for (size_t j = 0; j < out_len; ++j) {
            const double pos = factor <= 0 ? 0.0
                                           : static_cast<double>(j) / factor;
            const size_t i0 = std::min(static_cast<size_t>(pos), m - 1);
            const size_t i1 = std::min(i0 + 1, m - 1);
            const double frac = pos - static_cast<double>(i0);
            out[j] = x[i0] * (1.0 - frac) + x[i1] * frac;
        }
        return out;
    }

    const size_t hop = win / 2;
    const size_t search = win / 4;
    std::vector<double> window(win);
    for (size_t i = 0; i < win; ++i)
        window[i] = 0.5 - 0.5 * std::cos(kTwoPi * i / static_cast<double>(win));

    std::vector<double> acc(out_len + win, 0.0), wsum(out_len + win, 0.0);
    size_t prev_src = 0;
    for (size_t k = 0;; ++k) {
        const size_t out_pos = k * hop;
        if (out_pos >= out_len) break;
        size_t src;
        if (k == 0) {
            src = 0;
        } else {
            const double nominal = static_cast<double>(out_pos) / factor;
            const size_t max_src = m - win;
            size_t center = static_cast<size_t>(std::min(nominal, static_cast<double>(max_src)));
            const size_t lo = center > search ? center - search : 0;
            const size_t hi = std::min(center + search, max_src);
            // pick the grain whose head best continues the previous grain
            const size_t ref = std::min(prev_src + hop, max_src);
            double best = -1e300;
            size_t best_src = lo;
            for (size_t s = lo; s <= hi; s += 4) {
                double dot = 0.0;
                for (size_t i = 0; i < hop; i += 2) dot += x[s + i] * x[ref + i];
                if (dot > best) {
                    best = dot;
                    best_src = s;
                }
            }
            // refine at full resolution around the coarse pick
            const size_t flo = best_src > 3 ? best_src - 3 : 0;
            const size_t fhi = std::min(best_src + 3, max_src);
            best = -1e300;
            for (size_t s = flo; s <= fhi; ++s) {
                double dot = 0.0;
                for (size_t i = 0; i < hop; ++i) dot += x[s + i] * x[ref + i];
                if (dot > best) {
                    best = dot;
                    best_src = s;
                }
            }
            src = best_src;
        }
        for (size_t i = 0; i < win && out_pos + i < acc.size(); ++i) {
            acc[out_pos + i] += window[i] * x[src + i];
            wsum[out_pos + i] += window[i];
        }
        prev_src = src;
    }
    std::vector<double> out(out_len);
    for (size_t i = 0; i < out_len; ++i)
        out[i] = wsum[i] > 1e-9 ? acc[i] / wsum[i] : 0.0;
    return out;
}

} // namespace

void SynthConfig::validate() const {
    if (max_events_per_clip < 0)
        throw std::invalid_argument("synth: max_events_per_clip must be >= 0");
    if (snr_db_lo > snr_db_hi) throw std::invalid_argument("synth: SNR range inverted");
    if (pitch_shift.enabled) {
        if (pitch_shift.min_semitones > pitch_shift.max_semitones ||
            pitch_shift.min_semitones < -12.0 || pitch_shift.max_semitones > 12.0)
            throw std::invalid_argument("synth: semitone range must lie within [-12, 12]");
    }
    if (reverb.enabled) {
        if (reverb.rt_min_s > reverb.rt_max_s || reverb.rt_min_s < 0.05 ||
            reverb.rt_max_s > 0.5)
            throw std::invalid_argument("synth: reverb decay must lie within [0.05, 0.5] s");
    }
}

std::vector<double> procedural_event(int class_id, double duration_s, Rng& rng) {
    if (class_id < 0) throw std::invalid_argument("procedural_event: unknown class id");
    if (!(duration_s >= 0.25 && duration_s <= 8.0))
        throw std::invalid_argument("procedural_event: duration must be in [0.25, 8] s");
    const int n = static_cast<int>(std::lround(duration_s * kSampleRate));
    auto x = family_waveform(class_id % 10, n, rng);
    apply_fades(x, kSampleRate / 100); // 10 ms
    normalize_peak(x, rng.uniform(0.55, 0.9));
    return x;
}

std::vector<double> procedural_background(int kind, double duration_s, Rng& rng) {
    const int n = static_cast<int>(std::lround(duration_s * kSampleRate));
    std::vector<double> x(n);
    if (kind % 2 == 0) {
        // pink-ish noise (Kellet three-pole approximation)
        double b0 = 0, b1 = 0, b2 = 0;
        for (int i = 0; i < n; ++i) {
            const double w = rng.normal();
            b0 = 0.99886 * b0 + w * 0.0555179;
            b1 = 0.99332 * b1 + w * 0.0750759;
            b2 = 0.96900 * b2 + w * 0.1538520;
            x[i] = b0 + b1 + b2 + w * 0.05362;
        }
    } else {
        // brown-ish noise: leaky integrator
        double state = 0.0;
        for (int i = 0; i < n; ++i) {
            state = 0.995 * state + rng.normal();
            x[i] = state;
        }
    }
    const double r = rms(x);
    if (r > 0)
        for (double& v : x) v /= r;
    return x;
}

EventBank build_procedural_bank(const ClassVocabulary& vocab, int items_per_class,
                                int n_backgrounds, uint64_t seed) {
    if (items_per_class < 2)
        throw std::invalid_argument("bank: need at least 2 items per class to allow splitting");
    EventBank bank;
    Rng master(seed);
    char idbuf[32];
    for (int c = 0; c < vocab.size(); ++c) {
        for (int k = 0; k < items_per_class; ++k) {
            Rng rng = master.derive(static_cast<uint64_t>(c) * 10000 + k);
            const double dur = rng.uniform(0.4, 2.2);
            ForegroundItem item;
            item.class_id = c;
            item.samples = procedural_event(c, dur, rng);
            std::snprintf(idbuf, sizeof(idbuf), "fg_c%02d_%03d", c, k);
            item.id = idbuf;
            bank.foreground.push_back(std::move(item));
        }
    }
    for (int k = 0; k < n_backgrounds; ++k) {
        Rng rng = master.derive(900000 + static_cast<uint64_t>(k));
        BackgroundItem item;
        item.samples = procedural_background(k, kClipSeconds, rng);
        std::snprintf(idbuf, sizeof(idbuf), "bg_%03d", k);
        item.id = idbuf;
        bank.background.push_back(std::move(item));
    }
    return bank;
}

std::vector<double> pitch_shift(std::span<const double> wave, double semitones) {
    if (std::abs(semitones) > 12.0)
        throw std::invalid_argument("pitch_shift: |semitones| must be <= 12");
    if (wave.empty()) return {};
    if (semitones == 0.0) return {wave.begin(), wave.end()};

    const double factor = std::pow(2.0, semitones / 12.0);
    const size_t n = wave.size();

    // read at rate `factor`: shortens/stretches to n/factor and scales pitch
    const size_t resampled_len =
        std::max<size_t>(2, static_cast<size_t>(std::floor((n - 1) / factor)) + 1);
    std::vector<double> resampled(resampled_len);
    for (size_t j = 0; j < resampled_len; ++j) {
        const double pos = j * factor;
        size_t i0 = static_cast<size_t>(pos);
        if (i0 >= n - 1) i0 = n - 2;
        const double frac = pos - static_cast<double>(i0);
        resampled[j] = wave[i0] * (1.0 - frac) + wave[i0 + 1] * frac;
    }

    // stretch back to the original length without changing pitch again
    const double stretch = static_cast<double>(n) / static_cast<double>(resampled_len);
    return wsola_stretch(resampled, stretch, n);
}

std::vector<double> apply_rir(std::span<const double> wave, const RoomImpulseResponse& rir) {
    if (rir.taps.empty()) throw std::invalid_argument("apply_rir: empty impulse response");
    if (wave.empty()) return {};
    return fft_convolve(std::vector<double>(wave.begin(), wave.end()), rir.taps);
}

RoomImpulseResponse generate_rir(double rt_decay_s, Rng& rng) {
    if (!(rt_decay_s >= 0.05 && rt_decay_s <= 0.5))
        throw std::invalid_argument("generate_rir: decay must be in [0.05, 0.5] s");
    const int n = static_cast<int>(std::lround(rt_decay_s * kSampleRate));
    // amplitude envelope hits 1e-3 (-60 dB) at rt_decay_s
    const double tau = rt_decay_s / std::log(1000.0);
    RoomImpulseResponse rir;
    rir.taps.resize(n);
    for (int i = 0; i < n; ++i)
        rir.taps[i] = rng.normal() * std::exp(-(i / static_cast<double>(kSampleRate)) / tau);
    rir.taps[0] = std::abs(rir.taps[0]);
    double energy = 0.0;
    for (double t : rir.taps) energy += t * t;
    const double g = 1.0 / std::sqrt(energy);
    for (double& t : rir.taps) t *= g;
    return rir;
}

std::vector<double> mix_at_snr(std::span<const double> foreground,
                               std::span<const double> background_segment, double snr_db) {
    const double fg_rms = rms(foreground);
    const double bg_rms = rms(background_segment);
    if (fg_rms <= 0.0) throw std::invalid_argument("mix_at_snr: silent foreground");
    if (bg_rms <= 0.0) throw std::invalid_argument("mix_at_snr: silent background segment");
    const double gain = bg_rms * std::pow(10.0, snr_db / 20.0) / fg_rms;
    std::vector<double> out(foreground.begin(), foreground.end());
    for (double& v : out) v *= gain;
    return out;
}

SoundscapeParts generate_soundscape_parts(const EventBank& bank, const SynthConfig& cfg,
                                          uint64_t clip_seed, const std::string& clip_name) {
    cfg.validate();
    if (bank.background.empty())
        throw std::invalid_argument("generate_soundscape: bank has no backgrounds");
    if (bank.foreground.empty() && cfg.max_events_per_clip > 0)
        throw std::invalid_argument("generate_soundscape: bank has no foreground items");

    Rng rng(clip_seed);
    SoundscapeParts parts;

    // background: tile or crop to clip length, then set its level
    const auto& bg_item =
        bank.background[rng.uniform_int(0, static_cast<int64_t>(bank.background.size()) - 1)];
    std::vector<double> bg(kClipSamples);
    if (bg_item.samples.size() >= kClipSamples) {
        const auto start = static_cast<size_t>(rng.uniform_int(
            0, static_cast<int64_t>(bg_item.samples.size()) - kClipSamples));
        std::copy_n(bg_item.samples.begin() + start, kClipSamples, bg.begin());
    } else {
        for (int i = 0; i < kClipSamples; ++i)
            bg[i] = bg_item.samples[i % bg_item.samples.size()];
    }
    const double bg_rms = rms(bg);
    if (bg_rms <= 0.0) throw std::invalid_argument("generate_soundscape: silent background");
    const double bg_gain = std::pow(10.0, cfg.background_level_db / 20.0) / bg_rms;
    for (double& v : bg) v *= bg_gain;
    parts.background_id = bg_item.id;

    const int n_events = static_cast<int>(rng.uniform_int(0, cfg.max_events_per_clip));

    struct Placed {
        EventAnnotation ann;
        std::vector<double> component;
        std::string source_id;
    };
    std::vector<Placed> placed;

    for (int e = 0; e < n_events; ++e) {
        bool ok = false;
        for (int attempt = 0; attempt < 20 && !ok; ++attempt) {
            const auto& item = bank.foreground[rng.uniform_int(
                0, static_cast<int64_t>(bank.foreground.size()) - 1)];
            std::vector<double> wave = item.samples;
            if (cfg.pitch_shift.enabled) {
                const double semitones =
                    rng.uniform(cfg.pitch_shift.min_semitones, cfg.pitch_shift.max_semitones);
                wave = pitch_shift(wave, semitones);
            }
            const size_t dry_len = wave.size();
            if (cfg.reverb.enabled) {
                const double rt = rng.uniform(cfg.reverb.rt_min_s, cfg.reverb.rt_max_s);
                const RoomImpulseResponse rir = generate_rir(rt, rng);
                wave = apply_rir(wave, rir);
            }
            const double snr_db = rng.uniform(cfg.snr_db_lo, cfg.snr_db_hi);
            if (wave.size() > static_cast<size_t>(kClipSamples)) continue; // redraw
            const auto onset = static_cast<size_t>(
                rng.uniform_int(0, kClipSamples - static_cast<int64_t>(wave.size())));

            const std::span<const double> bg_segment(bg.data() + onset, wave.size());
            std::vector<double> scaled = mix_at_snr(wave, bg_segment, snr_db);

            Placed p;
            p.ann.onset_s = static_cast<double>(onset) / kSampleRate;
            p.ann.offset_s = p.ann.onset_s + static_cast<double>(dry_len) / kSampleRate;
            p.ann.class_id = item.class_id;
            p.component.assign(kClipSamples, 0.0);
            for (size_t i = 0; i < scaled.size(); ++i) p.component[onset + i] = scaled[i];
            p.source_id = item.id;
            placed.push_back(std::move(p));
            ok = true;
        }
        if (!ok)
            throw std::runtime_error(
                "generate_soundscape: could not place event after bounded retries");
    }

    std::stable_sort(placed.begin(), placed.end(), [](const Placed& a, const Placed& b) {
        if (a.ann.onset_s != b.ann.onset_s) return a.ann.onset_s < b.ann.onset_s;
        return a.ann.offset_s < b.ann.offset_s;
    });

    std::vector<double> mix = bg;
    for (const auto& p : placed)
        for (int i = 0; i < kClipSamples; ++i) mix[i] += p.component[i];

    double peak = 0.0;
    for (double v : mix) peak = std::max(peak, std::abs(v));
    if (peak > 1.0) {
        const double g = 0.9 / peak;
        for (double& v : mix) v *= g;
        for (double& v : bg) v *= g;
        for (auto& p : placed)
            for (double& v : p.component) v *= g;
    }

    parts.clip.name = clip_name;
    parts.clip.sample_rate = kSampleRate;
    parts.clip.samples.resize(kClipSamples);
    for (int i = 0; i < kClipSamples; ++i) parts.clip.samples[i] = static_cast<float>(mix[i]);
    StrongLabels labels;
    for (auto& p : placed) {
        validate_event(p.ann);
        labels.push_back(p.ann);
        parts.events.push_back(std::move(p.component));
        parts.event_source_ids.push_back(p.source_id);
    }
    parts.clip.labels = std::move(labels);
    parts.background = std::move(bg);
    return parts;
}

AudioClip generate_soundscape(const EventBank& bank, const SynthConfig& cfg,
                              uint64_t clip_seed, const std::string& clip_name) {
    return generate_soundscape_parts(bank, cfg, clip_seed, clip_name).clip;
}

} // namespace sedlab
