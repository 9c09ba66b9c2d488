#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sedlab {

constexpr int kSampleRate = 16000;
constexpr double kClipSeconds = 10.0;
constexpr int kClipSamples = 160000;

// Ordered class label list. Index into it is the class id used everywhere else.
class ClassVocabulary {
public:
    ClassVocabulary();
    explicit ClassVocabulary(std::vector<std::string> names);

    // "class_0".."class_{n-1}"
    static ClassVocabulary generic(int n_classes = 10);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int class_id) const;
    std::optional<int> find(const std::string& name) const;
    int id(const std::string& name) const; // throws on unknown label
    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const ClassVocabulary& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
};

struct EventAnnotation {
    double onset_s = 0.0;
    double offset_s = 0.0;
    int class_id = 0;

    double duration_s() const { return offset_s - onset_s; }
    bool operator==(const EventAnnotation&) const = default;
};

// throws if 0 <= onset < offset <= clip_duration is violated
void validate_event(const EventAnnotation& e, double clip_duration_s = kClipSeconds);

using StrongLabels = std::vector<EventAnnotation>;

struct WeakLabels {
    std::vector<int> class_ids; // sorted, unique (vocabulary order)
    bool operator==(const WeakLabels&) const = default;
};

struct Unlabeled {
    bool operator==(const Unlabeled&) const = default;
};

using ClipLabels = std::variant<StrongLabels, WeakLabels, Unlabeled>;

// Mono 16 kHz clip, fixed 10 s for everything this project generates.
struct AudioClip {
    std::string name; // filename used in annotation rows
    std::vector<float> samples;
    int sample_rate = kSampleRate;
    ClipLabels labels = Unlabeled{};

    double duration_s() const {
        return static_cast<double>(samples.size()) / sample_rate;
    }
    bool has_strong() const { return std::holds_alternative<StrongLabels>(labels); }
    bool has_weak() const { return std::holds_alternative<WeakLabels>(labels); }
    const StrongLabels& strong() const { return std::get<StrongLabels>(labels); }
    const WeakLabels& weak() const { return std::get<WeakLabels>(labels); }
};

// tag set = classes present in the strong annotation
WeakLabels reduce_to_weak(const StrongLabels& events);

struct DatasetBundle {
    std::vector<AudioClip> synthetic_strong;
    std::vector<AudioClip> weak;
    std::vector<AudioClip> unlabeled;
    std::vector<AudioClip> xvalid; // strong-labeled
};

// Bank material is kept in double precision; it feeds the synthesis chain
// (pitch shift, convolution, SNR scaling) whose contracts are tighter than
// float round-off. Clips are cast to float at the AudioClip boundary.
struct ForegroundItem {
    int class_id = 0;
    std::vector<double> samples;
    std::string id; // stable identifier, e.g. "fg_c03_007"
};

struct BackgroundItem {
    std::vector<double> samples;
    std::string id;
};

struct EventBank {
    std::vector<ForegroundItem> foreground;
    std::vector<BackgroundItem> background;
};

// Per-class partition: the first bank receives ceil(ratio * n_c) items of each
// class, the second the rest; backgrounds are partitioned with the same rule.
// Deterministic given seed. Throws "class not splittable" if any class holds
// fewer than two foreground items.
std::pair<EventBank, EventBank> split_event_bank(const EventBank& bank, double ratio,
                                                 uint64_t seed);

} // namespace sedlab
