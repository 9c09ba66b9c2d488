#include "sedlab/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "sedlab/rng.hpp"

namespace sedlab {

ClassVocabulary::ClassVocabulary() : ClassVocabulary(generic(10).names_) {}

ClassVocabulary::ClassVocabulary(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw std::invalid_argument("vocabulary: needs at least one class");
    std::set<std::string> uniq(names_.begin(), names_.end());
    if (uniq.size() != names_.size())
        throw std::invalid_argument("vocabulary: class names must be unique");
}

ClassVocabulary ClassVocabulary::generic(int n_classes) {
    std::vector<std::string> names;
    names.reserve(n_classes);
    for (int i = 0; i < n_classes; ++i) names.push_back("class_" + std::to_string(i));
    return ClassVocabulary(std::move(names));
}

const std::string& ClassVocabulary::name(int class_id) const {
    if (class_id < 0 || class_id >= size())
        throw std::out_of_range("vocabulary: class id " + std::to_string(class_id));
    return names_[class_id];
}

std::optional<int> ClassVocabulary::find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

int ClassVocabulary::id(const std::string& name) const {
    if (auto found = find(name)) return *found;
    throw std::invalid_argument("vocabulary: unknown class label '" + name + "'");
}

void validate_event(const EventAnnotation& e, double clip_duration_s) {
    if (!(e.onset_s >= 0.0 && e.onset_s < e.offset_s && e.offset_s <= clip_duration_s))
        throw std::invalid_argument("event annotation out of range: [" +
                                    std::to_string(e.onset_s) + ", " +
                                    std::to_string(e.offset_s) + "]");
}

WeakLabels reduce_to_weak(const StrongLabels& events) {
    std::set<int> ids;
    for (const auto& e : events) ids.insert(e.class_id);
    return WeakLabels{std::vector<int>(ids.begin(), ids.end())};
}

std::pair<EventBank, EventBank> split_event_bank(const EventBank& bank, double ratio,
                                                 uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw std::invalid_argument("split_event_bank: ratio must be in (0, 1)");

    std::map<int, std::vector<size_t>> by_class;
    for (size_t i = 0; i < bank.foreground.size(); ++i)
        by_class[bank.foreground[i].class_id].push_back(i);
    for (const auto& [class_id, items] : by_class) {
        if (items.size() < 2)
            throw std::invalid_argument("split_event_bank: class not splittable (class " +
                                        std::to_string(class_id) + " has " +
                                        std::to_string(items.size()) + " item)");
    }

    Rng rng(seed);
    EventBank first, second;
    for (auto& [class_id, items] : by_class) {
        rng.shuffle(items);
        const size_t n_first =
            static_cast<size_t>(std::ceil(ratio * static_cast<double>(items.size())));
        for (size_t k = 0; k < items.size(); ++k) {
            auto& dst = (k < n_first) ? first : second;
            dst.foreground.push_back(bank.foreground[items[k]]);
        }
    }

    std::vector<size_t> bg(bank.background.size());
    for (size_t i = 0; i < bg.size(); ++i) bg[i] = i;
    rng.shuffle(bg);
    const size_t n_bg_first =
        static_cast<size_t>(std::ceil(ratio * static_cast<double>(bg.size())));
    for (size_t k = 0; k < bg.size(); ++k) {
        auto& dst = (k < n_bg_first) ? first : second;
        dst.background.push_back(bank.background[bg[k]]);
    }
    return {std::move(first), std::move(second)};
}

} // namespace sedlab
