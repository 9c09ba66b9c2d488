#pragma once

#include <map>
#include <string>
#include <vector>

#include "sedlab/types.hpp"

namespace sedlab {

// filename -> events / tags. std::map keeps file order deterministic.
using StrongAnnotations = std::map<std::string, StrongLabels>;
using WeakAnnotations = std::map<std::string, std::vector<int>>;

// Tab-separated rows "filename<TAB>onset<TAB>offset<TAB>event_label", three
// decimals on the times. A file with no events contributes zero rows.
std::string format_strong_annotations(const StrongAnnotations& ann,
                                      const ClassVocabulary& vocab);
StrongAnnotations parse_strong_annotations(const std::string& text,
                                           const ClassVocabulary& vocab);

// Rows "filename<TAB>label1,label2,..." with labels in vocabulary order.
// Writing a clip with an empty tag set is an error.
std::string format_weak_annotations(const WeakAnnotations& ann, const ClassVocabulary& vocab);
WeakAnnotations parse_weak_annotations(const std::string& text, const ClassVocabulary& vocab);

// Convenience over clips carrying the matching label kind.
StrongAnnotations collect_strong(const std::vector<AudioClip>& clips);
WeakAnnotations collect_weak(const std::vector<AudioClip>& clips);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace sedlab
