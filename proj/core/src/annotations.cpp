#include "sedlab/annotations.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sedlab {

namespace {

std::string format_seconds(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

[[noreturn]] void parse_fail(size_t line_no, const std::string& what) {
    throw std::runtime_error("annotation parse error at line " + std::to_string(line_no) +
                             ": " + what);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_seconds(const std::string& s, size_t line_no) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) parse_fail(line_no, "trailing characters in number '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        parse_fail(line_no, "bad number '" + s + "'");
    } catch (const std::out_of_range&) {
        parse_fail(line_no, "number out of range '" + s + "'");
    }
}

} // namespace

std::string format_strong_annotations(const StrongAnnotations& ann,
                                      const ClassVocabulary& vocab) {
    std::string out;
    for (const auto& [file, events] : ann) {
        for (const auto& e : events) {
            out += file;
            out += '\t';
            out += format_seconds(e.onset_s);
            out += '\t';
            out += format_seconds(e.offset_s);
            out += '\t';
            out += vocab.name(e.class_id);
            out += '\n';
        }
    }
    return out;
}

StrongAnnotations parse_strong_annotations(const std::string& text,
                                           const ClassVocabulary& vocab) {
    StrongAnnotations ann;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cols = split(line, '\t');
        if (cols.size() != 4) parse_fail(line_no, "expected 4 tab-separated columns");
        EventAnnotation e;
        e.onset_s = parse_seconds(cols[1], line_no);
        e.offset_s = parse_seconds(cols[2], line_no);
        const auto id = vocab.find(cols[3]);
        if (!id) parse_fail(line_no, "unknown event label '" + cols[3] + "'");
        e.class_id = *id;
        if (!(e.onset_s >= 0.0 && e.onset_s < e.offset_s))
            parse_fail(line_no, "onset/offset out of order");
        ann[cols[0]].push_back(e);
    }
    return ann;
}

std::string format_weak_annotations(const WeakAnnotations& ann, const ClassVocabulary& vocab) {
    std::string out;
    for (const auto& [file, ids] : ann) {
        if (ids.empty())
            throw std::invalid_argument("weak clip with no tags: '" + file + "'");
        std::vector<int> sorted = ids;
        std::sort(sorted.begin(), sorted.end());
        out += file;
        out += '\t';
        for (size_t i = 0; i < sorted.size(); ++i) {
            if (i) out += ',';
            out += vocab.name(sorted[i]);
        }
        out += '\n';
    }
    return out;
}

WeakAnnotations parse_weak_annotations(const std::string& text, const ClassVocabulary& vocab) {
    WeakAnnotations ann;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cols = split(line, '\t');
        if (cols.size() != 2) parse_fail(line_no, "expected 2 tab-separated columns");
        std::vector<int> ids;
        for (const auto& label : split(cols[1], ',')) {
            const auto id = vocab.find(label);
            if (!id) parse_fail(line_no, "unknown event label '" + label + "'");
            ids.push_back(*id);
        }
        if (ids.empty()) parse_fail(line_no, "weak clip with no tags");
        std::sort(ids.begin(), ids.end());
        ann[cols[0]] = std::move(ids);
    }
    return ann;
}

StrongAnnotations collect_strong(const std::vector<AudioClip>& clips) {
    StrongAnnotations ann;
    for (const auto& clip : clips) {
        if (!clip.has_strong())
            throw std::invalid_argument("collect_strong: clip '" + clip.name +
                                        "' has no strong labels");
        ann[clip.name] = clip.strong();
    }
    return ann;
}

WeakAnnotations collect_weak(const std::vector<AudioClip>& clips) {
    WeakAnnotations ann;
    for (const auto& clip : clips) {
        if (!clip.has_weak())
            throw std::invalid_argument("collect_weak: clip '" + clip.name +
                                        "' has no weak labels");
        ann[clip.name] = clip.weak().class_ids;
    }
    return ann;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace sedlab
