#pragma once

// Harmony ranking as a stable sort.
//
// An annotated line is `candidate.vector` where the candidate's trailing `.`
// doubles as field separator. The sort key is the raw byte sequence after
// the first `.`: unviolated fields (`'`, 39) order before violation marks
// (`*`, 42), and a prefix orders before its extensions, so byte order is
// harmony order. Ties keep their input order.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "otkit/error.hpp"

namespace otkit {

struct AnnotatedLine {
    std::string candidate;  // up to and including the first '.'
    std::string vector;     // remainder, possibly empty
};

// line_number is used for the error on a dot-less line; 0 if unknown.
inline AnnotatedLine split_annotated(const std::string& line, int line_number = 0) {
    std::size_t dot = line.find('.');
    if (dot == std::string::npos)
        throw ParseError(line_number, "malformed candidate line (no '.')");
    return AnnotatedLine{line.substr(0, dot + 1), line.substr(dot + 1)};
}

inline int compare_vectors(const std::string& a, const std::string& b) {
    return a.compare(b);
}

inline std::vector<std::string> eval_sort(const std::vector<std::string>& lines) {
    std::vector<std::string> keys;
    keys.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i)
        keys.push_back(split_annotated(lines[i], static_cast<int>(i + 1)).vector);
    std::vector<std::size_t> order(lines.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return compare_vectors(keys[a], keys[b]) < 0;
    });
    std::vector<std::string> out;
    out.reserve(lines.size());
    for (std::size_t i : order) out.push_back(lines[i]);
    return out;
}

// Keeps every line whose vector equals the stream minimum, in input order.
inline std::vector<std::string> prune(const std::vector<std::string>& lines) {
    if (lines.empty()) return {};
    std::string best = split_annotated(lines[0], 1).vector;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::string v = split_annotated(lines[i], static_cast<int>(i + 1)).vector;
        if (compare_vectors(v, best) < 0) best = std::move(v);
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (split_annotated(lines[i], static_cast<int>(i + 1)).vector == best)
            out.push_back(lines[i]);
    return out;
}

}  // namespace otkit
