#pragma once

// Shared helpers for the test suites: canned corpora, a shell runner, and a
// structure extractor that rebuilds a tree from its ASCII rendering.

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "otkit/otkit.hpp"

#ifndef OTKIT_GRAMMARS_DIR
#error "OTKIT_GRAMMARS_DIR must be defined by the build"
#endif

namespace testsupport {

inline std::string grammars_dir() { return OTKIT_GRAMMARS_DIR; }
inline std::string constraints_dir() { return OTKIT_CONSTRAINTS_DIR; }
inline std::string scripts_dir() { return OTKIT_SCRIPTS_DIR; }
inline std::string otkit_binary() { return OTKIT_BINARY; }

inline std::string constraint(const std::string& name) {
    return constraints_dir() + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

inline otkit::GenGrammar hessian() {
    static const otkit::GenGrammar g =
        otkit::parse_gen_grammar(read_file(grammars_dir() + "/hessian.gen"));
    return g;
}

inline std::vector<std::string> generate_lines(const otkit::GenGrammar& g,
                                               const otkit::InputSpec& input) {
    std::vector<std::string> lines;
    otkit::generate(g, input,
                    [&](const otkit::CandidateTree& t) { lines.push_back(otkit::flatten_line(t)); });
    return lines;
}

// The two standing corpora, generated once per process.
inline const std::vector<std::string>& ta_corpus() {
    static const std::vector<std::string> lines =
        generate_lines(hessian(), otkit::InputSpec{{"t", "a"}, 2});
    return lines;
}

inline const std::vector<std::string>& hond_corpus() {
    static const std::vector<std::string> lines =
        generate_lines(hessian(), otkit::InputSpec{{"h", "O", "n", "d"}, 1});
    return lines;
}

inline std::vector<otkit::ConstraintScript> load_scripts(const std::vector<std::string>& names) {
    std::vector<otkit::ConstraintScript> out;
    for (const std::string& n : names) {
        std::string path = constraint(n);
        out.push_back(otkit::parse_script(path, read_file(path)));
    }
    return out;
}

inline std::vector<std::string> annotate(const std::vector<std::string>& lines,
                                         const std::vector<std::string>& script_names) {
    std::vector<otkit::ConstraintScript> scripts = load_scripts(script_names);
    std::vector<std::string> out;
    out.reserve(lines.size());
    for (const std::string& l : lines) out.push_back(otkit::run_constraints_on_line(scripts, l));
    return out;
}

inline const std::vector<std::string>& hessian_ranking() {
    static const std::vector<std::string> names{"PARSE-FEAT", "FILL", "SON]PL", "PARSE-SEG",
                                                "NO-STRUC"};
    return names;
}

struct ShellResult {
    int status = -1;
    std::string out;
};

// Runs a shell command, capturing standard output. Standard error passes
// through to the test log.
inline ShellResult run_shell(const std::string& command) {
    ShellResult r;
    FILE* p = popen(command.c_str(), "r");
    if (!p) throw std::runtime_error("popen failed");
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    r.status = pclose(p);
    return r;
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

// Label-plus-children view of a tree, for structural comparisons that
// ignore column metrics and node kinds.
struct GenericNode {
    std::string label;
    std::vector<GenericNode> children;

    bool operator==(const GenericNode&) const = default;
};

inline GenericNode display_shape(const otkit::CandidateTree& t) {
    GenericNode n;
    n.label = otkit::detail::display_label(t);
    for (const otkit::CandidateTree& c : t.children) n.children.push_back(display_shape(c));
    return n;
}

namespace detail {

struct Token {
    std::size_t begin = 0;
    std::size_t end = 0;  // one past
    std::string text;
};

inline std::vector<Token> tokenize(const std::string& row) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < row.size()) {
        if (row[i] == ' ') {
            ++i;
            continue;
        }
        Token t;
        t.begin = i;
        while (i < row.size() && row[i] != ' ') ++i;
        t.end = i;
        t.text = row.substr(t.begin, t.end - t.begin);
        out.push_back(t);
    }
    return out;
}

inline char at(const std::vector<std::string>& rows, std::size_t r, std::size_t c) {
    if (r >= rows.size() || c >= rows[r].size()) return ' ';
    return rows[r][c];
}

inline GenericNode extract_node(const std::vector<std::string>& rows, std::size_t depth,
                                const Token& label) {
    GenericNode node;
    node.label = label.text;
    std::size_t stub_row = depth * 4 + 1;
    std::size_t stub_col = label.end;
    bool found = false;
    for (std::size_t c = label.begin; c < label.end; ++c)
        if (at(rows, stub_row, c) == '|') {
            stub_col = c;
            found = true;
            break;
        }
    if (!found) return node;  // leaf
    // the connector run under the stub gives the children's columns
    const std::string& run_row = rows[depth * 4 + 2];
    std::size_t lo = stub_col;
    while (lo > 0 && (at(rows, depth * 4 + 2, lo - 1) == '-' || at(rows, depth * 4 + 2, lo - 1) == '.'))
        --lo;
    std::size_t hi = stub_col;
    while (hi + 1 < run_row.size() && (run_row[hi + 1] == '-' || run_row[hi + 1] == '.')) ++hi;
    std::vector<std::size_t> child_cols;
    for (std::size_t c = lo; c <= hi; ++c)
        if (at(rows, depth * 4 + 2, c) == '.') child_cols.push_back(c);
    std::vector<Token> below = tokenize(rows.size() > (depth + 1) * 4 ? rows[(depth + 1) * 4] : "");
    for (std::size_t col : child_cols) {
        if (at(rows, depth * 4 + 3, col) != '|')
            throw std::runtime_error("rendering: no child stub under junction");
        bool matched = false;
        for (const Token& t : below)
            if (col >= t.begin && col < t.end) {
                node.children.push_back(extract_node(rows, depth + 1, t));
                matched = true;
                break;
            }
        if (!matched) throw std::runtime_error("rendering: junction without child label");
    }
    return node;
}

}  // namespace detail

// Rebuilds the tree structure from render_tree output. Relies only on the
// normative parts of the format: label rows every fourth line, `|` stubs,
// and `.` junctions on the connector rows.
inline GenericNode tree_from_rendering(const std::string& rendering) {
    std::vector<std::string> rows = split_lines(rendering);
    if (rows.empty()) throw std::runtime_error("rendering: empty");
    std::vector<detail::Token> top = detail::tokenize(rows[0]);
    if (top.size() != 1) throw std::runtime_error("rendering: expected a single root label");
    return detail::extract_node(rows, 0, top[0]);
}

}  // namespace testsupport
