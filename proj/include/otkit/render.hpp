#pragma once

// Tree display, COUNT reformatting, pagination.
//
// render_tree draws the classic ASCII tree: a node's label row, a `|` stub,
// a connector row with a `.` junction above each child (dashes in between
// for several children), the children's `|` stubs, then the children.
// Levels advance in lockstep, four rows per depth. Labels are lowercased
// for display only; `{}` names an underparse wrapper, `[]` an empty leaf.
// Column metrics are deterministic but not a stable interface; consume the
// structure, not the spacing.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "otkit/error.hpp"
#include "otkit/eval.hpp"
#include "otkit/generate.hpp"

namespace otkit {

namespace detail {

struct FlatParser {
    const std::string& text;
    std::size_t pos = 0;
    int line_number;

    FlatParser(const std::string& t, int ln) : text(t), line_number(ln) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(line_number, what + " at column " + std::to_string(pos + 1));
    }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    CandidateTree parse_node() {
        char c = peek();
        if (c == '[') {
            if (pos + 1 >= text.size() || text[pos + 1] != ']') fail("expected '[]'");
            pos += 2;
            return CandidateTree{NodeKind::Empty, "", {}};
        }
        if (c == '{') {
            ++pos;
            CandidateTree wrap{NodeKind::Underparse, "", {}};
            wrap.children.push_back(parse_node());
            if (peek() != '}') fail("unbalanced '{'");
            ++pos;
            return wrap;
        }
        std::string name;
        while (pos < text.size() && std::string("(){}[],.").find(text[pos]) == std::string::npos)
            name += text[pos++];
        if (name.empty()) fail("expected a node name");
        if (peek() != '(') return CandidateTree{NodeKind::Terminal, name, {}};
        ++pos;
        CandidateTree node{NodeKind::Internal, name, {}};
        for (;;) {
            node.children.push_back(parse_node());
            if (peek() == ',') {
                ++pos;
                continue;
            }
            if (peek() == ')') {
                ++pos;
                return node;
            }
            fail("unbalanced '('");
        }
    }
};

struct RenderBlock {
    std::vector<std::string> rows;
    std::size_t conn = 0;  // column where the link to the parent attaches
    std::size_t width = 0;
};

inline void put_at(std::string& row, std::size_t col, const std::string& s) {
    if (row.size() < col + s.size()) row.resize(col + s.size(), ' ');
    row.replace(col, s.size(), s);
}

inline std::string display_label(const CandidateTree& t) {
    switch (t.kind) {
    case NodeKind::Empty: return "[]";
    case NodeKind::Underparse: return "{}";
    default: break;
    }
    std::string out = t.name;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

inline RenderBlock layout(const CandidateTree& t) {
    std::string label = display_label(t);
    if (t.children.empty()) {
        RenderBlock b;
        b.rows.push_back(label);
        b.conn = (label.size() - 1) / 2;
        b.width = label.size();
        return b;
    }
    std::vector<RenderBlock> kids;
    kids.reserve(t.children.size());
    std::size_t height = 0;
    for (const CandidateTree& c : t.children) {
        kids.push_back(layout(c));
        height = std::max(height, kids.back().rows.size());
    }
    std::vector<std::string> body(height);
    std::vector<std::size_t> conns;
    std::size_t cursor = 0;
    for (const RenderBlock& k : kids) {
        if (cursor) cursor += 2;
        for (std::size_t r = 0; r < k.rows.size(); ++r)
            put_at(body[r], cursor, k.rows[r]);
        conns.push_back(cursor + k.conn);
        cursor += k.width;
    }
    std::size_t conn = (conns.front() + conns.back()) / 2;
    std::size_t half = (label.size() - 1) / 2;
    std::size_t shift = conn < half ? half - conn : 0;
    if (shift) {
        for (std::string& row : body)
            if (!row.empty()) row.insert(0, shift, ' ');
        for (std::size_t& c : conns) c += shift;
        conn += shift;
        cursor += shift;
    }
    RenderBlock b;
    b.rows.resize(4);
    put_at(b.rows[0], conn - half, label);
    put_at(b.rows[1], conn, "|");
    if (conns.size() == 1) {
        put_at(b.rows[2], conns.front(), ".");
    } else {
        std::string run(conns.back() - conns.front() + 1, '-');
        for (std::size_t c : conns) run[c - conns.front()] = '.';
        put_at(b.rows[2], conns.front(), run);
    }
    for (std::size_t c : conns) put_at(b.rows[3], c, "|");
    b.rows.insert(b.rows.end(), body.begin(), body.end());
    b.conn = conn;
    b.width = std::max(cursor, conn - half + label.size());
    for (const std::string& row : b.rows) b.width = std::max(b.width, row.size());
    return b;
}

}  // namespace detail

// Inverse of flatten. Accepts a full annotated line: everything from the
// terminating `.` on is ignored. line_number positions error messages.
inline CandidateTree parse_flat(const std::string& line, int line_number = 0) {
    detail::FlatParser p(line, line_number);
    CandidateTree tree = p.parse_node();
    if (p.peek() != '.') p.fail("expected '.' after candidate");
    return tree;
}

inline std::string render_tree(const CandidateTree& t) {
    detail::RenderBlock b = detail::layout(t);
    std::string out;
    for (std::string& row : b.rows) {
        while (!row.empty() && row.back() == ' ') row.pop_back();
        out += row;
        out += '\n';
    }
    return out;
}

// Tableau display: per input line, three output lines: the 1-based index,
// the candidate without its trailing dot, the violation vector.
inline std::vector<std::string> count_format(const std::vector<std::string>& lines) {
    std::vector<std::string> out;
    out.reserve(lines.size() * 3);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        AnnotatedLine split = split_annotated(lines[i], static_cast<int>(i + 1));
        out.push_back(std::to_string(i + 1));
        out.push_back(split.candidate.substr(0, split.candidate.size() - 1));
        out.push_back(split.vector);
    }
    return out;
}

// Copies lines from in to out, pausing every page_height lines for a key:
// space continues, q (or end of key input) quits, other keys are ignored.
// With no key source the stream is copied through unpaged.
inline void paginate(std::istream& in, std::ostream& out, int page_height,
                     const std::function<int()>& read_key) {
    std::string line;
    int emitted = 0;
    while (std::getline(in, line)) {
        out << line << '\n';
        if (!read_key || page_height <= 0) continue;
        if (++emitted < page_height) continue;
        if (in.peek() == std::char_traits<char>::eof()) break;  // no prompt after the last line
        out.flush();
        for (;;) {
            int key = read_key();
            if (key == ' ') {
                emitted = 0;
                break;
            }
            if (key == 'q' || key == 'Q' || key < 0) return;
        }
    }
}

}  // namespace otkit
