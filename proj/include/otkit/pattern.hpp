#pragma once

// Pattern dialect of the constraint stream editor.
//
// Supported atoms: literal bytes, `.` (any byte), bracket classes with
// negation, `]`-first literal, ranges and escaped members, `\n`, and a final
// `$` end anchor. `*` makes the preceding atom a greedy Kleene star.
// Matching is leftmost-longest over this operator set; substitution scans
// forward, resuming just past each replacement, and advances by one byte
// over empty matches.

#include <bitset>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "otkit/error.hpp"

namespace otkit {

struct PatternAtom {
    enum class Kind { Literal, Any, Class, End };
    Kind kind = Kind::Literal;
    unsigned char ch = 0;        // Literal
    bool negated = false;        // Class
    std::bitset<256> members;    // Class
    bool starred = false;
};

struct Pattern {
    std::vector<PatternAtom> atoms;
    std::string source;
};

namespace detail {

inline bool atom_matches(const PatternAtom& a, unsigned char c) {
    switch (a.kind) {
    case PatternAtom::Kind::Literal: return c == a.ch;
    case PatternAtom::Kind::Any: return true;
    case PatternAtom::Kind::Class: return a.members.test(c) != a.negated;
    case PatternAtom::Kind::End: return false;
    }
    return false;
}

inline bool match_here(const std::vector<PatternAtom>& atoms, std::size_t i,
                       const std::string& s, std::size_t pos, std::size_t& end) {
    if (i == atoms.size()) {
        end = pos;
        return true;
    }
    const PatternAtom& a = atoms[i];
    if (a.kind == PatternAtom::Kind::End)
        return pos == s.size() && match_here(atoms, i + 1, s, pos, end);
    if (a.starred) {
        std::size_t limit = pos;
        while (limit < s.size() && atom_matches(a, static_cast<unsigned char>(s[limit]))) ++limit;
        for (std::size_t next = limit + 1; next-- > pos;)  // greedy: longest first
            if (match_here(atoms, i + 1, s, next, end)) return true;
        return false;
    }
    if (pos < s.size() && atom_matches(a, static_cast<unsigned char>(s[pos])))
        return match_here(atoms, i + 1, s, pos + 1, end);
    return false;
}

inline PatternAtom parse_class(const std::string& text, std::size_t& pos, int line) {
    PatternAtom atom;
    atom.kind = PatternAtom::Kind::Class;
    ++pos;  // '['
    if (pos < text.size() && text[pos] == '^') {
        atom.negated = true;
        ++pos;
    }
    if (pos < text.size() && text[pos] == ']') {
        atom.members.set(static_cast<unsigned char>(']'));
        ++pos;
    }
    while (pos < text.size() && text[pos] != ']') {
        unsigned char member;
        char c = text[pos];
        if (c == '\\') {
            if (pos + 1 >= text.size()) throw ParseError(line, "unterminated class in pattern");
            char esc = text[pos + 1];
            if (std::string("[]*().{}").find(esc) == std::string::npos)
                throw ParseError(line, std::string("unsupported escape '\\") + esc + "' in class");
            member = static_cast<unsigned char>(esc);
            pos += 2;
        } else {
            member = static_cast<unsigned char>(c);
            ++pos;
        }
        // range: member '-' upper, with '-' literal when last in the class
        if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] != ']') {
            unsigned char hi;
            char u = text[pos + 1];
            if (u == '\\') {
                if (pos + 2 >= text.size()) throw ParseError(line, "unterminated class in pattern");
                char esc = text[pos + 2];
                if (std::string("[]*().{}").find(esc) == std::string::npos)
                    throw ParseError(line, std::string("unsupported escape '\\") + esc + "' in class");
                hi = static_cast<unsigned char>(esc);
                pos += 3;
            } else {
                hi = static_cast<unsigned char>(u);
                pos += 2;
            }
            if (hi < member) throw ParseError(line, "invalid range in class");
            for (unsigned int b = member; b <= hi; ++b) atom.members.set(b);
        } else {
            atom.members.set(member);
        }
    }
    if (pos >= text.size()) throw ParseError(line, "unterminated class in pattern");
    ++pos;  // ']'
    if (atom.members.none()) throw ParseError(line, "empty class in pattern");
    return atom;
}

}  // namespace detail

// Compiles the pattern half of a substitution. `line` is used for errors.
inline Pattern parse_pattern(const std::string& text, int line) {
    Pattern p;
    p.source = text;
    if (text.empty()) throw ParseError(line, "empty pattern");
    std::size_t pos = 0;
    while (pos < text.size()) {
        char c = text[pos];
        PatternAtom atom;
        switch (c) {
        case '.':
            atom.kind = PatternAtom::Kind::Any;
            ++pos;
            break;
        case '$':
            if (pos + 1 == text.size()) {
                atom.kind = PatternAtom::Kind::End;
                ++pos;
            } else {
                atom.kind = PatternAtom::Kind::Literal;
                atom.ch = '$';
                ++pos;
            }
            break;
        case '[':
            atom = detail::parse_class(text, pos, line);
            break;
        case '*':
            if (p.atoms.empty()) {  // nothing to repeat: literal, as in historical seds
                atom.kind = PatternAtom::Kind::Literal;
                atom.ch = '*';
                ++pos;
                break;
            }
            if (p.atoms.back().starred) throw ParseError(line, "nothing to repeat for '*'");
            p.atoms.back().starred = true;
            ++pos;
            continue;
        case '^':
            if (pos == 0) throw ParseError(line, "start anchor '^' is not supported");
            atom.kind = PatternAtom::Kind::Literal;
            atom.ch = '^';
            ++pos;
            break;
        case '\\': {
            if (pos + 1 >= text.size()) throw ParseError(line, "trailing backslash in pattern");
            char esc = text[pos + 1];
            atom.kind = PatternAtom::Kind::Literal;
            if (esc == 'n')
                atom.ch = '\n';
            else if (std::string("[]*().{}$/\\").find(esc) != std::string::npos)
                atom.ch = static_cast<unsigned char>(esc);
            else
                throw ParseError(line, std::string("unsupported escape '\\") + esc + "' in pattern");
            pos += 2;
            break;
        }
        default:
            atom.kind = PatternAtom::Kind::Literal;
            atom.ch = static_cast<unsigned char>(c);
            ++pos;
            break;
        }
        p.atoms.push_back(atom);
    }
    return p;
}

// Longest match starting exactly at pos; returns one-past-the-end position.
inline std::optional<std::size_t> match_at(const Pattern& p, const std::string& s, std::size_t pos) {
    std::size_t end = 0;
    if (detail::match_here(p.atoms, 0, s, pos, end)) return end;
    return std::nullopt;
}

// Replaces the leftmost match (every match with `global`) by `replacement`,
// which is plain text: escape processing happens at script parse time.
inline std::string substitute(const Pattern& p, const std::string& replacement,
                              const std::string& subject, bool global) {
    std::string out;
    std::size_t pos = 0;
    while (pos <= subject.size()) {
        std::optional<std::size_t> end = match_at(p, subject, pos);
        if (!end) {
            if (pos == subject.size()) break;
            out += subject[pos++];
            continue;
        }
        out += replacement;
        if (*end == pos) {  // empty match: emit one byte and move on
            if (pos == subject.size()) break;
            out += subject[pos++];
        } else {
            pos = *end;
        }
        if (!global) {
            out.append(subject, pos, std::string::npos);
            return out;
        }
    }
    return out;
}

}  // namespace otkit
