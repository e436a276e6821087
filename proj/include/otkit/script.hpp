#pragma once

// Constraint scripts: a small stream-editor dialect.
//
// A script is a list of commands, several per line when separated by `;`.
// Supported commands: h (copy pattern space to hold), x (exchange), G
// (append newline + hold to pattern space), s/Pat/Rep/(g). Blank lines and
// lines starting with `#` are ignored. Anything else is an error: the point
// of the dialect is that a script which parses here runs identically under
// a classical stream editor.

#include <cstddef>
#include <string>
#include <vector>

#include "otkit/error.hpp"
#include "otkit/pattern.hpp"

namespace otkit {

struct Command {
    enum class Kind { HoldCopy, Exchange, AppendHold, Substitute };
    Kind kind = Kind::HoldCopy;
    Pattern pattern;          // Substitute only
    std::string replacement;  // Substitute only, escapes already resolved
    bool global = false;      // Substitute only
    int source_line = 0;
};

struct ConstraintScript {
    std::string name;
    std::vector<Command> commands;
};

namespace detail {

inline std::string parse_replacement(const std::string& raw, int line) {
    std::string out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        char c = raw[i];
        if (c == '&')
            throw ParseError(line, "'&' in replacement is not supported");
        if (c != '\\') {
            out += c;
            continue;
        }
        if (i + 1 >= raw.size()) throw ParseError(line, "trailing backslash in replacement");
        char esc = raw[++i];
        switch (esc) {
        case '*': out += '*'; break;
        case '\'': out += '\''; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        default:
            if (esc >= '1' && esc <= '9')
                throw ParseError(line, "backreferences in replacement are not supported");
            throw ParseError(line, std::string("unsupported escape '\\") + esc + "' in replacement");
        }
    }
    return out;
}

// Scans one s/// field up to an unescaped delimiter; keeps escapes intact.
inline std::string scan_field(const std::string& text, std::size_t& pos, int line,
                              const char* what) {
    std::string raw;
    while (pos < text.size() && text[pos] != '/') {
        if (text[pos] == '\\') {
            if (pos + 1 >= text.size()) throw ParseError(line, "trailing backslash in pattern");
            raw += text[pos];
            raw += text[pos + 1];
            pos += 2;
        } else {
            raw += text[pos++];
        }
    }
    if (pos >= text.size())
        throw ParseError(line, std::string("unterminated ") + what + " in 's' command");
    ++pos;  // delimiter
    return raw;
}

inline Command parse_substitute(const std::string& text, std::size_t& pos, int line) {
    ++pos;  // 's'
    if (pos >= text.size() || text[pos] != '/')
        throw ParseError(line, "expected '/' after 's'");
    ++pos;
    std::string raw_pattern = scan_field(text, pos, line, "pattern");
    std::string raw_replacement = scan_field(text, pos, line, "replacement");
    Command cmd;
    cmd.kind = Command::Kind::Substitute;
    cmd.source_line = line;
    cmd.pattern = parse_pattern(raw_pattern, line);
    cmd.replacement = parse_replacement(raw_replacement, line);
    while (pos < text.size() && text[pos] == 'g') {
        if (cmd.global) throw ParseError(line, "duplicate 'g' flag");
        cmd.global = true;
        ++pos;
    }
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
        ++pos;  // trailing layout before ';' or end of line
    if (pos < text.size() && text[pos] != ';')
        throw ParseError(line, std::string("unsupported flag '") + text[pos] + "' on 's' command");
    return cmd;
}

}  // namespace detail

inline ConstraintScript parse_script(const std::string& name, const std::string& source) {
    ConstraintScript script;
    script.name = name;
    std::size_t pos = 0;
    int line = 0;
    while (pos <= source.size()) {
        ++line;
        std::size_t eol = source.find('\n', pos);
        std::string text = source.substr(pos, eol == std::string::npos ? std::string::npos
                                                                       : eol - pos);
        pos = eol == std::string::npos ? source.size() + 1 : eol + 1;
        if (text.empty() || text[0] == '#') continue;
        std::size_t i = 0;
        bool expect_command = true;
        while (i < text.size()) {
            char c = text[i];
            if (c == ' ' || c == '\t') {
                ++i;
                continue;
            }
            if (c == ';') {
                ++i;  // empty command slot, as the reference tool allows
                expect_command = true;
                continue;
            }
            if (!expect_command)
                throw ParseError(line, "expected ';' between commands");
            Command cmd;
            cmd.source_line = line;
            switch (c) {
            case 'h': cmd.kind = Command::Kind::HoldCopy; ++i; break;
            case 'x': cmd.kind = Command::Kind::Exchange; ++i; break;
            case 'G': cmd.kind = Command::Kind::AppendHold; ++i; break;
            case 's': cmd = detail::parse_substitute(text, i, line); break;
            default:
                throw ParseError(line, std::string("unsupported command '") + c + "'");
            }
            script.commands.push_back(cmd);
            expect_command = false;
        }
        if (eol == std::string::npos) break;
    }
    return script;
}

// Runs one script over one line (which must not itself contain a newline).
// The hold buffer starts empty for every line.
inline std::string run_script_on_line(const ConstraintScript& script, const std::string& line) {
    std::string space = line;
    std::string hold;
    for (const Command& cmd : script.commands) {
        switch (cmd.kind) {
        case Command::Kind::HoldCopy:
            hold = space;
            break;
        case Command::Kind::Exchange:
            std::swap(space, hold);
            break;
        case Command::Kind::AppendHold:
            space += '\n';
            space += hold;
            break;
        case Command::Kind::Substitute:
            space = substitute(cmd.pattern, cmd.replacement, space, cmd.global);
            break;
        }
    }
    return space;
}

// Applies several scripts to a line the way a single editor invocation with
// several script files would: one command list, one shared buffer pair.
inline std::string run_constraints_on_line(const std::vector<ConstraintScript>& scripts,
                                           const std::string& line) {
    ConstraintScript joined;
    for (const ConstraintScript& s : scripts)
        joined.commands.insert(joined.commands.end(), s.commands.begin(), s.commands.end());
    return run_script_on_line(joined, line);
}

// Shipped scripts share a fixed prologue and epilogue; --wrap builds a full
// script out of a main part that lacks them.
inline const ConstraintScript& standard_prologue() {
    static const ConstraintScript s = parse_script("prologue",
                                                   "h\n"
                                                   "s/\\..*//g\n");
    return s;
}

inline const ConstraintScript& standard_epilogue() {
    static const ConstraintScript s = parse_script("epilogue",
                                                   "s/[^\\*]//g\n"
                                                   "x;G\n"
                                                   "s/\\n/\\'/\n");
    return s;
}

inline ConstraintScript wrap_script(const ConstraintScript& main_part) {
    ConstraintScript out;
    out.name = main_part.name;
    const ConstraintScript& pro = standard_prologue();
    const ConstraintScript& epi = standard_epilogue();
    out.commands.insert(out.commands.end(), pro.commands.begin(), pro.commands.end());
    out.commands.insert(out.commands.end(), main_part.commands.begin(), main_part.commands.end());
    out.commands.insert(out.commands.end(), epi.commands.begin(), epi.commands.end());
    return out;
}

}  // namespace otkit
