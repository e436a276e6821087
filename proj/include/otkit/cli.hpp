#pragma once

// Subcommand bodies. Each cmd_* takes explicit streams so tests can drive
// them without a process boundary; the binary wires them to stdio. All
// return a process exit code (0 ok, 1 error) and keep diagnostics off the
// data stream.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "otkit/error.hpp"
#include "otkit/eval.hpp"
#include "otkit/generate.hpp"
#include "otkit/grammar.hpp"
#include "otkit/render.hpp"
#include "otkit/script.hpp"

namespace otkit {

inline constexpr const char* kGrammarPathEnv = "OTKIT_GRAMMAR_PATH";

struct RunConfig {
    std::string grammar_name;
    std::vector<std::string> input_markers;
    int max_epenthesis = 0;
    std::vector<std::string> constraint_files;  // ranking order, highest first
    bool wrap_mode = false;
    bool prune_each = false;
};

struct GenArgument {
    std::string grammar_name;
    InputSpec input;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

inline std::string strip_quotes(const std::string& s) {
    if (s.size() >= 2 && s.front() == '\'' && s.back() == '\'') return s.substr(1, s.size() - 2);
    return s;
}

[[noreturn]] inline void bad_gen_argument(const std::string& why) {
    throw OtError("malformed argument (" + why +
                  "); expected \"GrammarName, [m1,...,mn], MaxEpenthetics\"");
}

inline int fail(std::ostream& err, const char* cmd, const std::string& msg) {
    err << "otkit " << cmd << ": " << msg << '\n';
    return 1;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw OtError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

inline std::string format_cycle(const std::vector<std::string>& cycle) {
    std::string out;
    for (const std::string& n : cycle) out += "'" + n + "' -> ";
    out += "'" + cycle.front() + "'";
    return out;
}

inline void reject_left_recursion(const GenGrammar& g) {
    std::vector<std::vector<std::string>> cycles = check_left_recursion(g);
    if (cycles.empty()) return;
    std::string msg = "grammar is left-recursive: ";
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (i) msg += "; ";
        msg += format_cycle(cycles[i]);
    }
    throw OtError(msg);
}

inline std::vector<ConstraintScript> load_scripts(const std::vector<std::string>& files,
                                                  bool wrap) {
    std::vector<ConstraintScript> out;
    for (const std::string& path : files) {
        std::string source = read_file(path);
        try {
            ConstraintScript s = parse_script(path, source);
            out.push_back(wrap ? wrap_script(s) : s);
        } catch (const ParseError& e) {
            throw OtError(path + ": " + e.what());
        }
    }
    return out;
}

inline ConstraintScript join_scripts(const std::vector<ConstraintScript>& scripts) {
    ConstraintScript joined;
    for (const ConstraintScript& s : scripts)
        joined.commands.insert(joined.commands.end(), s.commands.begin(), s.commands.end());
    return joined;
}

}  // namespace detail

// `GrammarName, [m1,...,mn], MaxEpenthetics`; single quotes around a marker
// are stripped.
inline GenArgument parse_gen_argument(const std::string& text) {
    GenArgument out;
    std::size_t open = text.find('[');
    std::size_t comma = text.find(',');
    if (comma == std::string::npos || open == std::string::npos || comma > open)
        detail::bad_gen_argument("missing marker list");
    out.grammar_name = detail::trim(text.substr(0, comma));
    if (out.grammar_name.empty()) detail::bad_gen_argument("empty grammar name");
    std::size_t close = text.find(']', open);
    if (close == std::string::npos) detail::bad_gen_argument("unterminated marker list");
    std::string list = detail::trim(text.substr(open + 1, close - open - 1));
    if (!list.empty()) {
        std::size_t pos = 0;
        for (;;) {
            std::size_t next = list.find(',', pos);
            std::string marker = detail::trim(
                next == std::string::npos ? list.substr(pos) : list.substr(pos, next - pos));
            marker = detail::strip_quotes(marker);
            if (marker.empty()) detail::bad_gen_argument("empty marker");
            out.input.markers.push_back(marker);
            if (next == std::string::npos) break;
            pos = next + 1;
        }
    }
    std::string tail = detail::trim(text.substr(close + 1));
    if (tail.empty() || tail[0] != ',') detail::bad_gen_argument("missing epenthesis bound");
    tail = detail::trim(tail.substr(1));
    if (tail.empty()) detail::bad_gen_argument("missing epenthesis bound");
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(tail, &used);
    } catch (const std::exception&) {
        detail::bad_gen_argument("epenthesis bound is not a number");
    }
    if (used != tail.size()) detail::bad_gen_argument("trailing text after epenthesis bound");
    out.input.max_epenthesis = value;
    return out;
}

// Search order: current directory, then the directories in
// OTKIT_GRAMMAR_PATH (colon-separated). `.gen` is appended when absent.
inline std::string find_grammar_file(const std::string& name) {
    std::string filename = name;
    if (filename.size() < 4 || filename.substr(filename.size() - 4) != ".gen")
        filename += ".gen";
    if (std::filesystem::exists(filename)) return filename;
    if (const char* env = std::getenv(kGrammarPathEnv)) {
        std::string path(env);
        std::size_t pos = 0;
        while (pos <= path.size()) {
            std::size_t next = path.find(':', pos);
            std::string dir = next == std::string::npos ? path.substr(pos)
                                                        : path.substr(pos, next - pos);
            if (!dir.empty()) {
                std::filesystem::path candidate = std::filesystem::path(dir) / filename;
                if (std::filesystem::exists(candidate)) return candidate.string();
            }
            if (next == std::string::npos) break;
            pos = next + 1;
        }
    }
    throw OtError("grammar file '" + filename + "' not found (searched the current directory and $" +
                  std::string(kGrammarPathEnv) + ")");
}

// Loads and validates; prints the grammar's warnings to err.
inline GenGrammar load_grammar(const std::string& path, std::ostream& err) {
    std::string source = detail::read_file(path);
    try {
        GenGrammar g = parse_gen_grammar(source);
        for (const Diagnostic& w : g.warnings) {
            err << path << ": warning: ";
            if (w.line > 0) err << "line " << w.line << ": ";
            err << w.message << '\n';
        }
        return g;
    } catch (const ParseError& e) {
        throw OtError(path + ": " + e.what());
    }
}

inline int cmd_gen(const std::string& argument, std::ostream& out, std::ostream& err) {
    try {
        GenArgument arg = parse_gen_argument(argument);
        GenGrammar g = load_grammar(find_grammar_file(arg.grammar_name), err);
        detail::reject_left_recursion(g);
        generate(g, arg.input, [&](const CandidateTree& t) { out << flatten_line(t) << '\n'; });
        return 0;
    } catch (const OtError& e) {
        return detail::fail(err, "gen", e.what());
    }
}

inline int cmd_con(const std::vector<std::string>& files, bool wrap, std::istream& in,
                   std::ostream& out, std::ostream& err) {
    try {
        ConstraintScript joined = detail::join_scripts(detail::load_scripts(files, wrap));
        std::string line;
        int n = 0;
        while (std::getline(in, line)) {
            ++n;
            if (line.find('.') == std::string::npos)
                throw ParseError(n, "candidate line has no '.'");
            out << run_script_on_line(joined, line) << '\n';
        }
        return 0;
    } catch (const OtError& e) {
        return detail::fail(err, "con", e.what());
    }
}

inline int cmd_eval(std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
        for (const std::string& l : eval_sort(lines)) out << l << '\n';
        return 0;
    } catch (const OtError& e) {
        return detail::fail(err, "eval", e.what());
    }
}

inline int cmd_prune(std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
        for (const std::string& l : prune(lines)) out << l << '\n';
        return 0;
    } catch (const OtError& e) {
        return detail::fail(err, "prune", e.what());
    }
}

// Renders the first line's candidate; the rest of the stream is drained so
// an upstream writer is not cut off mid-pipe.
inline int cmd_tree(std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        std::string line;
        if (!std::getline(in, line)) throw OtError("empty input, nothing to display");
        CandidateTree t = parse_flat(line, 1);
        std::string drain;
        while (std::getline(in, drain)) {
        }
        out << render_tree(t);
        return 0;
    } catch (const OtError& e) {
        return detail::fail(err, "tree", e.what());
    }
}

inline int cmd_count(std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
        for (const std::string& l : count_format(lines)) out << l << '\n';
        return 0;
    } catch (const OtError& e) {
        return detail::fail(err, "count", e.what());
    }
}

inline int cmd_show(std::istream& in, std::ostream& out, int page_height,
                    const std::function<int()>& read_key, std::ostream& err) {
    (void)err;
    paginate(in, out, page_height, read_key);
    return 0;
}

inline int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        GenGrammar g = load_grammar(find_grammar_file(config.grammar_name), err);
        detail::reject_left_recursion(g);
        std::vector<ConstraintScript> scripts =
            detail::load_scripts(config.constraint_files, config.wrap_mode);
        InputSpec input{config.input_markers, config.max_epenthesis};
        std::vector<std::string> lines;
        generate(g, input, [&](const CandidateTree& t) { lines.push_back(flatten_line(t)); });
        std::size_t total = lines.size();
        if (lines.empty()) throw OtError("no candidates generated");
        std::string winner;
        if (config.prune_each) {
            for (const ConstraintScript& s : scripts) {
                for (std::string& l : lines) l = run_script_on_line(s, l);
                lines = prune(lines);
            }
            winner = lines.front();
        } else {
            ConstraintScript joined = detail::join_scripts(scripts);
            for (std::string& l : lines) l = run_script_on_line(joined, l);
            winner = eval_sort(lines).front();
        }
        AnnotatedLine split = split_annotated(winner);
        out << "winner: " << winner << '\n';
        out << "vector: " << split.vector << '\n';
        out << "candidates: " << total << "\n\n";
        out << render_tree(parse_flat(winner, 0));
        return 0;
    } catch (const OtError& e) {
        return detail::fail(err, "run", e.what());
    }
}

}  // namespace otkit
