#pragma once

// Labelled context-free grammars in the .gen file format.
//
// A grammar file holds an optional start symbol declaration and a list of
// production rules, each terminated by a period:
//
//   startsymbol word.
//   word ---> ft, ft.            % plain rule
//   a # 'Rt' ---> "SONORANT".    % rule labelled with input marker a
//   'Rt' ---> [].                % rewrites into the built-in empty terminal
//
// Nonterminals are lowercase-initial atoms or arbitrary single-quoted atoms
// (quotes are stripped). Double-quoted symbols are terminals. `%` starts a
// comment running to end of line. Input must be 7-bit ASCII.

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "otkit/error.hpp"

namespace otkit {

enum class SymbolKind { Nonterminal, Terminal, Empty };

struct SymbolRef {
    SymbolKind kind = SymbolKind::Nonterminal;
    std::string name;  // empty for SymbolKind::Empty

    bool operator==(const SymbolRef&) const = default;
};

struct Rule {
    std::string lhs;
    std::vector<SymbolRef> rhs;        // never empty
    std::optional<std::string> label;  // input marker for labelled rules
    int source_line = 0;
};

struct GenGrammar {
    std::vector<Rule> rules;  // textual order
    std::string startsymbol;
    bool defaulted_start = false;
    std::vector<Diagnostic> warnings;
    std::map<std::string, std::vector<std::size_t>> labels;  // marker -> rule indices
};

namespace detail {

enum class GenTok { Atom, Str, Empty, Arrow, Hash, Comma, Period, End };

struct GenToken {
    GenTok kind;
    std::string text;
    int line;
};

class GenLexer {
public:
    explicit GenLexer(const std::string& src) : src_(src) {}

    GenToken next() {
        skip_layout();
        if (pos_ >= src_.size()) return {GenTok::End, "", line_};
        int line = line_;
        char c = src_[pos_];
        if (static_cast<unsigned char>(c) >= 0x80)
            throw ParseError(line, "non-ASCII character in grammar");
        switch (c) {
        case ',': ++pos_; return {GenTok::Comma, ",", line};
        case '.': ++pos_; return {GenTok::Period, ".", line};
        case '#': ++pos_; return {GenTok::Hash, "#", line};
        case '[':
            ++pos_;
            if (pos_ >= src_.size() || src_[pos_] != ']')
                throw ParseError(line, "expected ']' after '[' (only the empty terminal [] is allowed)");
            ++pos_;
            return {GenTok::Empty, "[]", line};
        case '-': return lex_arrow(line);
        case '\'': return lex_quoted(line, '\'', GenTok::Atom);
        case '"': return lex_quoted(line, '"', GenTok::Str);
        default: break;
        }
        if (std::islower(static_cast<unsigned char>(c))) return lex_bare_atom(line);
        if (std::isupper(static_cast<unsigned char>(c)))
            throw ParseError(line, "upper-case initial symbols must be single-quoted");
        throw ParseError(line, std::string("unexpected character '") + c + "'");
    }

private:
    void skip_layout() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
                ++pos_;
            } else if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else if (static_cast<unsigned char>(c) >= 0x80) {
                throw ParseError(line_, "non-ASCII character in grammar");
            } else {
                break;
            }
        }
    }

    GenToken lex_arrow(int line) {
        std::size_t dashes = 0;
        while (pos_ < src_.size() && src_[pos_] == '-') {
            ++dashes;
            ++pos_;
        }
        if (dashes != 3 || pos_ >= src_.size() || src_[pos_] != '>')
            throw ParseError(line, "malformed arrow (expected '--->')");
        ++pos_;
        return {GenTok::Arrow, "--->", line};
    }

    GenToken lex_quoted(int line, char quote, GenTok kind) {
        ++pos_;  // opening quote
        std::string text;
        while (pos_ < src_.size() && src_[pos_] != quote && src_[pos_] != '\n') {
            if (static_cast<unsigned char>(src_[pos_]) >= 0x80)
                throw ParseError(line, "non-ASCII character in grammar");
            text += src_[pos_++];
        }
        if (pos_ >= src_.size() || src_[pos_] != quote)
            throw ParseError(line, std::string("unbalanced ") + quote + " quote");
        ++pos_;
        if (text.empty()) throw ParseError(line, "empty quoted symbol");
        return {kind, text, line};
    }

    GenToken lex_bare_atom(int line) {
        std::string text;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                text += c, ++pos_;
            else
                break;
        }
        return {GenTok::Atom, text, line};
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

}  // namespace detail

// Parses .gen source text. Throws ParseError on malformed input; collects
// non-fatal notes (defaulted or repeated startsymbol) as warnings.
inline GenGrammar parse_gen_grammar(const std::string& source) {
    using detail::GenTok;
    detail::GenLexer lex(source);
    GenGrammar g;
    int start_decls = 0;

    detail::GenToken tok = lex.next();
    while (tok.kind != GenTok::End) {
        if (tok.kind == GenTok::Hash)
            throw ParseError(tok.line, "missing label before '#'");
        if (tok.kind != GenTok::Atom && tok.kind != GenTok::Str)
            throw ParseError(tok.line, "expected a rule or startsymbol declaration");

        detail::GenToken second = lex.next();

        // startsymbol declaration: `startsymbol name.`
        if (tok.kind == GenTok::Atom && tok.text == "startsymbol" &&
            second.kind != GenTok::Arrow && second.kind != GenTok::Hash) {
            if (second.kind != GenTok::Atom)
                throw ParseError(second.line, "startsymbol must name a nonterminal atom");
            detail::GenToken dot = lex.next();
            if (dot.kind != GenTok::Period)
                throw ParseError(dot.line, "missing '.' after startsymbol declaration");
            if (++start_decls > 1)
                g.warnings.push_back({second.line, "startsymbol redeclared; the last declaration wins"});
            g.startsymbol = second.text;
            tok = lex.next();
            continue;
        }

        Rule rule;
        rule.source_line = tok.line;
        if (second.kind == GenTok::Hash) {
            if (tok.kind != GenTok::Atom)
                throw ParseError(tok.line, "rule label must be an atom");
            rule.label = tok.text;
            detail::GenToken lhs = lex.next();
            if (lhs.kind != GenTok::Atom)
                throw ParseError(lhs.line, "missing rule after label '" + tok.text + " #'");
            rule.lhs = lhs.text;
            second = lex.next();
        } else {
            if (tok.kind != GenTok::Atom)
                throw ParseError(tok.line, "rule left-hand side must be an atom");
            rule.lhs = tok.text;
        }
        if (second.kind != GenTok::Arrow)
            throw ParseError(second.line, "expected '--->' in rule for '" + rule.lhs + "'");

        // right-hand side: one or more symbols separated by commas
        for (;;) {
            detail::GenToken sym = lex.next();
            switch (sym.kind) {
            case GenTok::Atom: rule.rhs.push_back({SymbolKind::Nonterminal, sym.text}); break;
            case GenTok::Str: rule.rhs.push_back({SymbolKind::Terminal, sym.text}); break;
            case GenTok::Empty: rule.rhs.push_back({SymbolKind::Empty, ""}); break;
            case GenTok::Period:
                if (rule.rhs.empty())
                    throw ParseError(sym.line, "empty right-hand side in rule for '" + rule.lhs + "'");
                throw ParseError(sym.line, "expected a symbol after ','");
            default:
                throw ParseError(sym.line, rule.rhs.empty()
                                               ? "empty right-hand side in rule for '" + rule.lhs + "'"
                                               : "expected a symbol in rule for '" + rule.lhs + "'");
            }
            detail::GenToken delim = lex.next();
            if (delim.kind == GenTok::Comma) continue;
            if (delim.kind == GenTok::Period) break;
            throw ParseError(delim.line, "missing '.' at end of rule for '" + rule.lhs + "'");
        }
        g.rules.push_back(std::move(rule));
        tok = lex.next();
    }

    if (start_decls == 0) {
        g.startsymbol = "word";
        g.defaulted_start = true;
        g.warnings.push_back({0, "no startsymbol declaration; defaulting to 'word'"});
    }
    for (std::size_t i = 0; i < g.rules.size(); ++i)
        if (g.rules[i].label) g.labels[*g.rules[i].label].push_back(i);
    return g;
}

// All rules carrying the given input marker, in textual order.
// Unknown markers are an error, mirroring generation-time marker lookup.
inline std::vector<const Rule*> resolve_label(const GenGrammar& g, const std::string& marker) {
    auto it = g.labels.find(marker);
    if (it == g.labels.end())
        throw OtError("input marker '" + marker + "' triggers no rule in the grammar");
    std::vector<const Rule*> rules;
    for (std::size_t i : it->second) rules.push_back(&g.rules[i]);
    return rules;
}

// Left-recursion check over the leftmost-symbol graph, restricted to
// nonterminals reachable from the start symbol. Returns every elementary
// cycle as a node sequence [n1, ..., nk] standing for n1 -> ... -> nk -> n1.
// An empty result means depth-first generation terminates on finite input.
inline std::vector<std::vector<std::string>> check_left_recursion(const GenGrammar& g) {
    std::set<std::string> reachable{g.startsymbol};
    for (bool grown = true; grown;) {
        grown = false;
        for (const Rule& r : g.rules) {
            if (!reachable.count(r.lhs)) continue;
            for (const SymbolRef& s : r.rhs)
                if (s.kind == SymbolKind::Nonterminal && reachable.insert(s.name).second)
                    grown = true;
        }
    }

    std::map<std::string, std::set<std::string>> edges;
    for (const Rule& r : g.rules)
        if (reachable.count(r.lhs) && r.rhs.front().kind == SymbolKind::Nonterminal)
            edges[r.lhs].insert(r.rhs.front().name);

    // Enumerate elementary cycles, each anchored at its smallest node.
    std::vector<std::vector<std::string>> cycles;
    std::vector<std::string> path;
    std::set<std::string> on_path;
    auto dfs = [&](auto&& self, const std::string& anchor, const std::string& node) -> void {
        path.push_back(node);
        on_path.insert(node);
        for (const std::string& next : edges[node]) {
            if (next == anchor)
                cycles.push_back(path);
            else if (next > anchor && !on_path.count(next))
                self(self, anchor, next);
        }
        on_path.erase(node);
        path.pop_back();
    };
    for (const auto& [anchor, _] : edges) dfs(dfs, anchor, anchor);
    return cycles;
}

// Renders a grammar back to .gen syntax; parsing the result reproduces the
// same rules, startsymbol and labels.
inline std::string grammar_to_text(const GenGrammar& g) {
    auto atom = [](const std::string& name) {
        bool bare = !name.empty() && std::islower(static_cast<unsigned char>(name[0]));
        for (char c : name)
            bare = bare && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        return bare ? name : "'" + name + "'";
    };
    std::string out = "startsymbol " + atom(g.startsymbol) + ".\n";
    for (const Rule& r : g.rules) {
        std::string line;
        if (r.label) line += atom(*r.label) + " # ";
        line += atom(r.lhs) + " ---> ";
        for (std::size_t i = 0; i < r.rhs.size(); ++i) {
            if (i) line += ", ";
            const SymbolRef& s = r.rhs[i];
            if (s.kind == SymbolKind::Nonterminal) line += atom(s.name);
            else if (s.kind == SymbolKind::Terminal) line += '"' + s.name + '"';
            else line += "[]";
        }
        out += line + ".\n";
    }
    return out;
}

}  // namespace otkit
