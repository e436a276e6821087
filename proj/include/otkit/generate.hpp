#pragma once

// Candidate generation.
//
// Enumerates every derivation of the input under the grammar, in a fixed
// order: outer loop over the epenthesis budget k = 0..max (each candidate
// of the k-th round contains exactly k empty leaves), middle loop over
// underparsing configurations counted in binary with the last input marker
// as the least significant bit, inner depth-first leftmost derivation.
// At a category choice point the rules labelled with the pending input
// marker are tried first (in file order), then the unlabelled rules in
// file order. Labelled rules fire only by consuming their marker.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "otkit/error.hpp"
#include "otkit/grammar.hpp"

namespace otkit {

struct InputSpec {
    std::vector<std::string> markers;
    int max_epenthesis = 0;
};

enum class NodeKind { Internal, Terminal, Empty, Underparse };

struct CandidateTree {
    NodeKind kind = NodeKind::Internal;
    std::string name;                     // Internal category or Terminal text
    std::vector<CandidateTree> children;  // Internal: one or more; Underparse: exactly one
};

namespace detail {

inline void flatten_into(const CandidateTree& t, std::string& out) {
    switch (t.kind) {
    case NodeKind::Terminal:
        out += t.name;
        break;
    case NodeKind::Empty:
        out += "[]";
        break;
    case NodeKind::Underparse:
        out += '{';
        flatten_into(t.children.front(), out);
        out += '}';
        break;
    case NodeKind::Internal:
        out += t.name;
        out += '(';
        for (std::size_t i = 0; i < t.children.size(); ++i) {
            if (i) out += ',';
            flatten_into(t.children[i], out);
        }
        out += ')';
        break;
    }
}

class Enumerator {
public:
    Enumerator(const GenGrammar& grammar, const InputSpec& input,
               const std::function<void(const CandidateTree&)>& sink)
        : grammar_(grammar), input_(input), sink_(sink) {
        for (const std::string& m : input.markers) {
            std::vector<const Rule*> rules = resolve_label(grammar, m);
            marker_rules_.push_back(std::move(rules));
        }
        for (const Rule& r : grammar.rules)
            if (!r.label) unlabelled_.push_back(&r);
        underparsed_.assign(input.markers.size(), false);
    }

    void run() {
        std::size_t n = input_.markers.size();
        for (int k = 0; k <= input_.max_epenthesis; ++k) {
            unsigned long long configs = 1ULL << n;
            for (unsigned long long cfg = 0; cfg < configs; ++cfg) {
                for (std::size_t i = 0; i < n; ++i)
                    underparsed_[i] = (cfg >> (n - 1 - i)) & 1ULL;
                next_ = 0;
                empties_ = k;
                derive_cat(grammar_.startsymbol, [&](CandidateTree&& t) {
                    if (next_ == n && empties_ == 0) sink_(t);
                });
            }
        }
    }

private:
    using NodeCont = std::function<void(CandidateTree&&)>;

    void derive_cat(const std::string& cat, const NodeCont& cont) {
        if (next_ < input_.markers.size()) {
            std::size_t i = next_;
            for (const Rule* r : marker_rules_[i]) {
                if (r->lhs != cat) continue;
                next_ = i + 1;
                std::vector<CandidateTree> acc;
                derive_seq(r->rhs, 0, acc, [&] {
                    CandidateTree node{NodeKind::Internal, r->lhs, acc};
                    if (underparsed_[i]) {
                        CandidateTree wrap{NodeKind::Underparse, "", {}};
                        wrap.children.push_back(std::move(node));
                        cont(std::move(wrap));
                    } else {
                        cont(std::move(node));
                    }
                });
                next_ = i;
            }
        }
        for (const Rule* r : unlabelled_) {
            if (r->lhs != cat) continue;
            std::vector<CandidateTree> acc;
            derive_seq(r->rhs, 0, acc, [&] {
                cont(CandidateTree{NodeKind::Internal, r->lhs, acc});
            });
        }
    }

    void derive_seq(const std::vector<SymbolRef>& rhs, std::size_t idx,
                    std::vector<CandidateTree>& acc, const std::function<void()>& cont) {
        if (idx == rhs.size()) {
            cont();
            return;
        }
        const SymbolRef& s = rhs[idx];
        switch (s.kind) {
        case SymbolKind::Terminal:
            acc.push_back(CandidateTree{NodeKind::Terminal, s.name, {}});
            derive_seq(rhs, idx + 1, acc, cont);
            acc.pop_back();
            break;
        case SymbolKind::Empty:
            if (empties_ > 0) {
                --empties_;
                acc.push_back(CandidateTree{NodeKind::Empty, "", {}});
                derive_seq(rhs, idx + 1, acc, cont);
                acc.pop_back();
                ++empties_;
            }
            break;
        case SymbolKind::Nonterminal:
            derive_cat(s.name, [&](CandidateTree&& t) {
                acc.push_back(std::move(t));
                derive_seq(rhs, idx + 1, acc, cont);
                acc.pop_back();
            });
            break;
        }
    }

    const GenGrammar& grammar_;
    const InputSpec& input_;
    const std::function<void(const CandidateTree&)>& sink_;
    std::vector<std::vector<const Rule*>> marker_rules_;
    std::vector<const Rule*> unlabelled_;
    std::vector<bool> underparsed_;
    std::size_t next_ = 0;
    int empties_ = 0;
};

}  // namespace detail

// Serialization without the line terminator.
inline std::string flatten(const CandidateTree& t) {
    std::string out;
    detail::flatten_into(t, out);
    return out;
}

// One output line, `.`-terminated.
inline std::string flatten_line(const CandidateTree& t) {
    return flatten(t) + ".";
}

// Calls sink once per candidate, in the normative order. The tree passed to
// the sink is only valid for the duration of the call.
inline void generate(const GenGrammar& grammar, const InputSpec& input,
                     const std::function<void(const CandidateTree&)>& sink) {
    if (input.max_epenthesis < 0) throw OtError("negative epenthesis budget");
    if (input.markers.size() >= 64) throw OtError("too many input markers");
    std::vector<std::vector<std::string>> cycles = check_left_recursion(grammar);
    if (!cycles.empty()) {
        std::string msg = "grammar is left-recursive: ";
        for (std::size_t i = 0; i < cycles.front().size(); ++i) {
            if (i) msg += " -> ";
            msg += "'" + cycles.front()[i] + "'";
        }
        msg += " -> '" + cycles.front().front() + "'";
        throw OtError(msg);
    }
    detail::Enumerator e(grammar, input, sink);
    e.run();
}

inline std::size_t count_candidates(const GenGrammar& grammar, const InputSpec& input) {
    std::size_t n = 0;
    generate(grammar, input, [&](const CandidateTree&) { ++n; });
    return n;
}

}  // namespace otkit
