#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "prodcheck/parser.hpp"
#include "prodcheck/term.hpp"
#include "prodcheck/unify.hpp"

namespace testing_support {

using namespace prodcheck;

inline std::string corpus(const std::string& name) { return std::string(PRODCHECK_CORPUS_DIR) + "/" + name; }

inline Program load(const std::string& name) { return load_program(corpus(name)); }

inline Term T(const std::string& text) { return parse_goal(text).as_term(); }
inline Atom A(const std::string& text) { return parse_goal(text); }

// Renames variables to _0, _1, ... by first occurrence.
inline std::string normalized(const Term& t, std::map<std::string, std::string>& names) {
    if (t.is_variable()) {
        auto it = names.find(t.name());
        if (it == names.end()) it = names.emplace(t.name(), "_" + std::to_string(names.size())).first;
        return it->second;
    }
    std::string s = t.name();
    if (t.arity() == 0) return s;
    s += "(";
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) s += ",";
        s += normalized(t.arg(i), names);
    }
    return s + ")";
}

inline std::string normalized(const Term& t) {
    std::map<std::string, std::string> names;
    return normalized(t, names);
}

inline bool variant(const Term& a, const Term& b) { return normalized(a) == normalized(b); }

// Small random terms over a fixed signature.
struct TermGen {
    std::mt19937 rng;
    std::vector<std::pair<std::string, std::size_t>> functors; // name, arity
    std::vector<std::string> vars;

    TermGen(unsigned seed, std::vector<std::pair<std::string, std::size_t>> fs, std::vector<std::string> vs)
        : rng(seed), functors(std::move(fs)), vars(std::move(vs)) {}

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

    Term term(int depth) {
        bool leaf = depth <= 0 || pick(3) == 0;
        if (!vars.empty() && (leaf || pick(4) == 0) && pick(2) == 0) return Term::variable(vars[pick(vars.size())]);
        std::vector<std::size_t> choices;
        for (std::size_t i = 0; i < functors.size(); ++i)
            if (leaf ? functors[i].second == 0 : true) choices.push_back(i);
        if (choices.empty()) return Term::variable(vars[pick(vars.size())]);
        const auto& [name, arity] = functors[choices[pick(choices.size())]];
        std::vector<Term> args;
        for (std::size_t i = 0; i < arity; ++i) args.push_back(term(depth - 1));
        return Term::compound(name, std::move(args));
    }
};

} // namespace testing_support
