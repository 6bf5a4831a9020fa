#include "prodcheck/trs.hpp"

#include <algorithm>

namespace prodcheck {

ExistentialVariableError::ExistentialVariableError(std::size_t clause, std::string variable)
    : std::runtime_error("existential variable " + variable + " in clause " + std::to_string(clause)),
      clause_(clause), variable_(std::move(variable)) {}

namespace {

void require_no_existentials(const Clause& c) {
    const auto head_vars = variables(c.head);
    for (const auto& b : c.body)
        for (const auto& v : variables(b))
            if (std::find(head_vars.begin(), head_vars.end(), v) == head_vars.end())
                throw ExistentialVariableError(c.index, v);
}

} // namespace

std::vector<RewriteRule> translate(const Program& program) {
    std::vector<RewriteRule> rules;
    for (const auto& c : program.clauses()) {
        require_no_existentials(c);
        const std::string i = std::to_string(c.index);
        Term rhs = Term::constant("true_" + i);
        if (!c.is_fact()) {
            std::vector<Term> args;
            for (const auto& b : c.body) args.push_back(b.as_term());
            rhs = Term::compound("f" + i, std::move(args));
        }
        rules.push_back(RewriteRule{c.index, c.head.as_term(), std::move(rhs)});
    }
    return rules;
}

std::vector<DependencyPair> dependency_pairs(const Program& program) {
    std::vector<DependencyPair> pairs;
    for (const auto& c : program.clauses()) {
        require_no_existentials(c);
        for (std::size_t j = 0; j < c.body.size(); ++j) pairs.push_back(DependencyPair{c.index, j, c.head, c.body[j]});
    }
    return pairs;
}

std::string format_trs(const std::vector<RewriteRule>& rules, const std::vector<DependencyPair>& pairs) {
    std::string out = "% rewrite rules\n";
    for (const auto& r : rules) out += to_string(r.lhs) + " -> " + to_string(r.rhs) + ".\n";
    out += "% dependency pairs\n";
    for (const auto& p : pairs) out += to_string(p.lhs) + " => " + to_string(p.rhs) + ".\n";
    return out;
}

} // namespace prodcheck
