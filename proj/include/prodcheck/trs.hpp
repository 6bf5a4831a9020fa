#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "prodcheck/term.hpp"

namespace prodcheck {

/// A clause body variable that does not occur in the head.
class ExistentialVariableError : public std::runtime_error {
public:
    ExistentialVariableError(std::size_t clause, std::string variable);
    std::size_t clause() const { return clause_; }
    const std::string& variable() const { return variable_; }

private:
    std::size_t clause_;
    std::string variable_;
};

/// head -> f<i>(body...) for clause i; facts rewrite to the constant true_<i>.
struct RewriteRule {
    std::size_t clause;
    Term lhs;
    Term rhs;
};

/// (head, j-th body atom) of one clause; indices are 0-based.
struct DependencyPair {
    std::size_t clause;
    std::size_t body_index;
    Atom lhs;
    Atom rhs;
};

std::vector<RewriteRule> translate(const Program& program);
std::vector<DependencyPair> dependency_pairs(const Program& program);

/// "lhs -> rhs." per rule, then "lhs => rhs." per dependency pair, each block
/// introduced by a '%' comment line.
std::string format_trs(const std::vector<RewriteRule>& rules, const std::vector<DependencyPair>& pairs);

} // namespace prodcheck
