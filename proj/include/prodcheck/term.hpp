#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prodcheck {

/// A node address inside a term tree: 0-based child indices from the root.
/// For an atom, argument i lives at position {i}.
using Position = std::vector<std::size_t>;

std::string to_string(const Position& p);

class InvalidPosition : public std::out_of_range {
public:
    explicit InvalidPosition(const Position& p);
};

/// Immutable first-order term. Copies share structure.
///
/// A term is either a variable or a compound f(t1,...,tn); constants are
/// compounds of arity 0. Leaves of a term tree are variables and constants.
class Term {
public:
    static Term variable(std::string name);
    static Term compound(std::string functor, std::vector<Term> args = {});
    static Term constant(std::string name) { return compound(std::move(name)); }

    bool is_variable() const { return node_->variable; }
    bool is_constant() const { return !node_->variable && node_->args.empty(); }
    bool is_leaf() const { return node_->args.empty(); }

    /// Variable name or functor symbol.
    const std::string& name() const { return node_->name; }
    std::size_t arity() const { return node_->args.size(); }
    std::span<const Term> args() const { return node_->args; }
    const Term& arg(std::size_t i) const { return node_->args.at(i); }

    /// Same symbol at the root: both variables with one name, or compounds
    /// with equal functor and arity.
    bool same_symbol(const Term& other) const;

    bool shares_node(const Term& other) const { return node_ == other.node_; }

    /// Over-approximation of the variables in the term: one hashed bit per
    /// variable name. Disjoint masks mean disjoint variable sets.
    std::uint64_t variable_mask() const { return node_->mask; }
    static std::uint64_t variable_bit(const std::string& name);

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node {
        bool variable;
        std::string name;
        std::vector<Term> args;
        std::uint64_t mask;
    };
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// A predicate applied to argument terms.
struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const { return args.size(); }
    /// The atom viewed as a term tree whose root symbol is the predicate.
    Term as_term() const { return Term::compound(predicate, args); }

    friend bool operator==(const Atom&, const Atom&) = default;
};

struct Clause {
    std::size_t index = 0;
    Atom head;
    std::vector<Atom> body;

    bool is_fact() const { return body.empty(); }
    friend bool operator==(const Clause&, const Clause&) = default;
};

/// Clauses in source order plus a per-predicate index used for labels such as
/// "p:0" (the 0th clause whose head predicate is p).
class Program {
public:
    Program() = default;
    explicit Program(std::vector<Clause> clauses);

    const std::vector<Clause>& clauses() const { return clauses_; }
    const Clause& clause(std::size_t i) const { return clauses_.at(i); }
    std::size_t size() const { return clauses_.size(); }
    bool empty() const { return clauses_.empty(); }

    /// Global clause indices whose head predicate is `predicate`, in order.
    const std::vector<std::size_t>& clauses_for(const std::string& predicate) const;
    /// Position of clause `i` among clauses of its own head predicate.
    std::size_t ordinal(std::size_t i) const { return ordinals_.at(i); }
    /// "pred:ordinal" label for clause `i`.
    std::string label(std::size_t i) const;
    /// Body variables of clause `i` that do not occur in its head.
    const std::vector<std::string>& existential_variables(std::size_t i) const { return existentials_.at(i); }

private:
    std::vector<Clause> clauses_;
    std::vector<std::vector<std::string>> existentials_;
    std::map<std::string, std::vector<std::size_t>> by_predicate_;
    std::vector<std::size_t> ordinals_;
};

// Printing. Terms print without spaces ("scons(v3,v5)"); clauses print in the
// input syntax and reparse to the same structure.
std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Clause& c);
std::string to_string(const Program& p);

Term subterm_at(const Term& t, std::span<const std::size_t> w);
/// The empty position addresses the whole atom (returned via as_term()).
Term subterm_at(const Atom& a, std::span<const std::size_t> w);

/// Every non-root subterm occurrence of `a` in leftmost-outermost order.
std::vector<std::pair<Position, Term>> proper_subterms_with_positions(const Atom& a);

/// All positions of `t` in leftmost-outermost order, the root included.
std::vector<Position> positions(const Term& t);

/// Distinct variable names in order of first occurrence.
std::vector<std::string> variables(const Term& t);
std::vector<std::string> variables(const Atom& a);
std::vector<std::string> variables(const Clause& c);

bool occurs(const std::string& var, const Term& t);
/// True if `symbol` (a variable or a constant) occurs anywhere in `t`.
bool contains_leaf_symbol(const Term& t, const Term& symbol);

std::size_t term_size(const Term& t);

} // namespace prodcheck
