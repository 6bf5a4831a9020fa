#include "prodcheck/term.hpp"

#include <algorithm>
#include <sstream>

namespace prodcheck {

std::string to_string(const Position& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(p[i]);
    }
    return out + "]";
}

InvalidPosition::InvalidPosition(const Position& p)
    : std::out_of_range("invalid position " + to_string(p)) {}

std::uint64_t Term::variable_bit(const std::string& name) {
    return std::uint64_t{1} << (std::hash<std::string>{}(name) % 64);
}

Term Term::variable(std::string name) {
    const std::uint64_t bit = variable_bit(name);
    return Term(std::make_shared<const Node>(Node{true, std::move(name), {}, bit}));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
    std::uint64_t mask = 0;
    for (const auto& a : args) mask |= a.variable_mask();
    return Term(std::make_shared<const Node>(Node{false, std::move(functor), std::move(args), mask}));
}

bool Term::same_symbol(const Term& other) const {
    return is_variable() == other.is_variable() && arity() == other.arity() && name() == other.name();
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (!a.same_symbol(b)) return false;
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (!(a.node_->args[i] == b.node_->args[i])) return false;
    return true;
}

Program::Program(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
    ordinals_.reserve(clauses_.size());
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
        clauses_[i].index = i;
        auto& list = by_predicate_[clauses_[i].head.predicate];
        ordinals_.push_back(list.size());
        list.push_back(i);
        const auto head = variables(clauses_[i].head);
        auto& ex = existentials_.emplace_back();
        for (auto& v : variables(clauses_[i]))
            if (std::find(head.begin(), head.end(), v) == head.end()) ex.push_back(std::move(v));
    }
}

const std::vector<std::size_t>& Program::clauses_for(const std::string& predicate) const {
    static const std::vector<std::size_t> none;
    auto it = by_predicate_.find(predicate);
    return it == by_predicate_.end() ? none : it->second;
}

std::string Program::label(std::size_t i) const {
    return clauses_.at(i).head.predicate + ":" + std::to_string(ordinals_.at(i));
}

namespace {

void print(std::ostream& os, const Term& t) {
    os << t.name();
    if (t.arity() == 0) return;
    os << '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) os << ',';
        print(os, t.arg(i));
    }
    os << ')';
}

void print(std::ostream& os, const Atom& a) {
    os << a.predicate;
    if (a.args.empty()) return;
    os << '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) os << ',';
        print(os, a.args[i]);
    }
    os << ')';
}

void collect_positions(const Term& t, Position& prefix, std::vector<Position>& out) {
    out.push_back(prefix);
    for (std::size_t i = 0; i < t.arity(); ++i) {
        prefix.push_back(i);
        collect_positions(t.arg(i), prefix, out);
        prefix.pop_back();
    }
}

void collect_subterms(const Term& t, Position& prefix, std::vector<std::pair<Position, Term>>& out) {
    out.emplace_back(prefix, t);
    for (std::size_t i = 0; i < t.arity(); ++i) {
        prefix.push_back(i);
        collect_subterms(t.arg(i), prefix, out);
        prefix.pop_back();
    }
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
    if (t.is_variable()) {
        if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
        return;
    }
    for (const auto& a : t.args()) collect_variables(a, out);
}

} // namespace

std::string to_string(const Term& t) {
    std::ostringstream os;
    print(os, t);
    return os.str();
}

std::string to_string(const Atom& a) {
    std::ostringstream os;
    print(os, a);
    return os.str();
}

std::string to_string(const Clause& c) {
    std::ostringstream os;
    print(os, c.head);
    if (!c.body.empty()) {
        os << " :- ";
        for (std::size_t i = 0; i < c.body.size(); ++i) {
            if (i) os << ", ";
            print(os, c.body[i]);
        }
    }
    os << '.';
    return os.str();
}

std::string to_string(const Program& p) {
    std::string out;
    for (const auto& c : p.clauses()) out += to_string(c) + "\n";
    return out;
}

Term subterm_at(const Term& t, std::span<const std::size_t> w) {
    const Term* cur = &t;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] >= cur->arity()) throw InvalidPosition(Position(w.begin(), w.end()));
        cur = &cur->arg(w[i]);
    }
    return *cur;
}

Term subterm_at(const Atom& a, std::span<const std::size_t> w) {
    if (w.empty()) return a.as_term();
    if (w[0] >= a.args.size()) throw InvalidPosition(Position(w.begin(), w.end()));
    try {
        return subterm_at(a.args[w[0]], w.subspan(1));
    } catch (const InvalidPosition&) {
        throw InvalidPosition(Position(w.begin(), w.end()));
    }
}

std::vector<std::pair<Position, Term>> proper_subterms_with_positions(const Atom& a) {
    std::vector<std::pair<Position, Term>> out;
    Position prefix;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        prefix.assign(1, i);
        collect_subterms(a.args[i], prefix, out);
    }
    return out;
}

std::vector<Position> positions(const Term& t) {
    std::vector<Position> out;
    Position prefix;
    collect_positions(t, prefix, out);
    return out;
}

std::vector<std::string> variables(const Term& t) {
    std::vector<std::string> out;
    collect_variables(t, out);
    return out;
}

std::vector<std::string> variables(const Atom& a) {
    std::vector<std::string> out;
    for (const auto& t : a.args) collect_variables(t, out);
    return out;
}

std::vector<std::string> variables(const Clause& c) {
    std::vector<std::string> out;
    for (const auto& t : c.head.args) collect_variables(t, out);
    for (const auto& b : c.body)
        for (const auto& t : b.args) collect_variables(t, out);
    return out;
}

bool occurs(const std::string& var, const Term& t) {
    if (t.is_variable()) return t.name() == var;
    return std::any_of(t.args().begin(), t.args().end(), [&](const Term& a) { return occurs(var, a); });
}

bool contains_leaf_symbol(const Term& t, const Term& symbol) {
    if (t.is_leaf()) return t.same_symbol(symbol);
    return std::any_of(t.args().begin(), t.args().end(),
                       [&](const Term& a) { return contains_leaf_symbol(a, symbol); });
}

std::size_t term_size(const Term& t) {
    std::size_t n = 1;
    for (const auto& a : t.args()) n += term_size(a);
    return n;
}

} // namespace prodcheck
