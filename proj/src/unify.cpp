#include "prodcheck/unify.hpp"

#include <utility>
#include <vector>

namespace prodcheck {

Substitution::Substitution(Map bindings) {
    for (auto& [v, t] : bindings) bind(v, std::move(t));
}

const Term* Substitution::find(const std::string& var) const {
    auto it = bindings_.find(var);
    return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& var, Term t) {
    if (t.is_variable() && t.name() == var) {
        bindings_.erase(var);
        return;
    }
    domain_mask_ |= Term::variable_bit(var);
    bindings_.insert_or_assign(var, std::move(t));
}

Term Substitution::apply(const Term& t) const {
    if ((t.variable_mask() & domain_mask_) == 0) return t;
    if (t.is_variable()) {
        const Term* b = find(t.name());
        return b ? *b : t;
    }
    if (t.arity() == 0) return t;
    // Arguments are only copied once one of them actually changes.
    std::vector<Term> args;
    const auto in = t.args();
    for (std::size_t i = 0; i < in.size(); ++i) {
        Term a = apply(in[i]);
        if (args.empty()) {
            if (a.shares_node(in[i])) continue;
            args.reserve(in.size());
            args.assign(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(i));
        }
        args.push_back(std::move(a));
    }
    return args.empty() ? t : Term::compound(t.name(), std::move(args));
}

Atom Substitution::apply(const Atom& a) const {
    if (bindings_.empty()) return a;
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(apply(t));
    return out;
}

Clause Substitution::apply(const Clause& c) const {
    Clause out{c.index, apply(c.head), {}};
    out.body.reserve(c.body.size());
    for (const auto& b : c.body) out.body.push_back(apply(b));
    return out;
}

Substitution Substitution::compose(const Substitution& outer, const Substitution& inner) {
    Substitution out;
    for (const auto& [v, t] : inner.bindings_) out.bind(v, outer.apply(t));
    for (const auto& [v, t] : outer.bindings_)
        if (!inner.binds(v)) out.bind(v, t);
    return out;
}

Substitution Substitution::restrict_to(const std::vector<std::string>& vars) const {
    Substitution out;
    for (const auto& v : vars)
        if (const Term* t = find(v)) out.bind(v, *t);
    return out;
}

std::string to_string(const Substitution& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, t] : s.bindings()) {
        if (!first) out += ", ";
        first = false;
        out += v + " -> " + to_string(t);
    }
    return out + "}";
}

namespace {

// Triangular bindings during solving; `walk` follows variable chains.
class Solver {
public:
    const Term& walk(const Term& t) const {
        const Term* cur = &t;
        while (cur->is_variable()) {
            auto it = tri_.find(cur->name());
            if (it == tri_.end()) break;
            cur = &it->second;
        }
        return *cur;
    }

    bool occurs_in(const std::string& var, const Term& t) const {
        const Term& w = walk(t);
        if (w.is_variable()) return w.name() == var;
        for (const auto& a : w.args())
            if (occurs_in(var, a)) return true;
        return false;
    }

    bool unify(const Term& a0, const Term& b0) {
        std::vector<std::pair<Term, Term>> stack{{a0, b0}};
        while (!stack.empty()) {
            auto [x, y] = std::move(stack.back());
            stack.pop_back();
            const Term a = walk(x);
            const Term b = walk(y);
            if (b.is_variable()) {
                if (a.is_variable() && a.name() == b.name()) continue;
                if (occurs_in(b.name(), a)) return false;
                tri_.emplace(b.name(), a);
            } else if (a.is_variable()) {
                if (occurs_in(a.name(), b)) return false;
                tri_.emplace(a.name(), b);
            } else {
                if (!a.same_symbol(b)) return false;
                for (std::size_t i = a.arity(); i-- > 0;) stack.emplace_back(a.arg(i), b.arg(i));
            }
        }
        return true;
    }

    Term resolve(const Term& t) const {
        const Term& w = walk(t);
        if (w.is_leaf()) return w;
        std::vector<Term> args;
        args.reserve(w.arity());
        for (const auto& a : w.args()) args.push_back(resolve(a));
        return Term::compound(w.name(), std::move(args));
    }

    Substitution solved() const {
        Substitution out;
        for (const auto& [v, t] : tri_) out.bind(v, resolve(t));
        return out;
    }

private:
    std::map<std::string, Term> tri_;
};

bool match_into(const Term& pattern, const Term& target, Substitution::Map& m) {
    if (pattern.is_variable()) {
        auto [it, inserted] = m.emplace(pattern.name(), target);
        return inserted || it->second == target;
    }
    if (!pattern.same_symbol(target)) return false;
    for (std::size_t i = 0; i < pattern.arity(); ++i)
        if (!match_into(pattern.arg(i), target.arg(i), m)) return false;
    return true;
}

} // namespace

std::optional<Substitution> mgu(const Term& a, const Term& b) {
    Solver s;
    if (!s.unify(a, b)) return std::nullopt;
    return s.solved();
}

std::optional<Substitution> mgu(const Atom& a, const Atom& b) {
    if (a.predicate != b.predicate || a.arity() != b.arity()) return std::nullopt;
    return mgu(a.as_term(), b.as_term());
}

std::optional<Substitution> mgm(const Term& pattern, const Term& target) {
    Substitution::Map m;
    if (!match_into(pattern, target, m)) return std::nullopt;
    return Substitution(std::move(m));
}

std::optional<Substitution> mgm(const Atom& pattern, const Atom& target) {
    if (pattern.predicate != target.predicate || pattern.arity() != target.arity()) return std::nullopt;
    Substitution::Map m;
    for (std::size_t i = 0; i < pattern.arity(); ++i)
        if (!match_into(pattern.args[i], target.args[i], m)) return std::nullopt;
    return Substitution(std::move(m));
}

Clause rename_apart(const Clause& c, FreshNames& fresh) {
    Substitution renaming;
    for (const auto& v : variables(c)) renaming.bind(v, Term::variable(fresh.next()));
    return renaming.apply(c);
}

} // namespace prodcheck
