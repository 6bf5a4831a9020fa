#pragma once

#include <map>
#include <optional>
#include <string>

#include "prodcheck/term.hpp"

namespace prodcheck {

/// Finite map from variable names to terms, applied simultaneously.
/// Identity bindings are never stored.
class Substitution {
public:
    using Map = std::map<std::string, Term>;

    Substitution() = default;
    explicit Substitution(Map bindings);

    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }
    const Map& bindings() const { return bindings_; }
    const Term* find(const std::string& var) const;
    bool binds(const std::string& var) const { return bindings_.count(var) != 0; }

    /// Adds var ↦ t, dropping it if t is var itself.
    void bind(const std::string& var, Term t);

    Term apply(const Term& t) const;
    Atom apply(const Atom& a) const;
    Clause apply(const Clause& c) const;

    /// The substitution equivalent to applying `inner` first, then `outer`.
    static Substitution compose(const Substitution& outer, const Substitution& inner);

    /// Bindings restricted to the given variable names.
    Substitution restrict_to(const std::vector<std::string>& vars) const;

    friend bool operator==(const Substitution& a, const Substitution& b) { return a.bindings_ == b.bindings_; }

private:
    Map bindings_;
    std::uint64_t domain_mask_ = 0; // bits of bound variables; may keep stale bits
};

std::string to_string(const Substitution& s);

/// Most general unifier with occurs check. The result is idempotent.
/// When both sides of a pair are variables, the right-hand variable is bound.
std::optional<Substitution> mgu(const Term& a, const Term& b);
std::optional<Substitution> mgu(const Atom& a, const Atom& b);

/// Most general matcher of `pattern` against `target`: binds only pattern
/// variables, treating target variables as constants.
std::optional<Substitution> mgm(const Term& pattern, const Term& target);
std::optional<Substitution> mgm(const Atom& pattern, const Atom& target);

/// Deterministic source of fresh variable names "v<k>". Names never clash with
/// parsed program variables, which start with an uppercase letter or '_'.
class FreshNames {
public:
    explicit FreshNames(std::size_t start = 0) : next_(start) {}
    std::string next() { return "v" + std::to_string(next_++); }
    std::size_t counter() const { return next_; }

private:
    std::size_t next_;
};

/// Replaces every clause variable with a fresh name.
Clause rename_apart(const Clause& c, FreshNames& fresh);

} // namespace prodcheck
