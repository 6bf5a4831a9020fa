#include "prodcheck/contraction.hpp"

namespace prodcheck {

namespace {

// Walks t2 and t1 in lockstep. Descent continues only below nodes that carry
// the same symbol in both trees, so every leaf of t2 reached here has an
// identical branch above it in t1. Preorder visiting yields lexicographic order.
void scan(const Term& t1, const Term& t2, Position& at, std::vector<ContractionWitness>& out) {
    if (t2.is_leaf()) {
        if (!t1.is_leaf()) {
            out.push_back(ContractionWitness{at, t1, t2, contains_leaf_symbol(t1, t2),
                                             t2.is_variable() ? LeafKind::variable : LeafKind::constant});
        }
        return;
    }
    if (!t1.same_symbol(t2)) return;
    for (std::size_t i = 0; i < t2.arity(); ++i) {
        at.push_back(i);
        scan(t1.arg(i), t2.arg(i), at, out);
        at.pop_back();
    }
}

// Same walk, stopping at the first recursive witness.
bool find_recursive(const Term& t1, const Term& t2, Position& at, std::optional<ContractionWitness>& out) {
    if (t2.is_leaf()) {
        if (t1.is_leaf() || !contains_leaf_symbol(t1, t2)) return false;
        out = ContractionWitness{at, t1, t2, true, t2.is_variable() ? LeafKind::variable : LeafKind::constant};
        return true;
    }
    if (!t1.same_symbol(t2)) return false;
    for (std::size_t i = 0; i < t2.arity(); ++i) {
        at.push_back(i);
        if (find_recursive(t1.arg(i), t2.arg(i), at, out)) return true;
        at.pop_back();
    }
    return false;
}

} // namespace

std::vector<ContractionWitness> contraction_witnesses(const Atom& t1, const Atom& t2) {
    std::vector<ContractionWitness> out;
    if (t1.predicate != t2.predicate || t1.arity() != t2.arity()) return out;
    Position at;
    for (std::size_t i = 0; i < t2.arity(); ++i) {
        at.assign(1, i);
        scan(t1.args[i], t2.args[i], at, out);
    }
    return out;
}

std::vector<ContractionWitness> recursive_witnesses(const Atom& t1, const Atom& t2) {
    auto all = contraction_witnesses(t1, t2);
    std::vector<ContractionWitness> out;
    for (auto& w : all)
        if (w.recursive) out.push_back(std::move(w));
    return out;
}

std::optional<ContractionWitness> has_recursive_contraction(const Atom& t1, const Atom& t2) {
    std::optional<ContractionWitness> out;
    if (t1.predicate != t2.predicate || t1.arity() != t2.arity()) return out;
    Position at;
    for (std::size_t i = 0; i < t2.arity(); ++i) {
        at.assign(1, i);
        if (find_recursive(t1.args[i], t2.args[i], at, out)) break;
    }
    return out;
}

} // namespace prodcheck
