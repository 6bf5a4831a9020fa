#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "prodcheck/rewriting_tree.hpp"

namespace prodcheck {

/// (clause k, head subterm t, position v) with t = subterm(head(P(k)), v).
/// Identity is (clause, position); the term is carried for reporting.
struct InvariantTriple {
    std::size_t clause;
    Term head_subterm;
    Position position;

    friend bool operator==(const InvariantTriple& a, const InvariantTriple& b) {
        return a.clause == b.clause && a.position == b.position;
    }
    friend bool operator<(const InvariantTriple& a, const InvariantTriple& b) {
        return a.clause != b.clause ? a.clause < b.clause : a.position < b.position;
    }
};

using InvariantSet = std::set<InvariantTriple>;

/// Unification step from an open leaf of `source` against clause `clause`,
/// followed by instantiation of the whole tree and re-expansion.
struct Transition {
    std::shared_ptr<const RewritingTree> source;
    NodeId leaf;
    Atom leaf_atom;
    std::size_t clause;
    Clause renamed;          ///< the clause as renamed apart for this step
    Substitution unifier;    ///< mgu(leaf_atom, renamed.head)
    Gc2Result target;
    NodeId target_leaf = 0;  ///< the resolved leaf's id in a Guarded target
    std::vector<NodeId> node_map; ///< source node id -> target node id
};

/// The transition resolving open leaf `leaf` against clause `clause`, if they unify.
std::optional<Transition> transition_at(const Program& program, std::shared_ptr<const RewritingTree> tree,
                                        NodeId leaf, std::size_t clause, FreshNames& fresh,
                                        std::size_t fuse = default_fuse);

/// All transitions of a complete tree: leaves breadth-first, clauses ascending.
std::vector<Transition> transitions(const Program& program, std::shared_ptr<const RewritingTree> tree,
                                    FreshNames& fresh, std::size_t fuse = default_fuse);

/// Head subterm patterns (non-variable, proper) of the resolving clause that
/// some variable reducing subterm of unifier(leaf) ▷ leaf instantiates.
InvariantSet clause_projection(const Transition& tr);

/// Projection elements whose pattern also covers the recursive reducing subterm
/// of a guarded loop of the resolving clause, on a branch of the target tree
/// passing through the resolved leaf. Empty unless the target is Guarded.
InvariantSet coinductive_invariant(const Transition& tr);

enum class Verdict { guarded, unguarded, fuse_exceeded };

struct ObservationResult {
    std::size_t clause_checked = 0;
    Verdict verdict = Verdict::guarded;
    std::optional<UnguardedLoop> witness;
    InvariantSet live_invariants; ///< invariants of guarded transitions
    std::size_t trees_explored = 0; ///< the root plus every target tree built
};

using TransitionObserver =
    std::function<void(const Transition&, const InvariantSet& projection, const InvariantSet& invariant)>;

/// Explores the derivation tree rooted at the rewriting tree for the head of
/// clause `clause` breadth-first. A branch ends at an unguarded tree, where no
/// transition exists, or at a transition whose (clause, coinductive invariant)
/// pair already occurs on the branch; a repeat with a non-empty invariant is a
/// guarded transition and contributes to `live_invariants`. A tree that is a
/// variant of one already expanded is not expanded again, and transitions that
/// commute with an explored sibling are skipped. The first unguarded tree ends
/// the whole exploration.
ObservationResult observation_subtree(const Program& program, std::size_t clause, std::size_t fuse = default_fuse,
                                      const TransitionObserver& observer = {});

struct ProductivityReport {
    std::vector<ObservationResult> per_clause;
    bool program_guarded = true;
    bool program_live = false;
    bool fuse_exceeded = false;
    InvariantSet invariant_list;

    /// First unguarded clause result in clause order, if any.
    const ObservationResult* first_unguarded() const;
};

/// Runs the observation subtree check for every clause. With `parallel`, the
/// clauses are checked concurrently; the report is identical either way.
ProductivityReport gc3(const Program& program, std::size_t fuse = default_fuse, bool parallel = true);

struct DerivationStep {
    NodeId leaf;
    Atom leaf_atom;
    std::size_t clause;
    Substitution unifier;
    Substitution answer; ///< bindings of goal variables after this step
};

enum class DeriveOutcome { step_limit, no_transition, unguarded, fuse_exceeded };

struct DerivationTrace {
    Atom goal;
    std::vector<DerivationStep> steps;
    Substitution answer_prefix;
    DeriveOutcome outcome = DeriveOutcome::step_limit;
    std::optional<UnguardedLoop> witness;
    std::shared_ptr<const RewritingTree> last_tree;
};

/// S-resolution: rewriting trees linked by transitions, always taking the
/// leftmost open leaf that unifies with some clause, lowest clause first.
DerivationTrace s_derive(const Program& program, const Atom& goal, std::size_t max_steps,
                         std::size_t fuse = default_fuse);

} // namespace prodcheck
