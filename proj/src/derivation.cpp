#include "prodcheck/derivation.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <set>

namespace prodcheck {

std::optional<Transition> transition_at(const Program& program, std::shared_ptr<const RewritingTree> tree,
                                        NodeId leaf, std::size_t clause, FreshNames& fresh, std::size_t fuse) {
    const Atom& atom = tree->node(leaf).atom;
    Clause renamed = rename_apart(program.clause(clause), fresh);
    auto sigma = mgu(atom, renamed.head);
    if (!sigma) return std::nullopt;
    std::vector<NodeId> mapping;
    Gc2Result target = instantiate_and_check(program, *tree, *sigma, fuse, fresh, &mapping);
    Transition tr{tree, leaf, atom, clause, std::move(renamed), std::move(*sigma), std::move(target), 0, {}};
    if (leaf < mapping.size()) tr.target_leaf = mapping[leaf];
    tr.node_map = std::move(mapping);
    return tr;
}

std::vector<Transition> transitions(const Program& program, std::shared_ptr<const RewritingTree> tree,
                                    FreshNames& fresh, std::size_t fuse) {
    std::vector<Transition> out;
    for (NodeId leaf : tree->open_leaves())
        for (std::size_t k : program.clauses_for(tree->node(leaf).atom.predicate))
            if (auto tr = transition_at(program, tree, leaf, k, fresh, fuse)) out.push_back(std::move(*tr));
    return out;
}

InvariantSet clause_projection(const Transition& tr) {
    InvariantSet out;
    const Atom produced = tr.unifier.apply(tr.leaf_atom);
    const auto head_subterms = proper_subterms_with_positions(tr.renamed.head);
    for (const auto& w : contraction_witnesses(produced, tr.leaf_atom)) {
        if (w.leaf_kind != LeafKind::variable) continue;
        for (const auto& [pos, t] : head_subterms) {
            if (t.is_variable()) continue;
            if (mgm(t, w.reducing_subterm)) out.insert(InvariantTriple{tr.clause, t, pos});
        }
    }
    return out;
}

InvariantSet coinductive_invariant(const Transition& tr) {
    InvariantSet out;
    const auto* g = std::get_if<Guarded>(&tr.target);
    if (!g) return out;
    const InvariantSet projection = clause_projection(tr);
    if (projection.empty()) return out;

    std::vector<Term> guards;
    const RewritingTree& tree = *g->tree;
    const NodeId leaf = tr.target_leaf;
    for (const auto& loop : g->loops()) {
        if (loop.clause != tr.clause) continue;
        if (loop.lower != leaf && !tree.is_ancestor(loop.lower, leaf) && !tree.is_ancestor(leaf, loop.lower)) continue;
        for (auto& w : recursive_witnesses(g->tree->node(loop.upper).atom, g->tree->node(loop.lower).atom))
            guards.push_back(std::move(w.reducing_subterm));
    }
    for (const auto& triple : projection) {
        bool covered = std::any_of(guards.begin(), guards.end(),
                                   [&](const Term& guard) { return mgm(triple.head_subterm, guard).has_value(); });
        if (covered) out.insert(triple);
    }
    return out;
}

ObservationResult observation_subtree(const Program& program, std::size_t clause, std::size_t fuse,
                                      const TransitionObserver& observer) {
    ObservationResult result;
    result.clause_checked = clause;
    FreshNames fresh;
    const Atom goal = rename_apart(program.clause(clause), fresh).head;

    Gc2Result root = build_and_check(program, goal, fuse, fresh);
    result.trees_explored = 1;
    if (auto* u = std::get_if<Unguarded>(&root)) {
        result.verdict = Verdict::unguarded;
        result.witness = u->witness;
        return result;
    }
    if (std::holds_alternative<FuseExceeded>(root)) {
        result.verdict = Verdict::fuse_exceeded;
        return result;
    }

    // A branch stops at a repeated (clause, ci) key; only a non-empty repeat is
    // a guarded transition. The root has no incoming transition and no key.
    using Key = std::pair<std::size_t, InvariantSet>;
    using Move = std::pair<NodeId, std::size_t>; // (open leaf, clause)
    struct Pending {
        std::shared_ptr<const RewritingTree> tree;
        std::set<Key> branch_keys;
        std::set<Move> sleep; // moves whose effect an earlier sibling already covers
    };
    // Tree variants already expanded are not expanded again.
    std::set<std::string> seen;
    std::size_t expanded = 0;
    std::deque<Pending> queue;
    queue.push_back(Pending{std::get<Guarded>(root).tree, {}, {}});

    while (!queue.empty()) {
        Pending node = std::move(queue.front());
        queue.pop_front();
        const RewritingTree& tree = *node.tree;
        std::vector<Move> done;
        for (NodeId leaf : tree.open_leaves()) {
            for (std::size_t k : program.clauses_for(tree.node(leaf).atom.predicate)) {
                if (node.sleep.count({leaf, k})) continue;
                auto tr = transition_at(program, node.tree, leaf, k, fresh, fuse);
                if (!tr) continue;
                ++result.trees_explored;
                if (auto* u = std::get_if<Unguarded>(&tr->target)) {
                    result.verdict = Verdict::unguarded;
                    result.witness = u->witness;
                    result.live_invariants.clear();
                    return result;
                }
                if (std::holds_alternative<FuseExceeded>(tr->target) || expanded >= fuse) {
                    result.verdict = Verdict::fuse_exceeded;
                    result.live_invariants.clear();
                    return result;
                }
                InvariantSet ci = coinductive_invariant(*tr);
                if (observer) observer(*tr, clause_projection(*tr), ci);

                Key key{k, ci};
                if (node.branch_keys.count(key)) {
                    result.live_invariants.insert(ci.begin(), ci.end());
                    continue;
                }
                Move move{leaf, k};
                auto target = std::get<Guarded>(tr->target).tree;
                if (seen.insert(canonical_form(*target)).second) {
                    Pending child{target, node.branch_keys, {}};
                    child.branch_keys.insert(std::move(key));
                    // Moves on leaves sharing no variable with this one commute with it.
                    const auto vars = variables(tr->leaf_atom);
                    auto independent = [&](const Move& m) {
                        if (m.first == leaf) return false;
                        for (const auto& v : variables(tree.node(m.first).atom))
                            if (std::find(vars.begin(), vars.end(), v) != vars.end()) return false;
                        return true;
                    };
                    auto carry = [&](const Move& m) {
                        if (independent(m)) child.sleep.insert(Move{tr->node_map[m.first], m.second});
                    };
                    std::for_each(node.sleep.begin(), node.sleep.end(), carry);
                    std::for_each(done.begin(), done.end(), carry);
                    ++expanded;
                    queue.push_back(std::move(child));
                }
                done.push_back(move);
            }
        }
    }
    return result;
}

const ObservationResult* ProductivityReport::first_unguarded() const {
    for (const auto& r : per_clause)
        if (r.verdict == Verdict::unguarded) return &r;
    return nullptr;
}

ProductivityReport gc3(const Program& program, std::size_t fuse, bool parallel) {
    ProductivityReport report;
    if (parallel && program.size() > 1) {
        std::vector<std::future<ObservationResult>> jobs;
        jobs.reserve(program.size());
        for (std::size_t i = 0; i < program.size(); ++i)
            jobs.push_back(std::async(std::launch::async, [&program, i, fuse] {
                return observation_subtree(program, i, fuse);
            }));
        for (auto& j : jobs) report.per_clause.push_back(j.get());
    } else {
        for (std::size_t i = 0; i < program.size(); ++i) report.per_clause.push_back(observation_subtree(program, i, fuse));
    }

    for (const auto& r : report.per_clause) {
        report.program_guarded = report.program_guarded && r.verdict == Verdict::guarded;
        report.fuse_exceeded = report.fuse_exceeded || r.verdict == Verdict::fuse_exceeded;
        // set insertion keeps the first occurrence, so clause order decides the printed term
        report.invariant_list.insert(r.live_invariants.begin(), r.live_invariants.end());
    }
    if (!report.program_guarded) report.invariant_list.clear();
    report.program_live = report.program_guarded && !report.invariant_list.empty();
    return report;
}

DerivationTrace s_derive(const Program& program, const Atom& goal, std::size_t max_steps, std::size_t fuse) {
    DerivationTrace trace;
    trace.goal = goal;
    const auto goal_vars = variables(goal);
    FreshNames fresh;

    Gc2Result current = build_and_check(program, goal, fuse, fresh);
    for (std::size_t step = 0;; ++step) {
        if (auto* u = std::get_if<Unguarded>(&current)) {
            trace.outcome = DeriveOutcome::unguarded;
            trace.witness = u->witness;
            trace.last_tree = u->partial;
            return trace;
        }
        if (std::holds_alternative<FuseExceeded>(current)) {
            trace.outcome = DeriveOutcome::fuse_exceeded;
            return trace;
        }
        auto tree = std::get<Guarded>(current).tree;
        trace.last_tree = tree;
        if (step == max_steps) {
            trace.outcome = DeriveOutcome::step_limit;
            return trace;
        }

        std::optional<std::pair<NodeId, std::size_t>> chosen;
        std::optional<Substitution> sigma;
        for (NodeId leaf : tree->open_leaves()) {
            for (std::size_t k : program.clauses_for(tree->node(leaf).atom.predicate)) {
                Clause renamed = rename_apart(program.clause(k), fresh);
                if ((sigma = mgu(tree->node(leaf).atom, renamed.head))) {
                    chosen.emplace(leaf, k);
                    break;
                }
            }
            if (chosen) break;
        }
        if (!chosen) {
            trace.outcome = DeriveOutcome::no_transition;
            return trace;
        }

        Substitution answer;
        for (const auto& v : goal_vars) {
            const Term* prev = trace.answer_prefix.find(v);
            answer.bind(v, sigma->apply(prev ? *prev : Term::variable(v)));
        }
        trace.answer_prefix = answer;
        trace.steps.push_back(
            DerivationStep{chosen->first, tree->node(chosen->first).atom, chosen->second, *sigma, std::move(answer)});
        current = instantiate_and_check(program, *tree, *sigma, fuse, fresh);
    }
}

} // namespace prodcheck
