#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "prodcheck/contraction.hpp"
#include "prodcheck/term.hpp"
#include "prodcheck/unify.hpp"

namespace prodcheck {

using NodeId = std::size_t;

inline constexpr std::size_t default_fuse = 100'000;

/// Or-node: the head of clause `clause` matches the parent and-node's atom.
struct OrNode {
    std::size_t clause;
    std::vector<NodeId> children;
};

struct AndNode {
    Atom atom;
    std::optional<NodeId> parent;          ///< enclosing and-node
    std::optional<std::size_t> via_clause; ///< clause of the parent or-node
    std::size_t depth = 0;                 ///< and-node depth, root = 0
    std::vector<OrNode> alternatives;      ///< one per matching clause, ascending

    bool is_leaf() const { return alternatives.empty(); }
};

/// Two and-nodes on one branch whose atoms share a predicate and whose parent
/// or-nodes use the same clause. Guarded when upper ▷ lower recursively.
struct Loop {
    NodeId upper;
    NodeId lower;
    std::size_t clause;
    std::optional<ContractionWitness> guard;
};

/// Term-matching resolution tree. And-node ids follow breadth-first creation
/// order, so sorting by id is breadth-first order. The root has id 0.
class RewritingTree {
public:
    const AndNode& node(NodeId id) const { return nodes_.at(id); }
    const AndNode& root() const { return nodes_.front(); }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<AndNode>& nodes() const { return nodes_; }

    /// And-nodes without or-children, breadth-first.
    std::vector<NodeId> open_leaves() const;

    /// Node ids from the root down to `id`, inclusive.
    std::vector<NodeId> branch(NodeId id) const;
    bool is_ancestor(NodeId upper, NodeId lower) const;

    /// Global indices of the or-node clauses on the path from the root to `id`.
    std::vector<std::size_t> clause_path(NodeId id) const;

    /// Loops found while building; complete for a guarded tree.
    const std::vector<Loop>& loops() const { return loops_; }

    /// Graphviz rendering: and-nodes as boxes, or-nodes as ellipses "P(i)".
    std::string to_dot(const std::string& name = "rewriting_tree") const;

private:
    friend class TreeBuilder;
    std::vector<AndNode> nodes_;
    std::vector<Loop> loops_;
};

struct UnguardedLoop {
    Loop loop;
    Atom goal;                       ///< atom at the upper node
    std::vector<std::size_t> path;   ///< clause path from the root to the lower node
};

struct Guarded {
    std::shared_ptr<const RewritingTree> tree;
    /// Every loop of the tree; all carry a guard.
    const std::vector<Loop>& loops() const { return tree->loops(); }
};

struct Unguarded {
    std::shared_ptr<const RewritingTree> partial;
    UnguardedLoop witness;
};

/// Defensive bound hit; construction was abandoned.
struct FuseExceeded {
    std::size_t nodes;
};

using Gc2Result = std::variant<Guarded, Unguarded, FuseExceeded>;

/// Builds the rewriting tree for `goal` breadth-first, checking every new
/// and-node against its ancestors. Stops at the first unguarded loop.
Gc2Result build_and_check(const Program& program, const Atom& goal, std::size_t fuse, FreshNames& fresh);
Gc2Result build_and_check(const Program& program, const Atom& goal, std::size_t fuse = default_fuse);

/// Rebuilds `source` under `sigma`: every and-node atom is instantiated, existing
/// or-nodes are kept, and branches are extended where new matches arise.
/// `mapping[s]` receives the id of source node s in the new tree.
Gc2Result instantiate_and_check(const Program& program, const RewritingTree& source, const Substitution& sigma,
                                std::size_t fuse, FreshNames& fresh, std::vector<NodeId>* mapping = nullptr);

/// Plain expansion without guardedness checks; nullopt if more than `fuse`
/// and-nodes would be needed.
std::optional<RewritingTree> expand_tree(const Program& program, const Atom& goal, std::size_t fuse,
                                         FreshNames& fresh);

/// Every loop of a complete tree, guarded or not, by exhaustive pair scan.
std::vector<Loop> all_loops(const RewritingTree& tree);

/// Loops of `tree` whose lower node lies on a branch through `through`
/// (the lower node is an ancestor or a descendant of it, or the node itself).
std::vector<Loop> loops_through(const RewritingTree& tree, NodeId through);

/// The matcher behind `alt`: applied to its clause head it gives `parent.atom`.
Substitution matcher_of(const Program& program, const AndNode& parent, const OrNode& alt);

/// Structural serialization with variables numbered by first occurrence;
/// equal for two trees exactly when they are variants of each other.
std::string canonical_form(const RewritingTree& tree);

std::string path_labels(const Program& program, const std::vector<std::size_t>& path);

} // namespace prodcheck
