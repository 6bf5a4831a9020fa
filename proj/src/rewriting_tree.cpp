#include "prodcheck/rewriting_tree.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace prodcheck {

std::vector<NodeId> RewritingTree::open_leaves() const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].is_leaf()) out.push_back(i);
    return out;
}

std::vector<NodeId> RewritingTree::branch(NodeId id) const {
    std::vector<NodeId> out;
    for (std::optional<NodeId> cur = id; cur; cur = nodes_.at(*cur).parent) out.push_back(*cur);
    std::reverse(out.begin(), out.end());
    return out;
}

bool RewritingTree::is_ancestor(NodeId upper, NodeId lower) const {
    for (std::optional<NodeId> cur = nodes_.at(lower).parent; cur; cur = nodes_.at(*cur).parent)
        if (*cur == upper) return true;
    return false;
}

std::vector<std::size_t> RewritingTree::clause_path(NodeId id) const {
    std::vector<std::size_t> out;
    for (NodeId n : branch(id))
        if (nodes_[n].via_clause) out.push_back(*nodes_[n].via_clause);
    return out;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string RewritingTree::to_dot(const std::string& name) const {
    std::ostringstream os;
    os << "digraph \"" << dot_escape(name) << "\" {\n";
    for (NodeId i = 0; i < nodes_.size(); ++i) {
        os << "  a" << i << " [shape=box, label=\"" << dot_escape(to_string(nodes_[i].atom)) << "\"];\n";
        for (std::size_t k = 0; k < nodes_[i].alternatives.size(); ++k) {
            const OrNode& o = nodes_[i].alternatives[k];
            os << "  o" << i << '_' << k << " [shape=ellipse, label=\"P(" << o.clause << ")\"];\n";
            os << "  a" << i << " -> o" << i << '_' << k << ";\n";
            for (NodeId c : o.children) os << "  o" << i << '_' << k << " -> a" << c << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

namespace {

struct Canonicalizer {
    const RewritingTree& tree;
    std::unordered_map<std::string_view, std::size_t> names;
    std::string out;

    void term(const Term& t) {
        if (t.is_variable()) {
            auto [it, fresh] = names.try_emplace(t.name(), names.size());
            (void)fresh;
            out += '#';
            out += std::to_string(it->second);
            return;
        }
        out += t.name();
        if (t.arity() == 0) return;
        out += '(';
        for (std::size_t i = 0; i < t.arity(); ++i) {
            if (i) out += ',';
            term(t.arg(i));
        }
        out += ')';
    }

    void node(NodeId id) {
        const AndNode& n = tree.node(id);
        out += n.atom.predicate;
        out += '(';
        for (std::size_t i = 0; i < n.atom.args.size(); ++i) {
            if (i) out += ',';
            term(n.atom.args[i]);
        }
        out += ")[";
        for (const OrNode& o : n.alternatives) {
            out += std::to_string(o.clause);
            out += '{';
            for (NodeId c : o.children) node(c);
            out += '}';
        }
        out += ']';
    }
};

} // namespace

Substitution matcher_of(const Program& program, const AndNode& parent, const OrNode& alt) {
    auto theta = mgm(program.clause(alt.clause).head, parent.atom);
    if (!theta) throw std::logic_error("or-node clause does not match its parent atom");
    return *theta;
}

std::string canonical_form(const RewritingTree& tree) {
    Canonicalizer c{tree, {}, {}};
    c.out.reserve(64 * tree.size());
    c.node(0);
    return std::move(c.out);
}

class TreeBuilder {
public:
    TreeBuilder(const Program& program, std::size_t fuse, FreshNames& fresh, bool check_guards)
        : program_(program), fuse_(fuse), fresh_(fresh), check_guards_(check_guards) {}

    // Breadth-first construction. A queued node may carry the id of the
    // source node it mirrors; its existing or-nodes are then reused under sigma.
    Gc2Result run(Atom root, const RewritingTree* source, const Substitution* sigma,
                  std::vector<NodeId>* mapping) {
        tree_ = std::make_shared<RewritingTree>();
        if (source) tree_->nodes_.reserve(source->size() + 8);
        if (mapping && source) mapping->assign(source->size(), 0);
        source_ = source;
        if (source) {
            src_of_.reserve(source->size() + 8);
            same_.reserve(source->size() + 8);
        }
        const bool root_same = source && same_nodes(source->root().atom, root);
        add_node(std::move(root), std::nullopt, std::nullopt);
        note_origin(source ? std::optional<NodeId>(0) : std::nullopt, root_same);
        std::deque<std::pair<NodeId, std::optional<NodeId>>> queue;
        queue.emplace_back(0, source ? std::optional<NodeId>(0) : std::nullopt);
        if (mapping && source) (*mapping)[0] = 0;

        while (!queue.empty()) {
            auto [id, src] = queue.front();
            queue.pop_front();
            const AndNode* mirror = src ? &source->node(*src) : nullptr;
            // An atom sigma leaves untouched cannot gain matches.
            const bool unchanged = mirror && same_nodes(mirror->atom, tree_->nodes_[id].atom);
            kept_.clear();
            if (unchanged)
                for (const auto& alt : mirror->alternatives) kept_.push_back(alt.clause);
            const auto& candidates =
                unchanged ? kept_ : program_.clauses_for(tree_->nodes_[id].atom.predicate);
            for (std::size_t k : candidates) {
                const Clause& clause = program_.clause(k);
                const OrNode* old = nullptr;
                if (mirror)
                    for (const auto& alt : mirror->alternatives)
                        if (alt.clause == clause.index) old = &alt;

                OrNode fresh_or{clause.index, {}};
                std::vector<Atom> body;
                std::vector<std::optional<NodeId>> body_src;
                if (old) {
                    body.reserve(old->children.size());
                    body_src.reserve(old->children.size());
                    for (NodeId c : old->children) {
                        body.push_back(sigma->apply(source->node(c).atom));
                        body_src.emplace_back(c);
                    }
                } else {
                    if (unchanged) continue;
                    auto theta = mgm(clause.head, tree_->nodes_[id].atom);
                    if (!theta) continue;
                    Substitution inst = std::move(*theta);
                    for (const auto& v : program_.existential_variables(k)) inst.bind(v, Term::variable(fresh_.next()));
                    for (const auto& b : clause.body) {
                        body.push_back(inst.apply(b));
                        body_src.emplace_back(std::nullopt);
                    }
                }

                std::size_t slot = tree_->nodes_[id].alternatives.size();
                fresh_or.children.reserve(body.size());
                tree_->nodes_[id].alternatives.push_back(std::move(fresh_or));
                for (std::size_t j = 0; j < body.size(); ++j) {
                    if (tree_->nodes_.size() >= fuse_) return FuseExceeded{tree_->nodes_.size() + 1};
                    const bool same = body_src[j] && same_nodes(source->node(*body_src[j]).atom, body[j]);
                    NodeId child = add_node(std::move(body[j]), id, clause.index);
                    note_origin(body_src[j], same);
                    tree_->nodes_[id].alternatives[slot].children.push_back(child);
                    if (mapping && body_src[j]) (*mapping)[*body_src[j]] = child;
                    if (check_guards_) {
                        if (auto bad = check_new_node(child)) return Unguarded{tree_, std::move(*bad)};
                    }
                    queue.emplace_back(child, body_src[j]);
                }
            }
        }
        return Guarded{tree_};
    }

    std::shared_ptr<RewritingTree> tree() const { return tree_; }

private:
    // Loops are recorded as nodes are created, so they come sorted by
    // (lower, upper): lower ids grow and uppers are scanned root side first.
    const Loop* source_loop(NodeId upper, NodeId lower) const {
        const auto& loops = source_->loops_;
        auto it = std::lower_bound(loops.begin(), loops.end(), std::pair{lower, upper}, [](const Loop& l, const auto& k) {
            return std::pair{l.lower, l.upper} < k;
        });
        return it != loops.end() && it->lower == lower && it->upper == upper ? &*it : nullptr;
    }

    void note_origin(std::optional<NodeId> src, bool same) {
        src_of_.push_back(src);
        same_.push_back(same ? 1 : 0);
    }

    static bool same_nodes(const Atom& a, const Atom& b) {
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (!a.args[i].shares_node(b.args[i])) return false;
        return true;
    }

    NodeId add_node(Atom atom, std::optional<NodeId> parent, std::optional<std::size_t> via) {
        AndNode n;
        n.atom = std::move(atom);
        n.parent = parent;
        n.via_clause = via;
        n.depth = parent ? tree_->nodes_[*parent].depth + 1 : 0;
        tree_->nodes_.push_back(std::move(n));
        return tree_->nodes_.size() - 1;
    }

    // Compares the new node with every qualifying ancestor, root side first.
    std::optional<UnguardedLoop> check_new_node(NodeId lower) {
        const AndNode& low = tree_->nodes_[lower];
        ancestors_.clear();
        for (auto a = low.parent; a; a = tree_->nodes_[*a].parent) ancestors_.push_back(*a);
        for (auto it = ancestors_.rbegin(); it != ancestors_.rend(); ++it) {
            const NodeId upper = *it;
            const AndNode& up = tree_->nodes_[upper];
            if (!up.via_clause || *up.via_clause != *low.via_clause) continue;
            if (up.atom.predicate != low.atom.predicate || up.atom.arity() != low.atom.arity()) continue;
            Loop loop{upper, lower, *low.via_clause, std::nullopt};
            const Loop* old = nullptr;
            if (same_[lower] && same_[upper]) old = source_loop(*src_of_[upper], *src_of_[lower]);
            loop.guard = old ? old->guard : has_recursive_contraction(up.atom, low.atom);
            if (!loop.guard) return UnguardedLoop{loop, up.atom, tree_->clause_path(lower)};
            tree_->loops_.push_back(std::move(loop));
        }
        return std::nullopt;
    }

    const Program& program_;
    std::size_t fuse_;
    FreshNames& fresh_;
    bool check_guards_;
    std::shared_ptr<RewritingTree> tree_;
    std::vector<NodeId> ancestors_;
    std::vector<std::size_t> kept_;
    // Instantiation bookkeeping: a node whose own atom and source atom are the
    // same terms reuses the source tree's loop verdicts.
    const RewritingTree* source_ = nullptr;
    std::vector<std::optional<NodeId>> src_of_;
    std::vector<char> same_;
};

Gc2Result build_and_check(const Program& program, const Atom& goal, std::size_t fuse, FreshNames& fresh) {
    return TreeBuilder(program, fuse, fresh, true).run(goal, nullptr, nullptr, nullptr);
}

Gc2Result build_and_check(const Program& program, const Atom& goal, std::size_t fuse) {
    FreshNames fresh;
    return build_and_check(program, goal, fuse, fresh);
}

Gc2Result instantiate_and_check(const Program& program, const RewritingTree& source, const Substitution& sigma,
                                std::size_t fuse, FreshNames& fresh, std::vector<NodeId>* mapping) {
    return TreeBuilder(program, fuse, fresh, true).run(sigma.apply(source.root().atom), &source, &sigma, mapping);
}

std::optional<RewritingTree> expand_tree(const Program& program, const Atom& goal, std::size_t fuse,
                                         FreshNames& fresh) {
    auto result = TreeBuilder(program, fuse, fresh, false).run(goal, nullptr, nullptr, nullptr);
    if (auto* g = std::get_if<Guarded>(&result)) return *g->tree;
    return std::nullopt;
}

std::vector<Loop> all_loops(const RewritingTree& tree) {
    std::vector<Loop> out;
    for (NodeId lower = 0; lower < tree.size(); ++lower) {
        const AndNode& low = tree.node(lower);
        if (!low.via_clause) continue;
        for (NodeId upper : tree.branch(lower)) {
            if (upper == lower) break;
            const AndNode& up = tree.node(upper);
            if (!up.via_clause || *up.via_clause != *low.via_clause) continue;
            if (up.atom.predicate != low.atom.predicate || up.atom.arity() != low.atom.arity()) continue;
            out.push_back(Loop{upper, lower, *low.via_clause, has_recursive_contraction(up.atom, low.atom)});
        }
    }
    return out;
}

std::vector<Loop> loops_through(const RewritingTree& tree, NodeId through) {
    std::vector<Loop> out;
    for (auto& loop : all_loops(tree)) {
        if (loop.lower == through || tree.is_ancestor(loop.lower, through) || tree.is_ancestor(through, loop.lower))
            out.push_back(std::move(loop));
    }
    return out;
}

std::string path_labels(const Program& program, const std::vector<std::size_t>& path) {
    std::string out = "[";
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += ", ";
        out += "(" + program.label(path[i]) + ")";
    }
    return out + "]";
}

} // namespace prodcheck
