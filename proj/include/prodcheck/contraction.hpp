#pragma once

#include <optional>
#include <vector>

#include "prodcheck/term.hpp"

namespace prodcheck {

enum class LeafKind { variable, constant };

/// Evidence that t2 is a contraction of t1 (t1 ▷ t2) at `position`: t2 has a
/// leaf there, t1 has the non-leaf `reducing_subterm`, and both trees carry
/// identical symbols on the path above it.
struct ContractionWitness {
    Position position;
    Term reducing_subterm;
    Term leaf;      ///< the leaf of t2 at `position` (a variable or constant)
    bool recursive; ///< reducing_subterm contains the leaf symbol
    LeafKind leaf_kind;

    const std::string& leaf_symbol() const { return leaf.name(); }
};

/// All contraction witnesses of t1 ▷ t2, ordered lexicographically by position.
/// Empty when the atoms have different predicates.
std::vector<ContractionWitness> contraction_witnesses(const Atom& t1, const Atom& t2);

/// First recursive witness of t1 ▷ t2, if any.
std::optional<ContractionWitness> has_recursive_contraction(const Atom& t1, const Atom& t2);

std::vector<ContractionWitness> recursive_witnesses(const Atom& t1, const Atom& t2);

} // namespace prodcheck
