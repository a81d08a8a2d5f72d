#pragma once

#include <set>
#include <vector>

#include "dcx/attr_list.hpp"

namespace dcx {

// A Z/2 chain of attribute lists, all of one grading level.
// Set semantics: a cell is present iff its coefficient is 1.
struct Chain2 {
    std::set<AttributeList> cells;

    bool empty() const { return cells.empty(); }
    // Common list length; throws when lengths are mixed.
    size_t level_length() const;
    // Symmetric difference (addition over Z/2).
    void toggle(const AttributeList& cell);
};

// Boundary of a Z/2 chain: all faces, duplicates cancelling.
// Throws when the chain sits at level -1 (empty lists have no faces).
Chain2 boundary_chain(const Chain2& chain);

// Z/2 Betti number at level k of a face-closed complex of attribute lists,
// computed on normalized (nondegenerate) cells.
// Throws std::invalid_argument when the set is not closed under faces.
size_t homology_rank(const std::set<AttributeList>& complex_cells, size_t k);

}  // namespace dcx
