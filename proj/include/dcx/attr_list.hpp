#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dcx/schema.hpp"

namespace dcx {

// Order-preserving, one-to-one, entry-compatible index map source -> target.
struct AttributeInclusion {
    AttributeList source;
    AttributeList target;
    std::vector<size_t> index_map;  // strictly increasing, one entry per source position

    static AttributeInclusion identity(const AttributeList& list);
    bool is_identity() const { return source.size() == target.size(); }
};

bool validate_inclusion(const AttributeInclusion& inc);
// Throws std::invalid_argument when the inclusion is malformed.
void require_valid_inclusion(const AttributeInclusion& inc, const char* what);

// Omission of entry i; length n+1 >= 1 required.
AttributeList face_list(const AttributeList& list, size_t i);
// Repetition of entry i.
AttributeList degeneracy_list(const AttributeList& list, size_t i);

// The quotient list T/iota and the complementary inclusion iota^c.
struct QuotientResult {
    AttributeList quotient;
    AttributeInclusion complement;
};
QuotientResult quotient(const AttributeInclusion& inc);

// Concatenation T1 (+) T2 with its two canonical inclusions.
struct SumResult {
    AttributeList sum;
    AttributeInclusion left;
    AttributeInclusion right;
};
SumResult concat_sum(const AttributeList& t1, const AttributeList& t2);

// Merge of T01 and T02 along a shared overlap T0.  The interleaving is the
// splice order: between consecutive anchors the T01 segment precedes the T02
// segment, which makes outputs reproducible byte for byte.
struct MergeResult {
    AttributeList merged;       // T012
    AttributeInclusion mu01;    // T01  -> T012
    AttributeInclusion mu02;    // T02  -> T012
    AttributeInclusion iota0;   // T0   -> T012
    AttributeInclusion iota1;   // T01/iota01 -> T012
    AttributeInclusion iota2;   // T02/iota02 -> T012
};
MergeResult merge_lists(const AttributeInclusion& iota01, const AttributeInclusion& iota02);

// Ascending face indices whose application (last index first) sends the
// target of `inc` to its source; equals the complement's index map.
std::vector<size_t> inclusion_to_faces(const AttributeInclusion& inc);

// All inclusions source -> target compatible with the entries, in
// lexicographic index order. Empty when none exist.
std::vector<AttributeInclusion> enumerate_inclusions(const AttributeList& source,
                                                     const AttributeList& target);

// All sublists of `list` (as inclusions), grouped by nothing; each strictly
// increasing index subset once, including the empty and the full one.
std::vector<AttributeInclusion> enumerate_subinclusions(const AttributeList& list);

bool is_permutation_of_positions(const std::vector<size_t>& sigma, size_t n);
AttributeList permute_list(const AttributeList& list, const std::vector<size_t>& sigma);

// True when no entry repeats anywhere (one-to-one list).
bool is_nondegenerate(const AttributeList& list);
// True when the list is the image of a degeneracy map, i.e. has two equal
// adjacent entries. Normalized chains quotient these out.
bool is_degenerate_cell(const AttributeList& list);

std::string list_to_string(const AttributeList& list);

}  // namespace dcx
