#pragma once

#include <optional>
#include <set>

#include "dcx/table.hpp"

namespace dcx {

// A finitely generated data subcomplex: everything reachable from the
// generators by faces, degeneracies, and (when flagged) permutations.
struct DataComplexGen {
    Schema schema;
    std::vector<DataTable> generators;
    bool closed_under_permutation = false;
};

// Problems with a generator set (unknown labels, empty generator list, ...).
std::vector<std::string> validate_complex(const DataComplexGen& complex);

// All derivable tables with list length <= max_len, deduplicated.
// Faces of long generators are always explored, so short tables reachable
// through longer ones are included. Throws when max_len < 0 is simulated by
// the caller passing a negative value cast; use the int overload.
std::set<DataTable> closure_up_to(const DataComplexGen& complex, int max_len);

struct AlignmentFailure {
    DataTable left, right;
    AttributeInclusion left_inclusion, right_inclusion;
    std::string describe() const;
};

// Checks that every common-source pair of reductions between closure tables
// coincides. Returns a failure witness, or nullopt when well-aligned.
std::optional<AlignmentFailure> is_well_aligned(const DataComplexGen& complex, int max_len);

// Graph reachability over generators linked by a shared attribute with equal
// single-attribute reductions. Also reports the components on failure.
struct ConnectivityReport {
    bool connected = false;
    std::vector<std::vector<size_t>> components;  // generator indices
};
ConnectivityReport is_path_connected(const DataComplexGen& complex);

}  // namespace dcx
