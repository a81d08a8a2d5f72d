#pragma once

#include <optional>

#include "dcx/complex.hpp"
#include "dcx/joins.hpp"

namespace dcx {

// Thrown when a solve would exceed the configured variable budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A data section specified on a single grading level; lower levels are
// inferred through the face maps.
struct DataSection {
    int level = 0;                             // grading level of the cells (length - 1)
    std::map<AttributeList, DataTable> cells;  // one table per attribute list
};

// Cross-cell naturality problems ("" when natural).
std::vector<std::string> validate_section(const DataSection& section);

// Witness that one entry of a table is approximated by the complex.
struct FiltrationWitness {
    AttributeInclusion inclusion;  // S into t.list covering the entry
    DataTable closure_table;       // (S, sigma) from the complex
    Rational distance;             // exact Wasserstein cost, <= slack
};

struct FiltrationResult {
    bool member = false;
    std::map<size_t, FiltrationWitness> witnesses;  // per entry position
    std::vector<std::string> notes;                 // skipped witnesses etc.
};

// Membership of a table in the approximate-join complex at the given slack:
// every entry must be witnessed by a closure table within the slack.
FiltrationResult in_filtration(const DataTable& table, const DataComplexGen& complex,
                               const Rational& slack, const LPOptions& options = {});

struct CellVerdict {
    bool trivial = false;
    FillResult fill;  // witness when trivial; infeasible record otherwise
};

struct CocycleReport {
    int level = 0;  // grading level n of the queried cells
    Rational slack = 0;
    std::map<AttributeList, CellVerdict> values;

    bool all_trivial() const;
};

// Evaluates the obstruction cocycle on the queried level-n cells: a cell is
// trivial iff its boundary under the section fills within the slack.
CocycleReport evaluate_cocycle(const DataSection& section, const DataComplexGen& complex,
                               const std::vector<AttributeList>& cells, const Rational& slack,
                               const LPOptions& options = {});

struct CoboundaryResult {
    bool coboundary = false;
    DataSection modified;                      // replacement section on the same cells
    std::map<AttributeList, DataTable> fills;  // one filler per queried cell
    std::optional<Rational> minimal_slack;     // set by persistence_tprime
};

// Searches for a replacement section agreeing with the original on all
// (n-2)-faces whose cells all fill within the slack. One joint LP per
// filtration-witness combination; the verdict is labeled a restricted search.
CoboundaryResult is_coboundary(const DataSection& section, const DataComplexGen& complex,
                               const std::vector<AttributeList>& cells, const Rational& slack,
                               const LPOptions& options = {});

struct TrichotomyVerdict {
    int case_number = 0;  // 1, 2, or 3
    CocycleReport cocycle;
    std::optional<CoboundaryResult> repair;  // present for cases 2 and 3
};

TrichotomyVerdict classify_trichotomy(const DataSection& section, const DataComplexGen& complex,
                                      const std::vector<AttributeList>& cells,
                                      const Rational& slack, const LPOptions& options = {});

struct PersistenceResult {
    std::optional<Rational> t_n;        // empty = +infinity
    std::optional<Rational> t_prime_n;  // empty = +infinity
    std::map<AttributeList, DataTable> t_witnesses;        // fillers achieving t_n
    std::optional<CoboundaryResult> t_prime_witness;       // repair achieving t_prime_n
};

// Minimal slack at which the cocycle is trivial (max of per-cell minima).
PersistenceResult persistence_t(const DataSection& section, const DataComplexGen& complex,
                                const std::vector<AttributeList>& cells,
                                const LPOptions& options = {});

// Minimal slack at which the class is trivial (restricted repair search).
PersistenceResult persistence_tprime(const DataSection& section, const DataComplexGen& complex,
                                     const std::vector<AttributeList>& cells,
                                     const LPOptions& options = {});

// Both levels together; t_prime_n <= t_n always.
PersistenceResult persistence(const DataSection& section, const DataComplexGen& complex,
                              const std::vector<AttributeList>& cells,
                              const LPOptions& options = {});

// Default cell enumeration: nondegenerate level-n lists all of whose faces
// lie in the section's domain, in lexicographic order.
std::vector<AttributeList> default_cells(const DataSection& section, const Schema& schema);

// Builds the section from a well-aligned complex at the given level.
// Throws when some list carries more than one closure table.
DataSection section_from_complex(const DataComplexGen& complex, int level);

}  // namespace dcx
