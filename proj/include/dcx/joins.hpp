#pragma once

#include <map>
#include <optional>

#include "dcx/lp.hpp"
#include "dcx/table.hpp"
#include "dcx/transport.hpp"

namespace dcx {

// Two tables with designated inclusions from a shared overlap list.
struct JoinProblem {
    DataTable t01, t02;
    AttributeInclusion i01, i02;  // common source T0; targets t01.list / t02.list

    // Throws std::invalid_argument when the inclusions do not line up.
    void require_valid() const;
};

// True iff both reductions to the overlap agree exactly.
bool overlap_consistent(const JoinProblem& p);

// Nonemptiness of the join space; constructive via conditional_glue.
bool joins_feasible(const JoinProblem& p);

// The canonical element of the join space: the conditional product over the
// overlap, placed on the merged attribute list. Requires overlap consistency.
struct GlueResult {
    DataTable table;
    MergeResult merge;
};
GlueResult conditional_glue(const JoinProblem& p);

// A boundary or horn filling problem on `full_list`: face index -> table for
// every provided face. For horn problems exactly one index is missing.
struct HornProblem {
    AttributeList full_list;
    std::map<size_t, DataTable> faces;
    Rational slack = 0;  // 0 = exact reproduction of every face

    size_t level() const { return full_list.size() - 1; }  // n
    std::optional<size_t> missing_face() const;
};

enum class FillStatus { Filled, Infeasible, BudgetExceeded };

struct FillResult {
    FillStatus status = FillStatus::Infeasible;
    DataTable table;
    std::map<size_t, Rational> achieved_slacks;  // exact per-face Wasserstein costs
    bool fallback_to_lp = false;                 // constructive filler delegated to the LP
    std::optional<Rational> minimal_slack;       // set by fill_boundary_min_slack
    std::string message;
};

// Fills a full boundary: every provided face reproduced within Wasserstein
// slack (exactly when slack is 0). One LP: joint atoms plus one coupling
// block per face.
FillResult fill_boundary(const Schema& schema, const HornProblem& h, const LPOptions& options = {});

// Same constraint system with the slack as a variable, minimized.
FillResult fill_boundary_min_slack(const Schema& schema, const HornProblem& h,
                                   const LPOptions& options = {});

// Fills a horn (one face missing) exactly. Throws on incompatible faces;
// never returns Infeasible on exactly-compatible horns.
FillResult fill_horn_lp(const Schema& schema, const HornProblem& h, const LPOptions& options = {});

// The constructive filler: per-atom trivial joins for the base case, then
// face-correction steps. Falls back to fill_horn_lp (and says so) when the
// probability-selection step has no admissible solution.
FillResult fill_horn_constructive(const Schema& schema, const HornProblem& h,
                                  const LPOptions& options = {});

}  // namespace dcx
