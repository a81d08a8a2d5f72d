#pragma once

#include "dcx/lp.hpp"
#include "dcx/table.hpp"

namespace dcx {

// A coupling of two measures over the same attribute list T, stored on the
// concatenated list T (+) T. The first copy occupies positions 0..n, the
// second copy positions n+1..2n+1; serialization records both index maps.
struct Coupling {
    AttributeList list;                          // T (+) T
    AttributeInclusion red1, red2;               // the two copy inclusions
    std::map<std::pair<Tuple, Tuple>, Rational> atoms;

    DataTable first_marginal() const;
    DataTable second_marginal() const;
};

struct TransportResult {
    Rational cost = 0;
    Coupling coupling;
};

// Exact Wasserstein-1 distance with the L-infinity ground metric.
// Requires equal lists and equal total masses; throws otherwise.
Rational wasserstein(const Schema& schema, const DataTable& t1, const DataTable& t2,
                     const LPOptions& options = {});

// Distance together with a minimizing coupling whose marginals verify exactly.
TransportResult optimal_coupling(const Schema& schema, const DataTable& t1, const DataTable& t2,
                                 const LPOptions& options = {});

}  // namespace dcx
