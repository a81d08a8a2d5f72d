#include "dcx/transport.hpp"

#include <stdexcept>

namespace dcx {

DataTable Coupling::first_marginal() const {
    DataTable out;
    out.list = red1.source;
    for (const auto& [pair, mass] : atoms) out.add_mass(pair.first, mass);
    return out;
}

DataTable Coupling::second_marginal() const {
    DataTable out;
    out.list = red2.source;
    for (const auto& [pair, mass] : atoms) out.add_mass(pair.second, mass);
    return out;
}

namespace {

void check_transport_preconditions(const DataTable& t1, const DataTable& t2) {
    if (t1.list != t2.list)
        throw std::invalid_argument("wasserstein requires identical attribute lists");
    if (total_mass(t1) != total_mass(t2))
        throw std::invalid_argument("wasserstein requires equal total masses");
}

}  // namespace

TransportResult optimal_coupling(const Schema& schema, const DataTable& t1, const DataTable& t2,
                                 const LPOptions& options) {
    check_transport_preconditions(t1, t2);

    TransportResult result;
    SumResult sum = concat_sum(t1.list, t2.list);
    result.coupling.list = sum.sum;
    result.coupling.red1 = sum.left;
    result.coupling.red2 = sum.right;

    if (t1.atoms.empty()) return result;  // zero mass: the empty coupling

    // One variable per support pair; marginals outside the supports are zero.
    LinearProgram lp;
    std::vector<std::pair<Tuple, Tuple>> pairs;
    std::vector<LinearTerm> cost;
    for (const auto& [x, mx] : t1.atoms)
        for (const auto& [y, my] : t2.atoms) {
            size_t v = lp.add_variable("pi");
            pairs.emplace_back(x, y);
            cost.push_back({v, product_distance(schema, t1.list, x, y)});
        }
    size_t cols = t2.atoms.size();
    size_t row_index = 0;
    for (const auto& [x, mx] : t1.atoms) {
        std::vector<LinearTerm> terms;
        for (size_t j = 0; j < cols; ++j) terms.push_back({row_index * cols + j, Rational(1)});
        lp.add_constraint(std::move(terms), Sense::Equal, mx);
        ++row_index;
    }
    size_t col_index = 0;
    for (const auto& [y, my] : t2.atoms) {
        std::vector<LinearTerm> terms;
        for (size_t i = 0; i < t1.atoms.size(); ++i)
            terms.push_back({i * cols + col_index, Rational(1)});
        lp.add_constraint(std::move(terms), Sense::Equal, my);
        ++col_index;
    }
    lp.set_objective(std::move(cost));

    LPResult sol = minimize(lp, options);
    if (sol.status == LPStatus::BudgetExceeded)
        throw std::runtime_error("transport solve exceeded the variable budget: " + sol.message);
    if (sol.status != LPStatus::Optimal)
        throw std::logic_error("transportation polytope with matching marginals must be solvable");

    result.cost = sol.objective;
    for (size_t v = 0; v < pairs.size(); ++v)
        if (sol.assignment[v] != 0) result.coupling.atoms[pairs[v]] = sol.assignment[v];

    // Marginals of the returned coupling verify exactly.
    if (result.coupling.first_marginal() != t1 || result.coupling.second_marginal() != t2)
        throw std::logic_error("optimal coupling failed marginal re-verification");
    return result;
}

Rational wasserstein(const Schema& schema, const DataTable& t1, const DataTable& t2,
                     const LPOptions& options) {
    return optimal_coupling(schema, t1, t2, options).cost;
}

}  // namespace dcx
