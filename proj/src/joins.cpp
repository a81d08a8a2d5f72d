#include "dcx/joins.hpp"

#include <stdexcept>

namespace dcx {

void JoinProblem::require_valid() const {
    require_valid_inclusion(i01, "join overlap into t01");
    require_valid_inclusion(i02, "join overlap into t02");
    if (i01.source != i02.source)
        throw std::invalid_argument("join inclusions must share a source list");
    if (i01.target != t01.list || i02.target != t02.list)
        throw std::invalid_argument("join inclusions must target the problem's tables");
}

bool overlap_consistent(const JoinProblem& p) {
    p.require_valid();
    return reduce(p.t01, p.i01) == reduce(p.t02, p.i02);
}

bool joins_feasible(const JoinProblem& p) { return overlap_consistent(p); }

GlueResult conditional_glue(const JoinProblem& p) {
    if (!overlap_consistent(p))
        throw std::invalid_argument("conditional_glue requires a consistent overlap");

    GlueResult out;
    out.merge = merge_lists(p.i01, p.i02);
    out.table.list = out.merge.merged;

    DataTable overlap = reduce(p.t01, p.i01);

    auto project = [](const Tuple& tuple, const AttributeInclusion& inc) {
        Tuple t(inc.index_map.size());
        for (size_t i = 0; i < inc.index_map.size(); ++i) t[i] = tuple[inc.index_map[i]];
        return t;
    };

    for (const auto& [u1, m1] : p.t01.atoms) {
        Tuple o1 = project(u1, p.i01);
        for (const auto& [u2, m2] : p.t02.atoms) {
            Tuple o2 = project(u2, p.i02);
            if (o1 != o2) continue;
            const Rational& m0 = overlap.mass_at(o1);
            // m0 > 0 whenever an atom projects onto o1.
            Tuple w(out.merge.merged.size());
            for (size_t i = 0; i < u1.size(); ++i) w[out.merge.mu01.index_map[i]] = u1[i];
            for (size_t j = 0; j < u2.size(); ++j) w[out.merge.mu02.index_map[j]] = u2[j];
            out.table.add_mass(w, m1 * m2 / m0);
        }
    }
    return out;
}

std::optional<size_t> HornProblem::missing_face() const {
    std::optional<size_t> missing;
    for (size_t i = 0; i < full_list.size(); ++i)
        if (!faces.count(i)) {
            if (missing) return std::nullopt;  // more than one hole: not a horn
            missing = i;
        }
    return missing;
}

namespace {

void check_face_lists(const HornProblem& h) {
    if (h.full_list.empty()) throw std::invalid_argument("fill problems need a nonempty list");
    for (const auto& [i, f] : h.faces) {
        if (i >= h.full_list.size()) throw std::invalid_argument("face index out of range");
        if (f.list != face_list(h.full_list, i))
            throw std::invalid_argument("face " + std::to_string(i) +
                                        " is not over the boundary list of " +
                                        list_to_string(h.full_list));
    }
}

void check_exact_compatibility(const HornProblem& h) {
    for (const auto& [j, fj] : h.faces)
        for (const auto& [i, fi] : h.faces) {
            if (i >= j) continue;
            // d_i f_j and d_{j-1} f_i are the two routes to the shared sub-face.
            if (marginalize(fj, i) != marginalize(fi, j - 1))
                throw std::invalid_argument("incompatible horn: faces " + std::to_string(i) +
                                            " and " + std::to_string(j) +
                                            " disagree on their shared sub-face");
        }
}

Tuple drop_position(const Tuple& tuple, size_t i) {
    Tuple out = tuple;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
}

struct BoundaryLP {
    LinearProgram lp;
    std::vector<Tuple> joint_tuples;
    size_t slack_var = 0;  // only in minimize mode
};

// Shared constraint system for boundary filling. In minimize mode the slack
// is a fresh variable and every face cost row reads cost - t <= 0.
BoundaryLP build_boundary_lp(const Schema& schema, const HornProblem& h, bool minimize_slack,
                             const LPOptions& options) {
    BoundaryLP b;
    b.joint_tuples = enumerate_value_tuples(schema, h.full_list, options.variable_budget);
    std::map<Tuple, size_t> joint_index;
    for (const auto& u : b.joint_tuples) joint_index[u] = b.lp.add_variable("x");

    if (minimize_slack) {
        b.slack_var = b.lp.add_variable("t");
        b.lp.set_objective({{b.slack_var, Rational(1)}});
    }

    for (const auto& [i, f] : h.faces) {
        AttributeList flist = face_list(h.full_list, i);
        std::vector<Tuple> face_tuples = enumerate_value_tuples(schema, flist, options.variable_budget);
        std::map<Tuple, std::vector<size_t>> fibers;  // face tuple -> joint vars
        for (const auto& u : b.joint_tuples) fibers[drop_position(u, i)].push_back(joint_index[u]);

        bool exact = !minimize_slack && h.slack == 0;
        if (exact) {
            for (const auto& a : face_tuples) {
                std::vector<LinearTerm> terms;
                for (size_t v : fibers[a]) terms.push_back({v, Rational(1)});
                b.lp.add_constraint(std::move(terms), Sense::Equal, f.mass_at(a),
                                    "face" + std::to_string(i));
            }
            continue;
        }

        // Coupling block tying the filler's face to the given table within the slack.
        std::map<std::pair<size_t, size_t>, size_t> pi;  // (face tuple idx, supp idx) -> var
        std::vector<const Tuple*> supp;
        for (const auto& [bt, bm] : f.atoms) supp.push_back(&bt);
        for (size_t ai = 0; ai < face_tuples.size(); ++ai)
            for (size_t bi = 0; bi < supp.size(); ++bi)
                pi[{ai, bi}] = b.lp.add_variable("pi");

        for (size_t ai = 0; ai < face_tuples.size(); ++ai) {
            std::vector<LinearTerm> terms;
            for (size_t bi = 0; bi < supp.size(); ++bi) terms.push_back({pi[{ai, bi}], Rational(1)});
            for (size_t v : fibers[face_tuples[ai]]) terms.push_back({v, Rational(-1)});
            b.lp.add_constraint(std::move(terms), Sense::Equal, Rational(0),
                                "face" + std::to_string(i) + ".left");
        }
        size_t bi = 0;
        for (const auto& [bt, bm] : f.atoms) {
            std::vector<LinearTerm> terms;
            for (size_t ai = 0; ai < face_tuples.size(); ++ai)
                terms.push_back({pi[{ai, bi}], Rational(1)});
            b.lp.add_constraint(std::move(terms), Sense::Equal, bm,
                                "face" + std::to_string(i) + ".right");
            ++bi;
        }
        std::vector<LinearTerm> cost;
        for (size_t ai = 0; ai < face_tuples.size(); ++ai) {
            bi = 0;
            for (const auto& [bt, bm] : f.atoms) {
                Rational d = product_distance(schema, flist, face_tuples[ai], bt);
                if (d != 0) cost.push_back({pi[{ai, bi}], d});
                ++bi;
            }
        }
        if (minimize_slack) {
            cost.push_back({b.slack_var, Rational(-1)});
            b.lp.add_constraint(std::move(cost), Sense::LessEq, Rational(0),
                                "face" + std::to_string(i) + ".cost");
        } else {
            b.lp.add_constraint(std::move(cost), Sense::LessEq, h.slack,
                                "face" + std::to_string(i) + ".cost");
        }
    }
    return b;
}

DataTable extract_joint(const AttributeList& list, const std::vector<Tuple>& tuples,
                        const std::vector<Rational>& assignment) {
    DataTable out;
    out.list = list;
    for (size_t v = 0; v < tuples.size(); ++v)
        if (assignment[v] > 0) out.add_mass(tuples[v], assignment[v]);
    return out;
}

void attach_achieved_slacks(const Schema& schema, const HornProblem& h, FillResult& result,
                            const LPOptions& options) {
    for (const auto& [i, f] : h.faces)
        result.achieved_slacks[i] = wasserstein(schema, marginalize(result.table, i), f, options);
}

}  // namespace

FillResult fill_boundary(const Schema& schema, const HornProblem& h, const LPOptions& options) {
    check_face_lists(h);
    if (h.faces.size() != h.full_list.size())
        throw std::invalid_argument("fill_boundary expects a table for every face");
    if (h.slack < 0) throw std::invalid_argument("negative slack");

    FillResult result;
    BoundaryLP b;
    try {
        b = build_boundary_lp(schema, h, false, options);
    } catch (const std::runtime_error& e) {
        result.status = FillStatus::BudgetExceeded;
        result.message = e.what();
        return result;
    }
    LPResult sol = solve_feasibility(b.lp, options);
    if (sol.status == LPStatus::BudgetExceeded) {
        result.status = FillStatus::BudgetExceeded;
        result.message = sol.message;
        return result;
    }
    if (sol.status != LPStatus::Feasible) {
        result.status = FillStatus::Infeasible;
        return result;
    }
    result.status = FillStatus::Filled;
    result.table = extract_joint(h.full_list, b.joint_tuples, sol.assignment);
    attach_achieved_slacks(schema, h, result, options);
    return result;
}

FillResult fill_boundary_min_slack(const Schema& schema, const HornProblem& h,
                                   const LPOptions& options) {
    check_face_lists(h);
    if (h.faces.size() != h.full_list.size())
        throw std::invalid_argument("fill_boundary expects a table for every face");

    FillResult result;
    BoundaryLP b;
    try {
        b = build_boundary_lp(schema, h, true, options);
    } catch (const std::runtime_error& e) {
        result.status = FillStatus::BudgetExceeded;
        result.message = e.what();
        return result;
    }
    LPResult sol = minimize(b.lp, options);
    if (sol.status == LPStatus::BudgetExceeded) {
        result.status = FillStatus::BudgetExceeded;
        result.message = sol.message;
        return result;
    }
    if (sol.status != LPStatus::Optimal) {
        result.status = FillStatus::Infeasible;  // no coupling at any slack (mass mismatch)
        return result;
    }
    result.status = FillStatus::Filled;
    result.minimal_slack = sol.objective;
    result.table = extract_joint(h.full_list, b.joint_tuples, sol.assignment);
    attach_achieved_slacks(schema, h, result, options);
    return result;
}

FillResult fill_horn_lp(const Schema& schema, const HornProblem& h, const LPOptions& options) {
    check_face_lists(h);
    if (!h.missing_face())
        throw std::invalid_argument("fill_horn expects exactly one missing face");
    check_exact_compatibility(h);

    FillResult result;
    HornProblem exact = h;
    exact.slack = 0;

    BoundaryLP b;
    try {
        b = build_boundary_lp(schema, exact, false, options);
    } catch (const std::runtime_error& e) {
        result.status = FillStatus::BudgetExceeded;
        result.message = e.what();
        return result;
    }
    LPResult sol = solve_feasibility(b.lp, options);
    if (sol.status == LPStatus::BudgetExceeded) {
        result.status = FillStatus::BudgetExceeded;
        result.message = sol.message;
        return result;
    }
    if (sol.status != LPStatus::Feasible)
        throw std::logic_error("exactly compatible horn did not fill; ambient fibrancy violated");
    result.status = FillStatus::Filled;
    result.table = extract_joint(h.full_list, b.joint_tuples, sol.assignment);
    for (const auto& [i, f] : h.faces)
        if (marginalize(result.table, i) != f)
            throw std::logic_error("horn filler failed exact face re-verification");
    for (const auto& [i, f] : h.faces) result.achieved_slacks[i] = 0;
    return result;
}

namespace {

// Constructive filler core for a horn missing face 0.
// Returns nullopt when the probability-selection condition fails.
std::optional<DataTable> constructive_fill_missing0(const Schema& schema, const HornProblem& h) {
    size_t n = h.level();
    const AttributeList& T = h.full_list;

    if (n == 0) return std::nullopt;  // nothing to anchor a construction on

    if (n == 1) {
        // Product of the given face with the uniform probability on the free slot.
        const DataTable& f1 = h.faces.at(1);
        const ValueSpace& vs = schema.space_of(T[1]);
        DataTable out;
        out.list = T;
        for (const auto& [x, m] : f1.atoms)
            for (const auto& p : vs.points) {
                Tuple t = x;
                t.push_back(p);
                out.add_mass(t, m / Rational(vs.size()));
            }
        return out;
    }

    // Base case: per-atom trivial joins over the atoms of the first n-1 slots.
    const DataTable& f_n = h.faces.at(n);          // on positions 0..n-1
    const DataTable& f_nm1 = h.faces.at(n - 1);    // on positions 0..n-2, n
    DataTable common = marginalize(f_n, n - 1);    // positions 0..n-2

    SignedTable joint;
    joint.list = T;
    for (const auto& [u, mu] : common.atoms) {
        // Fibers over u of the two given faces.
        std::map<std::string, Rational> mu1, mu2;
        for (const auto& [x, m] : f_n.atoms)
            if (std::equal(u.begin(), u.end(), x.begin())) mu1[x[n - 1]] += m;
        for (const auto& [x, m] : f_nm1.atoms)
            if (std::equal(u.begin(), u.end(), x.begin())) mu2[x[n - 1]] += m;
        for (const auto& [a, m1] : mu1)
            for (const auto& [b, m2] : mu2) {
                Tuple t = u;
                t.push_back(a);
                t.push_back(b);
                joint.add_mass(t, m1 * m2 / mu);
            }
    }

    // Correction steps: repair faces n-2 down to 1.
    for (size_t m = n - 1; m >= 2; --m) {
        size_t fix = m - 1;
        SignedTable err = marginalize(joint, fix);
        for (const auto& [x, mass] : h.faces.at(fix).atoms) err.add_mass(x, -mass);
        if (err.atoms.empty()) continue;

        // Per-point caps: f({x}) = min over positive-error atoms of joint/err.
        const ValueSpace& vs = schema.space_of(T[fix]);
        std::map<std::string, Rational> cap;
        Rational cap_sum = 0;
        for (const auto& label : vs.points) {
            Rational best = 0;
            bool started = false;
            for (const auto& [wz, e] : err.atoms) {
                if (e <= 0) continue;
                Tuple full = wz;
                full.insert(full.begin() + static_cast<std::ptrdiff_t>(fix), label);
                Rational ratio = joint.mass_at(full) / e;
                if (!started || ratio < best) {
                    best = ratio;
                    started = true;
                }
            }
            cap[label] = started ? best : Rational(0);
            cap_sum += cap[label];
        }
        if (cap_sum < 1) return std::nullopt;  // selection condition fails; caller falls back

        // rho proportional to the caps; rho <= cap holds because cap_sum >= 1.
        for (const auto& [wz, e] : err.atoms)
            for (const auto& label : vs.points) {
                Rational rho = cap[label] / cap_sum;
                if (rho == 0) continue;
                Tuple full = wz;
                full.insert(full.begin() + static_cast<std::ptrdiff_t>(fix), label);
                joint.add_mass(full, -(rho * e));
            }
    }

    DataTable out;
    out.list = T;
    for (const auto& [t, m] : joint.atoms) {
        if (m < 0) throw std::logic_error("constructive filler produced negative mass");
        out.add_mass(t, m);
    }
    return out;
}

}  // namespace

FillResult fill_horn_constructive(const Schema& schema, const HornProblem& h,
                                  const LPOptions& options) {
    check_face_lists(h);
    auto missing = h.missing_face();
    if (!missing) throw std::invalid_argument("fill_horn expects exactly one missing face");
    check_exact_compatibility(h);

    size_t k = *missing;
    size_t len = h.full_list.size();

    // Reorder so the missing face sits at index 0, fill, and permute back.
    // sigma places original position k first.
    std::vector<size_t> sigma;
    sigma.push_back(k);
    for (size_t i = 0; i < len; ++i)
        if (i != k) sigma.push_back(i);

    HornProblem reordered;
    reordered.full_list = permute_list(h.full_list, sigma);
    for (const auto& [i, f] : h.faces) {
        // Face i of the original omits position i; in the reordered list it
        // becomes the face omitting sigma-slot of i.
        size_t j = 0;
        while (sigma[j] != i) ++j;
        // The face table's own positions need the induced reordering.
        std::vector<size_t> tau;
        for (size_t s = 0; s < len; ++s) {
            if (s == j) continue;
            size_t orig = sigma[s];
            tau.push_back(orig < i ? orig : orig - 1);  // index within face_list(original, i)
        }
        reordered.faces[j] = permute(f, tau);
    }

    FillResult result;
    std::optional<DataTable> filled = constructive_fill_missing0(schema, reordered);
    if (!filled) {
        result = fill_horn_lp(schema, h, options);
        result.fallback_to_lp = true;
        result.message = "probability-selection condition failed; used the LP filler";
        return result;
    }

    // Undo the reordering: position i of the original holds entry sigma^{-1}(i).
    std::vector<size_t> inverse(len);
    for (size_t i = 0; i < len; ++i) inverse[sigma[i]] = i;
    result.table = permute(*filled, inverse);
    result.status = FillStatus::Filled;
    for (const auto& [i, f] : h.faces) {
        if (marginalize(result.table, i) != f)
            throw std::logic_error("constructive filler failed exact face re-verification");
        result.achieved_slacks[i] = 0;
    }
    return result;
}

}  // namespace dcx
