#include "dcx/obstruction.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcx {

namespace {

Tuple drop_position(const Tuple& tuple, size_t i) {
    Tuple out = tuple;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
}

std::string join_indices(const std::vector<size_t>& ids) {
    std::string s;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(ids[i]);
    }
    return s;
}

void require_connected(const DataComplexGen& complex) {
    ConnectivityReport rep = is_path_connected(complex);
    if (rep.connected) return;
    std::string msg = "complex is not path-connected; generator components:";
    for (const auto& comp : rep.components) msg += " {" + join_indices(comp) + "}";
    throw std::invalid_argument(msg);
}

void require_section_in_complex(const DataSection& section, const DataComplexGen& complex) {
    std::set<DataTable> closure = closure_up_to(complex, section.level + 1);
    for (const auto& [list, table] : section.cells)
        if (!closure.count(table))
            throw std::invalid_argument("section value over " + list_to_string(list) +
                                        " is not a table of the complex");
}

void require_natural(const DataSection& section) {
    auto problems = validate_section(section);
    if (!problems.empty()) throw std::invalid_argument("section not natural: " + problems.front());
}

}  // namespace

std::vector<std::string> validate_section(const DataSection& section) {
    std::vector<std::string> out;
    for (const auto& [list, table] : section.cells) {
        if (static_cast<int>(list.size()) != section.level + 1)
            out.push_back("cell " + list_to_string(list) + " is not at level " +
                          std::to_string(section.level));
        if (table.list != list)
            out.push_back("table under " + list_to_string(list) + " is over " +
                          list_to_string(table.list));
    }
    if (!out.empty()) return out;

    // Shared faces must receive one value, no matter which cell derives them.
    std::map<AttributeList, std::pair<DataTable, AttributeList>> derived;
    for (const auto& [list, table] : section.cells)
        for (size_t j = 0; j < list.size(); ++j) {
            DataTable f = marginalize(table, j);
            auto it = derived.find(f.list);
            if (it == derived.end())
                derived.emplace(f.list, std::make_pair(f, list));
            else if (it->second.first != f)
                out.push_back("faces over " + list_to_string(f.list) + " disagree between " +
                              list_to_string(it->second.second) + " and " + list_to_string(list));
        }
    // Degenerate cells must be degeneracies of their own faces.
    for (const auto& [list, table] : section.cells)
        for (size_t j = 0; j + 1 < list.size(); ++j)
            if (list[j] == list[j + 1] && diagonal(marginalize(table, j), j) != table)
                out.push_back("cell " + list_to_string(list) +
                              " is degenerate but its table is not a diagonal");
    return out;
}

FiltrationResult in_filtration(const DataTable& table, const DataComplexGen& complex,
                               const Rational& slack, const LPOptions& options) {
    if (slack < 0) throw std::invalid_argument("negative slack");
    FiltrationResult result;
    std::set<DataTable> closure = closure_up_to(complex, static_cast<int>(table.list.size()));

    for (size_t p = 0; p < table.list.size(); ++p) {
        bool found = false;
        for (const auto& witness : closure) {
            if (witness.list.empty()) continue;
            for (const auto& inc : enumerate_inclusions(witness.list, table.list)) {
                bool covers = std::find(inc.index_map.begin(), inc.index_map.end(), p) !=
                              inc.index_map.end();
                if (!covers) continue;
                DataTable red = reduce(table, inc);
                if (total_mass(red) != total_mass(witness)) {
                    result.notes.push_back("witness over " + list_to_string(witness.list) +
                                           " skipped: total mass differs");
                    continue;
                }
                Rational d = wasserstein(complex.schema, red, witness, options);
                if (d <= slack) {
                    result.witnesses[p] = {inc, witness, d};
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        if (!found) {
            result.member = false;
            return result;
        }
    }
    result.member = true;
    return result;
}

bool CocycleReport::all_trivial() const {
    for (const auto& [cell, verdict] : values)
        if (!verdict.trivial) return false;
    return true;
}

namespace {

HornProblem boundary_problem(const DataSection& section, const AttributeList& cell,
                             const Rational& slack) {
    HornProblem h;
    h.full_list = cell;
    h.slack = slack;
    for (size_t i = 0; i < cell.size(); ++i) {
        AttributeList f = face_list(cell, i);
        auto it = section.cells.find(f);
        if (it == section.cells.end())
            throw std::invalid_argument("section does not cover face " + list_to_string(f) +
                                        " of cell " + list_to_string(cell));
        h.faces[i] = it->second;
    }
    return h;
}

void check_cocycle_inputs(const DataSection& section, const DataComplexGen& complex,
                          const std::vector<AttributeList>& cells) {
    require_connected(complex);
    require_natural(section);
    require_section_in_complex(section, complex);
    for (const auto& cell : cells)
        if (static_cast<int>(cell.size()) != section.level + 2)
            throw std::invalid_argument("queried cell " + list_to_string(cell) +
                                        " is not one level above the section");
}

}  // namespace

CocycleReport evaluate_cocycle(const DataSection& section, const DataComplexGen& complex,
                               const std::vector<AttributeList>& cells, const Rational& slack,
                               const LPOptions& options) {
    if (slack < 0) throw std::invalid_argument("negative slack");
    check_cocycle_inputs(section, complex, cells);

    CocycleReport report;
    report.level = section.level + 1;
    report.slack = slack;
    for (const auto& cell : cells) {
        FillResult fill =
            fill_boundary(complex.schema, boundary_problem(section, cell, slack), options);
        if (fill.status == FillStatus::BudgetExceeded)
            throw BudgetError("cocycle cell " + list_to_string(cell) + ": " + fill.message);
        report.values[cell] = {fill.status == FillStatus::Filled, std::move(fill)};
    }
    return report;
}

namespace {

// A linear expression: terms plus a constant, used for coupling marginals.
struct Expr {
    std::vector<LinearTerm> terms;
    Rational constant = 0;
};

struct CoboundaryLP {
    LinearProgram lp;
    std::map<AttributeList, std::pair<size_t, std::vector<Tuple>>> repair_vars;
    std::map<AttributeList, std::pair<size_t, std::vector<Tuple>>> fill_vars;
    size_t slack_var = 0;
    bool minimize_slack = false;

    // Adds a transport block: pi >= 0 with left marginal equal to left[a],
    // right marginal equal to right[b], and total cost bounded by the slack.
    // At slack zero the transport degenerates to per-tuple equality, which
    // needs no coupling variables at all.
    void add_coupling(const Schema& schema, const AttributeList& flist,
                      const std::vector<Tuple>& face_tuples, const std::vector<Expr>& left,
                      const std::vector<Expr>& right, const Rational& slack) {
        if (!minimize_slack && slack == 0) {
            for (size_t i = 0; i < face_tuples.size(); ++i) {
                std::vector<LinearTerm> terms = left[i].terms;
                for (const auto& t : right[i].terms) terms.push_back({t.var, -t.coeff});
                lp.add_constraint(std::move(terms), Sense::Equal,
                                  right[i].constant - left[i].constant, "cpl.eq");
            }
            return;
        }
        size_t n = face_tuples.size();
        std::vector<size_t> pi(n * n);
        for (size_t i = 0; i < n * n; ++i) pi[i] = lp.add_variable("pi");
        for (size_t ai = 0; ai < n; ++ai) {
            std::vector<LinearTerm> terms;
            for (size_t bi = 0; bi < n; ++bi) terms.push_back({pi[ai * n + bi], Rational(1)});
            for (const auto& t : left[ai].terms) terms.push_back({t.var, -t.coeff});
            lp.add_constraint(std::move(terms), Sense::Equal, left[ai].constant, "cpl.left");
        }
        for (size_t bi = 0; bi < n; ++bi) {
            std::vector<LinearTerm> terms;
            for (size_t ai = 0; ai < n; ++ai) terms.push_back({pi[ai * n + bi], Rational(1)});
            for (const auto& t : right[bi].terms) terms.push_back({t.var, -t.coeff});
            lp.add_constraint(std::move(terms), Sense::Equal, right[bi].constant, "cpl.right");
        }
        std::vector<LinearTerm> cost;
        for (size_t ai = 0; ai < n; ++ai)
            for (size_t bi = 0; bi < n; ++bi) {
                Rational d = product_distance(schema, flist, face_tuples[ai], face_tuples[bi]);
                if (d != 0) cost.push_back({pi[ai * n + bi], d});
            }
        if (minimize_slack) {
            cost.push_back({slack_var, Rational(-1)});
            lp.add_constraint(std::move(cost), Sense::LessEq, Rational(0), "cpl.cost");
        } else {
            lp.add_constraint(std::move(cost), Sense::LessEq, slack, "cpl.cost");
        }
    }
};

// Joint program: an unknown replacement table per section cell, pinned to the
// section's (n-2)-faces, one filler per queried cell coupled to the
// replacements within the slack, and (for level-0 sections, where no pinned
// face covers the entries) one explicit filtration-witness block per cell.
CoboundaryLP build_coboundary_lp(const DataSection& section, const DataComplexGen& complex,
                                 const std::vector<AttributeList>& cells, const Rational& slack,
                                 bool minimize_slack,
                                 const std::map<AttributeList, DataTable>& witness_choice,
                                 const LPOptions& options) {
    const Schema& schema = complex.schema;
    CoboundaryLP b;
    b.minimize_slack = minimize_slack;

    // Only cells touched by a queried fill get variables. Untouched cells
    // keep the section's value, and degenerate cells are fully determined by
    // their pinned faces; both enter the program as constants.
    std::set<AttributeList> touched;
    for (const auto& cell : cells)
        for (size_t i = 0; i < cell.size(); ++i) touched.insert(face_list(cell, i));
    for (const auto& flist : touched)
        if (!section.cells.count(flist))
            throw std::invalid_argument("section does not cover face " + list_to_string(flist));

    for (const auto& [list, table] : section.cells) {
        if (!touched.count(list) || is_degenerate_cell(list)) continue;
        std::vector<Tuple> tuples = enumerate_value_tuples(schema, list, options.variable_budget);
        size_t base = b.lp.variable_count();
        for (size_t i = 0; i < tuples.size(); ++i) b.lp.add_variable("r");
        b.repair_vars[list] = {base, std::move(tuples)};
    }
    if (minimize_slack) {
        b.slack_var = b.lp.add_variable("t");
        b.lp.set_objective({{b.slack_var, Rational(1)}});
    }

    // Pin every face of every free replacement cell to the section's value.
    for (const auto& [list, entry] : b.repair_vars) {
        const auto& [base, tuples] = entry;
        const DataTable& table = section.cells.at(list);
        for (size_t j = 0; j < list.size(); ++j) {
            DataTable pinned = marginalize(table, j);
            std::map<Tuple, std::vector<size_t>> fibers;
            for (size_t u = 0; u < tuples.size(); ++u)
                fibers[drop_position(tuples[u], j)].push_back(base + u);
            for (const auto& [a, vars] : fibers) {
                std::vector<LinearTerm> terms;
                for (size_t v : vars) terms.push_back({v, Rational(1)});
                b.lp.add_constraint(std::move(terms), Sense::Equal, pinned.mass_at(a), "pin");
            }
        }
    }

    // Forced value of a degenerate cell: the diagonal over its pinned face.
    auto forced_value = [&](const AttributeList& list) {
        const DataTable& table = section.cells.at(list);
        size_t j = 0;
        while (list[j] != list[j + 1]) ++j;
        return diagonal(marginalize(table, j), j);
    };

    for (const auto& cell : cells) {
        std::vector<Tuple> tuples = enumerate_value_tuples(schema, cell, options.variable_budget);
        size_t base = b.lp.variable_count();
        for (size_t i = 0; i < tuples.size(); ++i) b.lp.add_variable("x");
        b.fill_vars[cell] = {base, tuples};

        for (size_t i = 0; i < cell.size(); ++i) {
            AttributeList flist = face_list(cell, i);
            std::vector<Tuple> ftuples =
                enumerate_value_tuples(schema, flist, options.variable_budget);
            std::map<Tuple, std::vector<size_t>> fibers;
            for (size_t u = 0; u < tuples.size(); ++u)
                fibers[drop_position(tuples[u], i)].push_back(base + u);

            std::vector<Expr> left(ftuples.size()), right(ftuples.size());
            for (size_t ai = 0; ai < ftuples.size(); ++ai)
                for (size_t v : fibers[ftuples[ai]]) left[ai].terms.push_back({v, Rational(1)});

            auto rit = b.repair_vars.find(flist);
            if (rit != b.repair_vars.end()) {
                size_t rbase = rit->second.first;
                for (size_t bi = 0; bi < ftuples.size(); ++bi)
                    right[bi].terms.push_back({rbase + bi, Rational(1)});
            } else {
                DataTable fixed = forced_value(flist);  // degenerate face
                for (size_t bi = 0; bi < ftuples.size(); ++bi)
                    right[bi].constant = fixed.mass_at(ftuples[bi]);
            }
            b.add_coupling(schema, flist, ftuples, left, right, slack);
        }
    }

    // Explicit witness blocks tying chosen closure tables to the repairs.
    for (const auto& [list, choice] : witness_choice) {
        auto rit = b.repair_vars.find(list);
        if (rit == b.repair_vars.end()) continue;  // untouched cell keeps its value
        const auto& [rbase, rtuples] = rit->second;
        std::vector<Expr> left(rtuples.size()), right(rtuples.size());
        for (size_t ai = 0; ai < rtuples.size(); ++ai)
            left[ai].terms.push_back({rbase + ai, Rational(1)});
        for (size_t bi = 0; bi < rtuples.size(); ++bi)
            right[bi].constant = choice.mass_at(rtuples[bi]);
        b.add_coupling(schema, list, rtuples, left, right, slack);
    }

    return b;
}

DataTable extract_table(const AttributeList& list, size_t base, const std::vector<Tuple>& tuples,
                        const std::vector<Rational>& assignment) {
    DataTable out;
    out.list = list;
    for (size_t i = 0; i < tuples.size(); ++i)
        if (assignment[base + i] > 0) out.add_mass(tuples[i], assignment[base + i]);
    return out;
}

// Witness combinations for level-0 sections: each cell independently picks a
// closure table over its own list. Level >= 1 sections need none (their
// pinned faces already witness every entry exactly).
std::vector<std::map<AttributeList, DataTable>> witness_combinations(
    const DataSection& section, const DataComplexGen& complex) {
    if (section.level != 0) return {{}};
    std::set<DataTable> closure = closure_up_to(complex, section.level + 1);
    std::vector<std::map<AttributeList, DataTable>> combos{{}};
    for (const auto& [list, table] : section.cells) {
        std::vector<DataTable> candidates;
        for (const auto& t : closure)
            if (t.list == list && total_mass(t) == total_mass(table)) candidates.push_back(t);
        if (candidates.empty()) return {};  // witness enumeration empty
        std::vector<std::map<AttributeList, DataTable>> next;
        for (const auto& combo : combos)
            for (const auto& cand : candidates) {
                auto extended = combo;
                extended[list] = cand;
                next.push_back(std::move(extended));
            }
        combos = std::move(next);
    }
    return combos;
}

CoboundaryResult solve_coboundary(const DataSection& section, const DataComplexGen& complex,
                                  const std::vector<AttributeList>& cells, const Rational& slack,
                                  bool minimize_slack, const LPOptions& options) {
    CoboundaryResult result;
    auto combos = witness_combinations(section, complex);
    if (combos.empty())
        throw std::invalid_argument("coboundary witness enumeration is empty");

    for (const auto& combo : combos) {
        CoboundaryLP b =
            build_coboundary_lp(section, complex, cells, slack, minimize_slack, combo, options);
        LPResult sol = minimize_slack ? minimize(b.lp, options) : solve_feasibility(b.lp, options);
        if (sol.status == LPStatus::BudgetExceeded) throw BudgetError(sol.message);
        bool ok = (sol.status == LPStatus::Feasible || sol.status == LPStatus::Optimal);
        if (!ok) continue;
        if (minimize_slack && result.minimal_slack && *result.minimal_slack <= sol.objective)
            continue;  // an earlier combination already achieved a smaller slack
        result.coboundary = true;
        result.modified.level = section.level;
        result.modified.cells.clear();
        result.fills.clear();
        // Untouched cells keep their values; degenerate cells stay the
        // diagonals their pinned faces force; free cells come from the LP.
        for (const auto& [list, table] : section.cells) {
            if (is_degenerate_cell(list)) {
                size_t j = 0;
                while (list[j] != list[j + 1]) ++j;
                result.modified.cells[list] = diagonal(marginalize(table, j), j);
            } else {
                result.modified.cells[list] = table;
            }
        }
        for (const auto& [list, entry] : b.repair_vars)
            result.modified.cells[list] =
                extract_table(list, entry.first, entry.second, sol.assignment);
        for (const auto& [list, entry] : b.fill_vars)
            result.fills[list] = extract_table(list, entry.first, entry.second, sol.assignment);
        if (minimize_slack)
            result.minimal_slack = sol.objective;
        else
            break;  // feasibility mode: first witness combination suffices
    }
    return result;
}

}  // namespace

CoboundaryResult is_coboundary(const DataSection& section, const DataComplexGen& complex,
                               const std::vector<AttributeList>& cells, const Rational& slack,
                               const LPOptions& options) {
    if (slack < 0) throw std::invalid_argument("negative slack");
    check_cocycle_inputs(section, complex, cells);
    return solve_coboundary(section, complex, cells, slack, false, options);
}

TrichotomyVerdict classify_trichotomy(const DataSection& section, const DataComplexGen& complex,
                                      const std::vector<AttributeList>& cells,
                                      const Rational& slack, const LPOptions& options) {
    TrichotomyVerdict verdict;
    verdict.cocycle = evaluate_cocycle(section, complex, cells, slack, options);
    if (verdict.cocycle.all_trivial()) {
        verdict.case_number = 1;
        return verdict;
    }
    verdict.repair = is_coboundary(section, complex, cells, slack, options);
    verdict.case_number = verdict.repair->coboundary ? 2 : 3;
    return verdict;
}

PersistenceResult persistence_t(const DataSection& section, const DataComplexGen& complex,
                                const std::vector<AttributeList>& cells,
                                const LPOptions& options) {
    check_cocycle_inputs(section, complex, cells);
    PersistenceResult result;
    Rational best = 0;
    bool finite = true;
    for (const auto& cell : cells) {
        FillResult fill = fill_boundary_min_slack(
            complex.schema, boundary_problem(section, cell, Rational(0)), options);
        if (fill.status == FillStatus::BudgetExceeded)
            throw BudgetError("persistence cell " + list_to_string(cell) + ": " + fill.message);
        if (fill.status != FillStatus::Filled) {
            finite = false;  // no coupling exists at any slack (mass inconsistency)
            break;
        }
        if (*fill.minimal_slack > best) best = *fill.minimal_slack;
        result.t_witnesses[cell] = fill.table;
    }
    if (finite)
        result.t_n = best;
    else
        result.t_witnesses.clear();
    return result;
}

PersistenceResult persistence_tprime(const DataSection& section, const DataComplexGen& complex,
                                     const std::vector<AttributeList>& cells,
                                     const LPOptions& options) {
    check_cocycle_inputs(section, complex, cells);
    PersistenceResult result;
    CoboundaryResult repair = solve_coboundary(section, complex, cells, Rational(0), true, options);
    if (repair.coboundary) {
        result.t_prime_n = repair.minimal_slack;
        result.t_prime_witness = std::move(repair);
    }
    return result;
}

PersistenceResult persistence(const DataSection& section, const DataComplexGen& complex,
                              const std::vector<AttributeList>& cells, const LPOptions& options) {
    PersistenceResult result = persistence_t(section, complex, cells, options);
    PersistenceResult prime = persistence_tprime(section, complex, cells, options);
    result.t_prime_n = prime.t_prime_n;
    result.t_prime_witness = std::move(prime.t_prime_witness);
    return result;
}

std::vector<AttributeList> default_cells(const DataSection& section, const Schema& schema) {
    std::vector<AttributeList> out;
    size_t len = static_cast<size_t>(section.level) + 2;
    std::vector<std::string> names;
    for (const auto& a : schema.attributes) names.push_back(a.name);
    std::sort(names.begin(), names.end());

    // All injective words of length `len` whose faces all lie in the domain.
    std::vector<size_t> pick;
    std::vector<bool> used(names.size(), false);
    auto rec = [&](auto&& self) -> void {
        if (pick.size() == len) {
            AttributeList cell;
            for (size_t i : pick) cell.push_back(names[i]);
            for (size_t i = 0; i < cell.size(); ++i)
                if (!section.cells.count(face_list(cell, i))) return;
            out.push_back(std::move(cell));
            return;
        }
        for (size_t i = 0; i < names.size(); ++i) {
            if (used[i]) continue;
            used[i] = true;
            pick.push_back(i);
            self(self);
            pick.pop_back();
            used[i] = false;
        }
    };
    if (len <= names.size()) rec(rec);
    return out;
}

DataSection section_from_complex(const DataComplexGen& complex, int level) {
    DataSection section;
    section.level = level;
    std::map<AttributeList, std::vector<DataTable>> by_list;
    for (const auto& t : closure_up_to(complex, level + 1))
        if (static_cast<int>(t.list.size()) == level + 1) by_list[t.list].push_back(t);
    for (const auto& [list, tables] : by_list) {
        if (tables.size() > 1)
            throw std::invalid_argument("complex is not well-aligned at level " +
                                        std::to_string(level) + ": " + list_to_string(list) +
                                        " carries " + std::to_string(tables.size()) + " tables");
        section.cells[list] = tables.front();
    }
    auto problems = validate_section(section);
    if (!problems.empty())
        throw std::invalid_argument("derived section is not natural: " + problems.front());
    return section;
}

}  // namespace dcx
