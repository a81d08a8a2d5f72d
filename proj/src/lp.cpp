#include "dcx/lp.hpp"

#include <sstream>
#include <stdexcept>

namespace dcx {

size_t LinearProgram::add_variable(std::string name, bool nonnegative) {
    names_.push_back(std::move(name));
    nonnegative_.push_back(nonnegative);
    return names_.size() - 1;
}

void LinearProgram::add_constraint(std::vector<LinearTerm> terms, Sense sense, Rational rhs,
                                   std::string name) {
    for (const auto& t : terms)
        if (t.var >= names_.size())
            throw std::invalid_argument("constraint references undeclared variable");
    constraints_.push_back({std::move(terms), sense, std::move(rhs), std::move(name)});
}

void LinearProgram::set_objective(std::vector<LinearTerm> terms) {
    for (const auto& t : terms)
        if (t.var >= names_.size())
            throw std::invalid_argument("objective references undeclared variable");
    objective_ = std::move(terms);
    has_objective_ = true;
}

std::string LinearProgram::dump() const {
    std::ostringstream os;
    if (has_objective_) {
        os << "min:";
        for (const auto& t : objective_) os << " " << t.coeff << "*" << names_[t.var];
        os << "\n";
    }
    for (const auto& c : constraints_) {
        if (!c.name.empty()) os << c.name << ": ";
        for (size_t i = 0; i < c.terms.size(); ++i) {
            if (i) os << " + ";
            os << c.terms[i].coeff << "*" << names_[c.terms[i].var];
        }
        os << (c.sense == Sense::LessEq ? " <= " : c.sense == Sense::GreaterEq ? " >= " : " = ");
        os << c.rhs << "\n";
    }
    for (size_t v = 0; v < names_.size(); ++v)
        if (!nonnegative_[v]) os << names_[v] << " free\n";
    return os.str();
}

const char* to_string(LPStatus status) {
    switch (status) {
        case LPStatus::Feasible: return "feasible";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Unbounded: return "unbounded";
        case LPStatus::BudgetExceeded: return "budget_exceeded";
    }
    return "?";
}

namespace {

// Dense standard form: A z = b with z >= 0 and b >= 0.
// Columns 0..ncols-1 are split variables, then one slack per inequality row.
struct StandardForm {
    // Mapping: variable v contributes +column pos[v], and, when free,
    // -column neg[v].
    std::vector<size_t> pos, neg;
    std::vector<bool> has_neg;
    size_t ncols = 0;
    std::vector<std::vector<Rational>> rows;  // m x ncols
    std::vector<Rational> rhs;                // >= 0
    std::vector<Rational> row_sign;           // +1 / -1 applied to original row
};

StandardForm build_standard_form(const LinearProgram& p) {
    StandardForm sf;
    size_t n = p.variable_count();
    sf.pos.resize(n);
    sf.neg.resize(n, 0);
    sf.has_neg.resize(n, false);
    size_t col = 0;
    for (size_t v = 0; v < n; ++v) {
        sf.pos[v] = col++;
        if (!p.variable_nonnegative(v)) {
            sf.has_neg[v] = true;
            sf.neg[v] = col++;
        }
    }
    size_t slack_base = col;
    size_t nslack = 0;
    for (const auto& c : p.constraints())
        if (c.sense != Sense::Equal) ++nslack;
    sf.ncols = slack_base + nslack;

    size_t m = p.constraint_count();
    sf.rows.assign(m, std::vector<Rational>(sf.ncols, Rational(0)));
    sf.rhs.assign(m, Rational(0));
    sf.row_sign.assign(m, Rational(1));

    size_t next_slack = slack_base;
    for (size_t i = 0; i < m; ++i) {
        const auto& c = p.constraints()[i];
        auto& row = sf.rows[i];
        for (const auto& t : c.terms) {
            row[sf.pos[t.var]] += t.coeff;
            if (sf.has_neg[t.var]) row[sf.neg[t.var]] -= t.coeff;
        }
        if (c.sense == Sense::LessEq)
            row[next_slack++] = 1;
        else if (c.sense == Sense::GreaterEq)
            row[next_slack++] = -1;
        sf.rhs[i] = c.rhs;
        if (sf.rhs[i] < 0) {
            sf.row_sign[i] = -1;
            sf.rhs[i] = -sf.rhs[i];
            for (auto& x : row) x = -x;
        }
    }
    return sf;
}

// Simplex tableau over exact rationals with Bland's rule.
// Column layout: structural columns 0..ncols-1, artificials ncols..ncols+m-1.
struct Tableau {
    size_t m, width;  // width excludes the rhs column
    std::vector<std::vector<Rational>> a;  // m rows, width+1 entries (last = rhs)
    std::vector<size_t> basis;             // basic column per row
    std::vector<Rational> cost;            // width entries
    std::vector<Rational> reduced;         // width entries
    Rational objective_value = 0;

    void compute_reduced() {
        // reduced = cost - sum over rows of cost[basis[r]] * row r
        reduced = cost;
        objective_value = 0;
        for (size_t r = 0; r < m; ++r) {
            const Rational& cb = cost[basis[r]];
            if (cb == 0) continue;
            for (size_t j = 0; j < width; ++j)
                if (a[r][j] != 0) reduced[j] -= cb * a[r][j];
            objective_value += cb * a[r][width];
        }
    }

    void pivot(size_t row, size_t col) {
        Rational inv = 1 / a[row][col];
        for (auto& x : a[row]) x *= inv;
        for (size_t r = 0; r < m; ++r) {
            if (r == row) continue;
            Rational f = a[r][col];
            if (f == 0) continue;
            for (size_t j = 0; j <= width; ++j)
                if (a[row][j] != 0) a[r][j] -= f * a[row][j];
        }
        Rational f = reduced[col];
        if (f != 0) {
            for (size_t j = 0; j < width; ++j)
                if (a[row][j] != 0) reduced[j] -= f * a[row][j];
            objective_value += f * a[row][width];
        }
        basis[row] = col;
    }

    // Bland: entering = lowest-index column with negative reduced cost;
    // leaving = lowest basis index among min-ratio rows.
    // Returns false when optimal; throws on unboundedness flag via out param.
    bool step(bool& unbounded, size_t usable_width) {
        unbounded = false;
        size_t enter = width;
        for (size_t j = 0; j < usable_width; ++j)
            if (reduced[j] < 0) {
                enter = j;
                break;
            }
        if (enter == width) return false;
        size_t leave = m;
        Rational best_ratio = 0;
        for (size_t r = 0; r < m; ++r) {
            if (a[r][enter] <= 0) continue;
            Rational ratio = a[r][width] / a[r][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == m) {
            unbounded = true;
            return false;
        }
        pivot(leave, enter);
        return true;
    }
};

struct SolveOutcome {
    LPStatus status = LPStatus::Infeasible;
    std::vector<Rational> z;        // structural assignment (standard form)
    std::vector<Rational> y;        // phase-1 duals when infeasible
    Rational objective = 0;
};

SolveOutcome run_simplex(const StandardForm& sf, const std::vector<Rational>& structural_cost,
                         bool optimize) {
    size_t m = sf.rows.size();
    Tableau t;
    t.m = m;
    t.width = sf.ncols + m;
    t.a.assign(m, std::vector<Rational>(t.width + 1, Rational(0)));
    t.basis.resize(m);
    for (size_t r = 0; r < m; ++r) {
        for (size_t j = 0; j < sf.ncols; ++j) t.a[r][j] = sf.rows[r][j];
        t.a[r][sf.ncols + r] = 1;  // artificial
        t.a[r][t.width] = sf.rhs[r];
        t.basis[r] = sf.ncols + r;
    }

    // Phase 1: minimize the sum of artificials.
    t.cost.assign(t.width, Rational(0));
    for (size_t r = 0; r < m; ++r) t.cost[sf.ncols + r] = 1;
    t.compute_reduced();
    bool unbounded = false;
    while (t.step(unbounded, t.width)) {}

    SolveOutcome out;
    if (t.objective_value != 0) {
        out.status = LPStatus::Infeasible;
        // y_i = 1 - reduced cost of artificial i.
        out.y.resize(m);
        for (size_t r = 0; r < m; ++r) out.y[r] = 1 - t.reduced[sf.ncols + r];
        return out;
    }

    // Drive leftover artificials out of the basis; drop redundant rows by
    // zeroing them (their basic artificial stays at value 0).
    for (size_t r = 0; r < m; ++r) {
        if (t.basis[r] < sf.ncols) continue;
        size_t col = t.width;
        for (size_t j = 0; j < sf.ncols; ++j)
            if (t.a[r][j] != 0) {
                col = j;
                break;
            }
        if (col != t.width) t.pivot(r, col);
    }

    if (optimize) {
        t.cost.assign(t.width, Rational(0));
        for (size_t j = 0; j < sf.ncols; ++j) t.cost[j] = structural_cost[j];
        // Forbid artificials from re-entering: keep their cost at zero and
        // restrict the entering search to structural columns.
        t.compute_reduced();
        while (t.step(unbounded, sf.ncols)) {}
        if (unbounded) {
            out.status = LPStatus::Unbounded;
            return out;
        }
        out.status = LPStatus::Optimal;
        out.objective = t.objective_value;
    } else {
        out.status = LPStatus::Feasible;
    }
    out.z.assign(sf.ncols, Rational(0));
    for (size_t r = 0; r < m; ++r)
        if (t.basis[r] < sf.ncols) out.z[t.basis[r]] = t.a[r][t.width];
    return out;
}

std::vector<Rational> recover_assignment(const LinearProgram& p, const StandardForm& sf,
                                         const std::vector<Rational>& z) {
    std::vector<Rational> x(p.variable_count());
    for (size_t v = 0; v < p.variable_count(); ++v) {
        x[v] = z[sf.pos[v]];
        if (sf.has_neg[v]) x[v] -= z[sf.neg[v]];
    }
    return x;
}

LPResult finish(const LinearProgram& p, const LPOptions& options, bool optimize) {
    LPResult result;
    StandardForm sf = build_standard_form(p);
    if (sf.ncols + p.constraint_count() > options.variable_budget) {
        result.status = LPStatus::BudgetExceeded;
        result.message = "standard form needs " +
                         std::to_string(sf.ncols + p.constraint_count()) +
                         " columns, budget is " + std::to_string(options.variable_budget);
        return result;
    }

    std::vector<Rational> cost(sf.ncols, Rational(0));
    if (optimize)
        for (const auto& term : p.objective()) {
            cost[sf.pos[term.var]] += term.coeff;
            if (sf.has_neg[term.var]) cost[sf.neg[term.var]] -= term.coeff;
        }

    SolveOutcome outcome = run_simplex(sf, cost, optimize);
    result.status = outcome.status;
    if (outcome.status == LPStatus::Infeasible) {
        result.farkas.resize(p.constraint_count());
        for (size_t i = 0; i < p.constraint_count(); ++i)
            result.farkas[i] = outcome.y[i] * sf.row_sign[i];
        if (!verifies_farkas(p, result.farkas)) {
            result.farkas.clear();
            result.message = "infeasible (certificate reconstruction failed)";
            throw std::logic_error("simplex produced an unverifiable infeasibility certificate");
        }
        return result;
    }
    if (outcome.status == LPStatus::Unbounded) return result;

    result.assignment = recover_assignment(p, sf, outcome.z);
    if (!satisfies_all(p, result.assignment))
        throw std::logic_error("simplex produced an assignment violating a constraint");
    if (optimize) {
        Rational check = 0;
        for (const auto& term : p.objective()) check += term.coeff * result.assignment[term.var];
        result.objective = check;
        if (check != outcome.objective)
            throw std::logic_error("simplex objective mismatch on re-evaluation");
    }
    return result;
}

}  // namespace

LPResult solve_feasibility(const LinearProgram& program, const LPOptions& options) {
    return finish(program, options, false);
}

LPResult minimize(const LinearProgram& program, const LPOptions& options) {
    if (!program.has_objective())
        throw std::invalid_argument("minimize called on a program without an objective");
    return finish(program, options, true);
}

bool satisfies_all(const LinearProgram& program, const std::vector<Rational>& assignment) {
    if (assignment.size() != program.variable_count()) return false;
    for (size_t v = 0; v < program.variable_count(); ++v)
        if (program.variable_nonnegative(v) && assignment[v] < 0) return false;
    for (const auto& c : program.constraints()) {
        Rational lhs = 0;
        for (const auto& t : c.terms) lhs += t.coeff * assignment[t.var];
        if (c.sense == Sense::Equal && lhs != c.rhs) return false;
        if (c.sense == Sense::LessEq && lhs > c.rhs) return false;
        if (c.sense == Sense::GreaterEq && lhs < c.rhs) return false;
    }
    return true;
}

bool verifies_farkas(const LinearProgram& program, const std::vector<Rational>& farkas) {
    if (farkas.size() != program.constraint_count()) return false;
    std::vector<Rational> combo(program.variable_count(), Rational(0));
    Rational rhs = 0;
    for (size_t i = 0; i < program.constraint_count(); ++i) {
        const auto& c = program.constraints()[i];
        if (c.sense == Sense::LessEq && farkas[i] > 0) return false;
        if (c.sense == Sense::GreaterEq && farkas[i] < 0) return false;
        for (const auto& t : c.terms) combo[t.var] += farkas[i] * t.coeff;
        rhs += farkas[i] * c.rhs;
    }
    for (size_t v = 0; v < program.variable_count(); ++v) {
        if (program.variable_nonnegative(v)) {
            if (combo[v] > 0) return false;
        } else {
            if (combo[v] != 0) return false;
        }
    }
    return rhs > 0;
}

}  // namespace dcx
