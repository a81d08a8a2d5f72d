#pragma once

#include <string>
#include <vector>

#include "dcx/rational.hpp"

namespace dcx {

enum class Sense { LessEq, GreaterEq, Equal };

struct LinearTerm {
    size_t var;
    Rational coeff;
};

struct LinearConstraint {
    std::vector<LinearTerm> terms;
    Sense sense = Sense::Equal;
    Rational rhs = 0;
    std::string name;
};

// An exact-rational linear program. Variables are nonnegative unless declared
// free. The objective, when present, is minimized.
class LinearProgram {
  public:
    size_t add_variable(std::string name, bool nonnegative = true);
    void add_constraint(std::vector<LinearTerm> terms, Sense sense, Rational rhs,
                        std::string name = "");
    void set_objective(std::vector<LinearTerm> terms);
    bool has_objective() const { return has_objective_; }

    size_t variable_count() const { return names_.size(); }
    size_t constraint_count() const { return constraints_.size(); }
    const std::string& variable_name(size_t v) const { return names_[v]; }
    bool variable_nonnegative(size_t v) const { return nonnegative_[v]; }
    const std::vector<LinearConstraint>& constraints() const { return constraints_; }
    const std::vector<LinearTerm>& objective() const { return objective_; }

    // Plain-text dump, one constraint per line, rationals as p/q.
    std::string dump() const;

  private:
    std::vector<std::string> names_;
    std::vector<bool> nonnegative_;
    std::vector<LinearConstraint> constraints_;
    std::vector<LinearTerm> objective_;
    bool has_objective_ = false;
};

enum class LPStatus { Feasible, Infeasible, Optimal, Unbounded, BudgetExceeded };

const char* to_string(LPStatus status);

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    std::vector<Rational> assignment;   // one value per declared variable
    Rational objective = 0;             // meaningful when status == Optimal
    // Farkas witness, one multiplier per constraint: >= 0 on GreaterEq rows,
    // <= 0 on LessEq rows, free on equalities; the combination has
    // nonpositive coefficients on nonnegative variables, zero on free ones,
    // and strictly positive combined right-hand side.
    std::vector<Rational> farkas;
    std::string message;
};

struct LPOptions {
    size_t variable_budget = 200000;
};

// Phase-1 only; result status is Feasible, Infeasible, or BudgetExceeded.
// Any returned assignment has been re-checked against every constraint.
LPResult solve_feasibility(const LinearProgram& program, const LPOptions& options = {});

// Two-phase simplex with Bland's rule; exact optimum or Infeasible/Unbounded.
LPResult minimize(const LinearProgram& program, const LPOptions& options = {});

// Exact re-verification helpers (also used by tests).
bool satisfies_all(const LinearProgram& program, const std::vector<Rational>& assignment);
bool verifies_farkas(const LinearProgram& program, const std::vector<Rational>& farkas);

}  // namespace dcx
