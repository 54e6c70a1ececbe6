#pragma once

#include <vector>

namespace covrad {

// minimize objective . x  subject to  rows . x = rhs  and  x >= 0.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;

    int variable_count() const { return static_cast<int>(objective.size()); }
    int row_count() const { return static_cast<int>(rows.size()); }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    double value = 0.0;                 // meaningful when status == Optimal
    std::vector<double> assignment;     // empty unless status == Optimal
};

// Two-phase primal simplex on a dense tableau.  Entering and leaving
// variables follow Bland's rule (lowest index), so the pivot sequence, and
// with it the reported optimum, is deterministic.  Redundant equality rows
// are dropped after phase 1.  When every candidate pivot in a required column
// is positive but smaller than 1e-11 the solve aborts with
// NumericalInstabilityError rather than divide by it.  Optimal solutions are
// re-checked against the constraints to 1e-8 before being returned.
LPSolution solve(const LinearProgram& lp);

}  // namespace covrad
