#include "covrad/lp.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "covrad/errors.hpp"

namespace covrad {

namespace {

constexpr double kPivotFloor = 1e-11;  // smallest pivot worth dividing by
constexpr double kPositive = 1e-13;    // treated as zero below this
constexpr double kCostTol = 1e-9;      // reduced-cost optimality threshold
constexpr double kFeasTol = 1e-8;      // constraint satisfaction at the end

struct Tableau {
    int rows = 0;
    int cols = 0;  // variables + 1 (rhs lives in the last column)
    std::vector<double> a;
    std::vector<int> basis;

    double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    double at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    int rhs_col() const { return cols - 1; }

    void pivot(int pr, int pc, std::vector<double>& reduced, double& objective) {
        double inv = 1.0 / at(pr, pc);
        for (int c = 0; c < cols; ++c) at(pr, c) *= inv;
        at(pr, pc) = 1.0;
        for (int r = 0; r < rows; ++r) {
            if (r == pr) continue;
            double factor = at(r, pc);
            if (factor == 0.0) continue;
            for (int c = 0; c < cols; ++c) at(r, c) -= factor * at(pr, c);
            at(r, pc) = 0.0;
        }
        double factor = reduced[static_cast<size_t>(pc)];
        if (factor != 0.0) {
            for (int c = 0; c < cols - 1; ++c) {
                reduced[static_cast<size_t>(c)] -= factor * at(pr, c);
            }
            // The entering variable comes in at the scaled right-hand side,
            // moving the objective by its reduced cost times that value.
            objective += factor * at(pr, rhs_col());
            reduced[static_cast<size_t>(pc)] = 0.0;
        }
        basis[static_cast<size_t>(pr)] = pc;
    }
};

enum class IterateOutcome { Optimal, Unbounded };

// Bland's rule: enter the lowest-index variable with a negative reduced cost,
// leave on the minimum ratio breaking ties toward the lowest basis variable.
IterateOutcome iterate(Tableau& t, std::vector<double>& reduced, double& objective,
                       int allowed_cols) {
    const int iteration_cap = 200000;
    for (int it = 0; it < iteration_cap; ++it) {
        int entering = -1;
        for (int c = 0; c < allowed_cols; ++c) {
            if (reduced[static_cast<size_t>(c)] < -kCostTol) {
                entering = c;
                break;
            }
        }
        if (entering < 0) return IterateOutcome::Optimal;

        int leaving = -1;
        bool saw_positive = false;
        double best_ratio = 0.0;
        for (int r = 0; r < t.rows; ++r) {
            double entry = t.at(r, entering);
            if (entry <= kPositive) continue;
            saw_positive = true;
            if (entry <= kPivotFloor) continue;
            double ratio = t.at(r, t.rhs_col()) / entry;
            if (leaving < 0 || ratio < best_ratio - 1e-12 ||
                (std::abs(ratio - best_ratio) <= 1e-12 &&
                 t.basis[static_cast<size_t>(r)] < t.basis[static_cast<size_t>(leaving)])) {
                leaving = r;
                best_ratio = ratio;
            }
        }
        if (leaving < 0) {
            if (saw_positive) {
                throw NumericalInstabilityError(
                    "every usable pivot in column " + std::to_string(entering) +
                    " is below " + std::to_string(kPivotFloor));
            }
            return IterateOutcome::Unbounded;
        }
        t.pivot(leaving, entering, reduced, objective);
    }
    throw ConvergenceError("simplex exceeded its iteration cap");
}

}  // namespace

LPSolution solve(const LinearProgram& lp) {
    int n = lp.variable_count();
    int m = lp.row_count();
    if (n < 1) throw InputError("the program needs at least one variable");
    if (static_cast<int>(lp.rhs.size()) != m) {
        throw InputError("need exactly one right-hand side per row");
    }
    for (const auto& row : lp.rows) {
        if (static_cast<int>(row.size()) != n) {
            throw InputError("every row needs one coefficient per variable");
        }
    }
    auto finite = [](double v) { return std::isfinite(v); };
    for (double v : lp.objective) {
        if (!finite(v)) throw InputError("objective coefficients must be finite");
    }
    for (const auto& row : lp.rows) {
        for (double v : row) {
            if (!finite(v)) throw InputError("row coefficients must be finite");
        }
    }
    for (double v : lp.rhs) {
        if (!finite(v)) throw InputError("right-hand sides must be finite");
    }

    // Tableau over original variables plus one artificial per row; flip rows
    // so every right-hand side starts nonnegative.
    Tableau t;
    t.rows = m;
    t.cols = n + m + 1;
    t.a.assign(static_cast<size_t>(t.rows) * t.cols, 0.0);
    t.basis.resize(static_cast<size_t>(m));
    for (int r = 0; r < m; ++r) {
        double sign = lp.rhs[static_cast<size_t>(r)] < 0.0 ? -1.0 : 1.0;
        for (int c = 0; c < n; ++c) {
            t.at(r, c) = sign * lp.rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
        }
        t.at(r, n + r) = 1.0;
        t.at(r, t.rhs_col()) = sign * lp.rhs[static_cast<size_t>(r)];
        t.basis[static_cast<size_t>(r)] = n + r;
    }

    // Phase 1: minimize the artificial mass.  Reduced costs for basis
    // {artificials} are -(column sums over the original part).
    std::vector<double> phase1(static_cast<size_t>(t.cols) - 1, 0.0);
    double phase1_value = 0.0;
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) phase1[static_cast<size_t>(c)] -= t.at(r, c);
        phase1_value += t.at(r, t.rhs_col());
    }
    if (iterate(t, phase1, phase1_value, n + m) == IterateOutcome::Unbounded) {
        throw NumericalInstabilityError("phase 1 claimed an unbounded direction");
    }
    if (phase1_value > kFeasTol) {
        return LPSolution{LPStatus::Infeasible, 0.0, {}};
    }

    // Push any artificial still in the basis out of it, or drop its row as a
    // redundant constraint.
    for (int r = t.rows - 1; r >= 0; --r) {
        if (t.basis[static_cast<size_t>(r)] < n) continue;
        int pc = -1;
        for (int c = 0; c < n; ++c) {
            if (std::abs(t.at(r, c)) > kPivotFloor) {
                pc = c;
                break;
            }
        }
        if (pc >= 0) {
            double ignored = 0.0;
            std::vector<double> no_costs(static_cast<size_t>(t.cols) - 1, 0.0);
            t.pivot(r, pc, no_costs, ignored);
            continue;
        }
        // All-zero over the original variables: remove the row.
        for (int c = 0; c < t.cols; ++c) t.at(r, c) = t.at(t.rows - 1, c);
        t.basis[static_cast<size_t>(r)] = t.basis[static_cast<size_t>(t.rows - 1)];
        t.rows -= 1;
        t.a.resize(static_cast<size_t>(t.rows) * t.cols);
        t.basis.resize(static_cast<size_t>(t.rows));
    }

    // Phase 2: the real objective, restricted to the original columns.
    std::vector<double> phase2(static_cast<size_t>(t.cols) - 1, 0.0);
    for (int c = 0; c < n; ++c) phase2[static_cast<size_t>(c)] = lp.objective[static_cast<size_t>(c)];
    double phase2_value = 0.0;
    for (int r = 0; r < t.rows; ++r) {
        int b = t.basis[static_cast<size_t>(r)];
        double cost = phase2[static_cast<size_t>(b)];
        if (cost == 0.0) continue;
        for (int c = 0; c < t.cols - 1; ++c) {
            phase2[static_cast<size_t>(c)] -= cost * t.at(r, c);
        }
        phase2_value += cost * t.at(r, t.rhs_col());
        phase2[static_cast<size_t>(b)] = 0.0;
    }
    // Subtlety: subtracting basis costs column by column would corrupt later
    // rows' coefficients; the loop above relies on basis columns being unit
    // vectors, which pivot() maintains, so each subtraction is exact.
    if (iterate(t, phase2, phase2_value, n) == IterateOutcome::Unbounded) {
        return LPSolution{LPStatus::Unbounded, 0.0, {}};
    }

    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int r = 0; r < t.rows; ++r) {
        if (t.basis[static_cast<size_t>(r)] < n) {
            x[static_cast<size_t>(t.basis[static_cast<size_t>(r)])] = t.at(r, t.rhs_col());
        }
    }
    double value = 0.0;
    for (int c = 0; c < n; ++c) value += lp.objective[static_cast<size_t>(c)] * x[static_cast<size_t>(c)];

    for (int r = 0; r < m; ++r) {
        double lhs = 0.0;
        for (int c = 0; c < n; ++c) {
            lhs += lp.rows[static_cast<size_t>(r)][static_cast<size_t>(c)] * x[static_cast<size_t>(c)];
        }
        if (std::abs(lhs - lp.rhs[static_cast<size_t>(r)]) > kFeasTol) {
            throw NumericalInstabilityError("optimal basis fails row " + std::to_string(r) +
                                            " on recheck");
        }
    }
    return LPSolution{LPStatus::Optimal, value, std::move(x)};
}

}  // namespace covrad
