#pragma once

#include <vector>

#include "covrad/graph.hpp"
#include "covrad/lp.hpp"
#include "covrad/markov.hpp"

namespace covrad {

// LP relaxation bounding the measured covering radius of X relative to
// (Y, p_y): over stationary measures P on the product graph that agree with
// p_y on the Y side, minimize the probability of reading different X and Y
// labels.  Constraint blocks, in row order:
//   - normalization: total mass 1;
//   - Y-marginal: for each Y edge, its fiber's mass equals p_y;
//   - stationarity: in-mass equals out-mass at every product vertex;
//   - conditional marginal: for each (X vertex, Y edge) pair, the chance of
//     taking that Y edge from anywhere above the X vertex equals p_y's
//     conditional for the edge.  One row per distinct pair; pairs whose Y
//     edge carries zero probability are vacuous and skipped.
struct MarkovBoundProblem {
    ProductGraph product;
    MarkovChain py;
    LinearProgram lp;
    std::vector<char> is_mismatch;  // per product edge
};

// Builds the LP.  x and y must share an alphabet; p_y must be a chain on
// exactly y's presentation (same vertices and edge list).
MarkovBoundProblem formulate(const ConstrainedSystem& x, const ConstrainedSystem& y,
                             const MarkovChain& py);

struct MarkovBoundResult {
    double value = 0.0;
    MarkovChain chain;           // the optimizing measure, revalidated
    int constraints_checked = 0; // LP rows replayed against the optimizer
};

// Solves the LP.  An infeasible program throws InfeasibleError: no
// Markov-extension bound is available from these presentations.  The
// optimizer is repackaged as a MarkovChain on the product graph and every
// constraint row is replayed against it to 1e-8 before returning.
MarkovBoundResult solve_bound(const MarkovBoundProblem& problem);

struct DinftySandwich {
    int d = 0;
    double lower = 0.0;     // 1/2 - 1/(d+1)
    double upper = 0.0;     // d / (2(d+2))
    double lp_value = 0.0;
};

// Bound for the d,infinity runlength system against the uniform binary full
// shift, checked against its analytic sandwich.  A violation of
// lower - 1e-9 <= lp_value <= upper + 1e-9 throws; it would mean the
// formulation is wrong.
DinftySandwich dinfty_sandwich(int d);

}  // namespace covrad
