#pragma once

namespace covrad {

// q-ary entropy H_q(x) = x log_q(q-1) - x log_q(x) - (1-x) log_q(1-x),
// extended by continuity to H_q(0) = 0 and H_q(1) = log_q(q-1).
// Needs q >= 2 and x in [0, 1].
double entropy_hq(int q, double x);

// Inverse of H_q on [0, 1 - 1/q], where the function increases from 0 to 1.
// Bisection to absolute tolerance 1e-12.  Needs y in [0, 1].
double entropy_hq_inverse(int q, double y);

}  // namespace covrad
