#pragma once

#include <string>
#include <vector>

#include "covrad/graph.hpp"

namespace covrad {

struct QuantizationResult {
    Word input;
    Word nearest;            // labels along path, a nearest word of B_n(X)
    int distance = 0;        // Hamming distance between input and nearest
    std::vector<int> path;   // edge ids spelling nearest
};

// Nearest word of B_n(X) to y, n = y.size(), by dynamic programming over the
// presentation: cost c_0(v) = 0 everywhere, then
//   c_{i+1}(v') = min over edges e: v -> v' of c_i(v) + [label(e) != y_i],
// and the distance is min_v c_n(v).  The witness follows backpointers; ties
// always resolve to the lowest edge id (and lowest final vertex id), so the
// result is deterministic.
QuantizationResult quantize(const ConstrainedSystem& x, const Word& y);

// Distance only; skips witness bookkeeping.
int quantize_distance(const ConstrainedSystem& x, const Word& y);

// All words of B_n(X), sorted lexicographically.  Throws CapExceededError
// when the language at any length up to n outgrows the cap.
std::vector<Word> enumerate_language(const ConstrainedSystem& x, int n,
                                     long long cap = 1LL << 22);

struct CoveringRadiusReport {
    int n = 0;
    int radius = 0;
    double normalized = 0.0;          // radius / n
    std::vector<Word> deep_holes;     // <= 16 lexicographically smallest
    std::string method = "exact";
};

// Exact covering radius of B_n(X) inside B_n(Y): the largest quantization
// distance over all of B_n(Y).  Alphabets must match.  The sweep over B_n(Y)
// may run on several threads; the report does not depend on the schedule.
CoveringRadiusReport covering_radius_exact(const ConstrainedSystem& x,
                                           const ConstrainedSystem& y, int n,
                                           long long cap = 1LL << 22, int threads = 0);

struct CurvePoint {
    int n = 0;
    int radius = 0;
    double normalized = 0.0;
};

// covering_radius_exact for every n in 1..n_max.
std::vector<CurvePoint> covering_radius_upper_curve(const ConstrainedSystem& x,
                                                    const ConstrainedSystem& y, int n_max,
                                                    long long cap = 1LL << 22,
                                                    int threads = 0);

// Sphere-covering lower bound H_q^{-1}(h(Y) - h(X)) on the normalized
// covering radius of X relative to Y.  Requires matching alphabets and
// h(X) <= h(Y); presentations are determinized internally as needed.
double sphere_covering_lower_bound(const ConstrainedSystem& x, const ConstrainedSystem& y);

}  // namespace covrad
