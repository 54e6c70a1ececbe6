#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "covrad/graph.hpp"
#include "covrad/markov.hpp"

namespace covrad {

struct EpsRadiusEstimate {
    int n = 0;
    int samples = 0;
    double eps = 0.0;
    int quantile_radius = 0;       // order statistic ceil((1-eps) * samples), 1-based
    double normalized = 0.0;       // quantile_radius / n
    double mean_normalized = 0.0;  // average distance / n
    double std_error = 0.0;        // standard error of mean_normalized
    std::uint64_t seed = 0;
};

// Monte Carlo estimate of the eps-covering radius of B_n(X) under mu: sample
// `samples` words of length n from the chain, quantize each, and report the
// smallest radius containing at least a 1-eps fraction of the sample (the
// ceil((1-eps) * samples)-th smallest distance).  Per-sample seeds derive
// from the base seed by index, so results do not depend on the thread count.
// Needs samples >= 2 and eps in [0, 1).
EpsRadiusEstimate estimate_eps_radius(const ConstrainedSystem& x, const MarkovChain& mu,
                                      int n, int samples, double eps, std::uint64_t seed,
                                      int threads = 0);

// Exact essential covering radius of the 0,k runlength system relative to
// the uniform binary measure: 1 / (2 (2^(k+1) - 1)).
double analytic_essential_0k(int k);

// Sliding-block map: position i of the image reads the input window
// [i - look_back, i + look_ahead].  The callable must be total on windows
// over the input alphabet.
struct SlidingBlockRule {
    int look_back = 0;
    int look_ahead = 0;
    int input_alphabet = 2;
    int output_alphabet = 2;
    std::function<Symbol(std::span<const Symbol>)> map;
};

struct SlidingBlockImage {
    Word image;                // one symbol per interior position
    long long mismatches = 0;  // positions where the image differs from the input
};

// Applies the rule across all interior positions of y (those with a full
// window).  y must be longer than look_back + look_ahead.
SlidingBlockImage apply_sliding_block(const SlidingBlockRule& rule, const Word& y);

// The finite-window quantizer for the 0,k runlength constraint: look-back
// N(k+1) - 1, no look-ahead.  Writes 1 whenever the zero run ending just
// before the current position has length k modulo k+1 (so a forbidden run
// would come due), otherwise copies the input symbol.  Images never contain
// k+1 consecutive zeros away from the left boundary.
SlidingBlockRule rll0k_rule(int k, int N);

// Exact mismatch probability of rll0k_rule(k, N) on uniform binary input:
// 2^(-N(k+1)) + (1/2) * sum_{i=1}^{N-1} 2^(-i(k+1)).  Decreases to
// analytic_essential_0k(k) as N grows.
double rll0k_rule_mismatch_rate(int k, int N);

struct MismatchEstimate {
    double rate = 0.0;
    double std_error = 0.0;
};

// Empirical mismatch rate of a rule on words drawn from mu: the mean of the
// per-word interior mismatch fractions over `samples` independent words, with
// its standard error across words.  Needs samples >= 2 and n large enough
// for at least one interior position.
MismatchEstimate estimate_sbc_mismatch(const SlidingBlockRule& rule, const MarkovChain& mu,
                                       int n, int samples, std::uint64_t seed);

}  // namespace covrad
