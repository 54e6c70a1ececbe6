#include "covrad/essential.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "covrad/parallel.hpp"
#include "covrad/quantizer.hpp"
#include "covrad/rng.hpp"

namespace covrad {

EpsRadiusEstimate estimate_eps_radius(const ConstrainedSystem& x, const MarkovChain& mu,
                                      int n, int samples, double eps, std::uint64_t seed,
                                      int threads) {
    if (n < 1) throw InputError("estimate needs n >= 1");
    if (samples < 2) throw InputError("estimate needs at least two samples");
    if (!(eps >= 0.0 && eps < 1.0)) throw InputError("eps must lie in [0, 1)");
    if (mu.graph().alphabet_size() != x.alphabet_size()) {
        throw InputError("the measure and the system must share an alphabet");
    }

    std::vector<int> distances(static_cast<size_t>(samples), 0);
    auto run = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            Word w = sample_word(mu, n, derive_seed(seed, static_cast<std::uint64_t>(i)));
            distances[static_cast<size_t>(i)] = quantize_distance(x, w);
        }
    };

    int workers = std::max(1, std::min(resolve_threads(threads), samples));
    if (workers == 1) {
        run(0, samples);
    } else {
        std::vector<std::thread> pool;
        int step = (samples + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            int begin = w * step;
            int end = std::min(samples, begin + step);
            if (begin < end) pool.emplace_back(run, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    std::vector<int> sorted = distances;
    std::sort(sorted.begin(), sorted.end());
    int rank = static_cast<int>(std::ceil((1.0 - eps) * samples));
    rank = std::max(1, std::min(rank, samples));

    double mean = 0.0;
    for (int d : distances) mean += d;
    mean /= samples;
    double var = 0.0;
    for (int d : distances) var += (d - mean) * (d - mean);
    var /= (samples - 1);

    EpsRadiusEstimate est;
    est.n = n;
    est.samples = samples;
    est.eps = eps;
    est.quantile_radius = sorted[static_cast<size_t>(rank) - 1];
    est.normalized = static_cast<double>(est.quantile_radius) / n;
    est.mean_normalized = mean / n;
    est.std_error = std::sqrt(var / samples) / n;
    est.seed = seed;
    return est;
}

double analytic_essential_0k(int k) {
    if (k < 1 || k > 60) throw InputError("k out of range");
    return 0.5 / static_cast<double>((1ULL << (k + 1)) - 1);
}

SlidingBlockImage apply_sliding_block(const SlidingBlockRule& rule, const Word& y) {
    if (rule.look_back < 0 || rule.look_ahead < 0) {
        throw InputError("window extents must be nonnegative");
    }
    int window = rule.look_back + 1 + rule.look_ahead;
    int n = static_cast<int>(y.size());
    if (n < window) throw InputError("input shorter than the rule's window");
    for (Symbol s : y) {
        if (s < 0 || s >= rule.input_alphabet) {
            throw InputError("input symbol outside the rule's alphabet");
        }
    }

    SlidingBlockImage out;
    out.image.reserve(static_cast<size_t>(n - window + 1));
    for (int i = rule.look_back; i + rule.look_ahead < n; ++i) {
        std::span<const Symbol> view(y.data() + (i - rule.look_back),
                                     static_cast<size_t>(window));
        Symbol s = rule.map(view);
        if (s < 0 || s >= rule.output_alphabet) {
            throw InputError("rule produced a symbol outside its output alphabet");
        }
        out.image.push_back(s);
        if (s != y[static_cast<size_t>(i)]) ++out.mismatches;
    }
    return out;
}

SlidingBlockRule rll0k_rule(int k, int N) {
    if (k < 1) throw InputError("rule needs k >= 1");
    if (N < 1) throw InputError("rule needs N >= 1");
    int back = N * (k + 1) - 1;
    SlidingBlockRule rule;
    rule.look_back = back;
    rule.look_ahead = 0;
    rule.input_alphabet = 2;
    rule.output_alphabet = 2;
    rule.map = [k, back](std::span<const Symbol> w) -> Symbol {
        int run = 0;
        for (int j = back - 1; j >= 0 && w[static_cast<size_t>(j)] == 0; --j) ++run;
        if (run % (k + 1) == k) return 1;
        return w[static_cast<size_t>(back)];
    };
    return rule;
}

double rll0k_rule_mismatch_rate(int k, int N) {
    if (k < 1) throw InputError("rate needs k >= 1");
    if (N < 1) throw InputError("rate needs N >= 1");
    double rate = std::ldexp(1.0, -N * (k + 1));
    for (int i = 1; i < N; ++i) rate += 0.5 * std::ldexp(1.0, -i * (k + 1));
    return rate;
}

MismatchEstimate estimate_sbc_mismatch(const SlidingBlockRule& rule, const MarkovChain& mu,
                                       int n, int samples, std::uint64_t seed) {
    if (samples < 2) throw InputError("estimate needs at least two samples");
    if (mu.graph().alphabet_size() != rule.input_alphabet) {
        throw InputError("the measure and the rule must share an input alphabet");
    }
    std::vector<double> rates(static_cast<size_t>(samples), 0.0);
    for (int i = 0; i < samples; ++i) {
        Word w = sample_word(mu, n, derive_seed(seed, static_cast<std::uint64_t>(i)));
        SlidingBlockImage image = apply_sliding_block(rule, w);
        rates[static_cast<size_t>(i)] =
            static_cast<double>(image.mismatches) / static_cast<double>(image.image.size());
    }
    double mean = 0.0;
    for (double r : rates) mean += r;
    mean /= samples;
    double var = 0.0;
    for (double r : rates) var += (r - mean) * (r - mean);
    var /= (samples - 1);
    return MismatchEstimate{mean, std::sqrt(var / samples)};
}

}  // namespace covrad
