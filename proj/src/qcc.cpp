#include "covrad/qcc.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "covrad/quantizer.hpp"
#include "covrad/rng.hpp"

namespace covrad {

namespace {

int hamming(const Word& a, const Word& b) {
    int d = 0;
    for (size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

}  // namespace

Word BlockCode::encode(int message) const {
    if (message < 0 || message >= size()) throw InputError("message index out of range");
    return codewords_[static_cast<size_t>(message)];
}

int BlockCode::decode(const Word& received) const {
    if (static_cast<int>(received.size()) != length_) {
        throw InputError("received word has the wrong length");
    }
    int best = 0;
    int best_distance = hamming(received, codewords_[0]);
    for (int i = 1; i < size(); ++i) {
        int d = hamming(received, codewords_[static_cast<size_t>(i)]);
        if (d < best_distance) {
            best = i;
            best_distance = d;
        }
    }
    return best;
}

BlockCode make_table_code(int q, std::vector<Word> codewords) {
    if (q < 1) throw InputError("alphabet size must be >= 1");
    if (codewords.empty()) throw InputError("a code needs at least one codeword");
    if (codewords.size() > (1u << 14)) {
        throw CapExceededError("code table exceeds 2^14 codewords");
    }
    int n = static_cast<int>(codewords[0].size());
    if (n < 1) throw InputError("codewords must be nonempty");
    std::set<Word> distinct;
    for (const Word& w : codewords) {
        if (static_cast<int>(w.size()) != n) throw InputError("codewords differ in length");
        for (Symbol s : w) {
            if (s < 0 || s >= q) throw InputError("codeword symbol outside the alphabet");
        }
        if (!distinct.insert(w).second) throw InputError("duplicate codeword in the table");
    }

    int d_min = n + 1;  // degenerate single-codeword convention
    for (size_t i = 0; i < codewords.size(); ++i) {
        for (size_t j = i + 1; j < codewords.size(); ++j) {
            d_min = std::min(d_min, hamming(codewords[i], codewords[j]));
        }
    }
    return BlockCode(q, n, std::move(codewords), d_min);
}

BlockCode make_repetition_code(int q, int n) {
    if (n < 1) throw InputError("code length must be >= 1");
    std::vector<Word> words;
    words.reserve(static_cast<size_t>(q));
    for (Symbol a = 0; a < q; ++a) words.push_back(Word(static_cast<size_t>(n), a));
    return make_table_code(q, std::move(words));
}

QccRun qcc_transmit(const BlockCode& code, const ConstrainedSystem& x, int message,
                    const std::vector<int>& error_positions, std::uint64_t seed) {
    if (code.alphabet_size() != x.alphabet_size()) {
        throw InputError("code and system alphabets differ");
    }
    std::set<int> positions(error_positions.begin(), error_positions.end());
    if (positions.size() != error_positions.size()) {
        throw InputError("error positions must be distinct");
    }
    for (int p : positions) {
        if (p < 0 || p >= code.length()) throw InputError("error position out of range");
    }

    QccRun run;
    run.message = message;
    run.codeword = code.encode(message);
    QuantizationResult qr = quantize(x, run.codeword);
    run.quantized = qr.nearest;
    run.quantization_distance = qr.distance;
    run.received = run.quantized;
    run.channel_errors = static_cast<int>(positions.size());

    RandomSource rng(seed);
    int q = code.alphabet_size();
    for (int p : positions) {  // ascending, so draws land deterministically
        Symbol offset = 1 + rng.next_int(q - 1);
        run.received[static_cast<size_t>(p)] =
            (run.received[static_cast<size_t>(p)] + offset) % q;
    }

    run.decoded = code.decode(run.received);
    run.success = run.decoded == run.message;
    return run;
}

QccSummary qcc_experiment(const BlockCode& code, const ConstrainedSystem& x, int trials,
                          int error_weight, std::uint64_t seed) {
    if (trials < 1) throw InputError("the experiment needs at least one trial");
    if (error_weight < 0 || error_weight > code.length()) {
        throw InputError("channel weight must lie in [0, n]");
    }

    QccSummary summary;
    summary.trials = trials;
    summary.error_weight = error_weight;

    // Preflight: the worst quantization distance over the whole codebook
    // decides which channel weights the minimum-distance guarantee covers.
    summary.max_codeword_distance = 0;
    for (const Word& w : code.codewords()) {
        summary.max_codeword_distance =
            std::max(summary.max_codeword_distance, quantize_distance(x, w));
    }
    summary.guaranteed_weight = code.correction_radius() - summary.max_codeword_distance;

    RandomSource rng(seed);
    long long successes = 0;
    long long distance_total = 0;
    for (int t = 0; t < trials; ++t) {
        int message = rng.next_int(code.size());
        // Partial Fisher-Yates for a uniform position set.
        std::vector<int> all(static_cast<size_t>(code.length()));
        for (int i = 0; i < code.length(); ++i) all[static_cast<size_t>(i)] = i;
        for (int i = 0; i < error_weight; ++i) {
            int j = i + rng.next_int(code.length() - i);
            std::swap(all[static_cast<size_t>(i)], all[static_cast<size_t>(j)]);
        }
        std::vector<int> positions(all.begin(), all.begin() + error_weight);

        QccRun run = qcc_transmit(code, x, message, positions, rng.next_u64());
        successes += run.success ? 1 : 0;
        distance_total += run.quantization_distance;
        summary.distance_histogram[run.quantization_distance] += 1;
    }
    summary.success_rate = static_cast<double>(successes) / trials;
    summary.mean_quantization_distance = static_cast<double>(distance_total) / trials;
    return summary;
}

}  // namespace covrad
