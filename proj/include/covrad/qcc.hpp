#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "covrad/graph.hpp"

namespace covrad {

// Explicit-table block code of length n over [q].  Messages are codeword
// indices.  The minimum distance comes from a pairwise scan; a single-word
// code gets min_distance n + 1 so that its correction radius floor((d-1)/2)
// degenerates to floor(n/2).
class BlockCode {
public:
    int length() const { return length_; }
    int alphabet_size() const { return q_; }
    int size() const { return static_cast<int>(codewords_.size()); }
    int min_distance() const { return min_distance_; }
    int correction_radius() const { return (min_distance_ - 1) / 2; }
    const std::vector<Word>& codewords() const { return codewords_; }

    Word encode(int message) const;

    // Nearest codeword by Hamming distance; ties go to the lowest index.
    int decode(const Word& received) const;

    friend BlockCode make_table_code(int q, std::vector<Word> codewords);

private:
    BlockCode(int q, int length, std::vector<Word> codewords, int min_distance)
        : q_(q), length_(length), codewords_(std::move(codewords)), min_distance_(min_distance) {}

    int q_;
    int length_;
    std::vector<Word> codewords_;
    int min_distance_;
};

// Validates the table: nonempty, equal lengths, symbols in range, all
// codewords distinct, at most 2^14 of them.
BlockCode make_table_code(int q, std::vector<Word> codewords);

// The q constant words of length n.
BlockCode make_repetition_code(int q, int n);

// One pass of the concatenated scheme: encode, quantize the codeword into
// B_n(X), push it through the channel, decode.
struct QccRun {
    int message = 0;
    Word codeword;              // ECC output
    Word quantized;             // nearest word of B_n(X)
    Word received;              // after channel errors
    int quantization_distance = 0;
    int channel_errors = 0;
    int decoded = 0;
    bool success = false;
};

// The channel flips each listed position of the quantized word to a
// uniformly random different symbol (seeded; for binary alphabets the flip is
// forced).  Positions must be distinct and within range.  Decoding succeeds
// whenever channel_errors + quantization_distance stays within the code's
// correction radius.
QccRun qcc_transmit(const BlockCode& code, const ConstrainedSystem& x, int message,
                    const std::vector<int>& error_positions, std::uint64_t seed = 0);

struct QccSummary {
    int trials = 0;
    int error_weight = 0;
    double success_rate = 0.0;
    double mean_quantization_distance = 0.0;
    std::map<int, long long> distance_histogram;  // quantization distance -> trials
    int max_codeword_distance = 0;                // worst quantization over all codewords
    int guaranteed_weight = 0;                    // correction radius minus the worst; may be < 0
};

// Monte Carlo sweep at a fixed channel weight: random messages, random
// position sets, random symbol flips.  guaranteed_weight < 0 means no channel
// weight is covered by the worst-case guarantee (the preflight result; runs
// may still succeed).
QccSummary qcc_experiment(const BlockCode& code, const ConstrainedSystem& x, int trials,
                          int error_weight, std::uint64_t seed);

}  // namespace covrad
