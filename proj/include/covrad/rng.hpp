#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace covrad {

// splitmix64 mix step.  Used to derive independent per-sample seeds from a
// base seed, so sample i is reproducible no matter which thread draws it.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seeded generator with pinned output mappings.  The engine is mt19937_64,
// whose sequence is fixed by the standard; the uniform mappings below avoid
// std distributions, whose algorithms are implementation defined.  Same seed,
// same stream of values, on any platform.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in {0, ..., bound-1}, unbiased via rejection.
    int next_int(int bound) {
        std::uint64_t b = static_cast<std::uint64_t>(bound);
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<int>(x % b);
    }

    // Index into a cumulative-weight table (ascending, last entry ~1).
    // Returns the first index whose cumulative weight exceeds the draw.
    int next_from_cumulative(const std::vector<double>& cumulative) {
        double u = next_unit();
        int lo = 0;
        int hi = static_cast<int>(cumulative.size()) - 1;
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (u < cumulative[mid]) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        return lo;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace covrad
