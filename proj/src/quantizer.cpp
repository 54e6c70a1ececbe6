#include "covrad/quantizer.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <thread>

#include "covrad/entropy.hpp"
#include "covrad/parallel.hpp"

namespace covrad {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("COVRAD_THREADS")) {
        int value = std::atoi(env);
        if (value > 0) return value;
    }
    return 1;
}

namespace {

constexpr int kFar = std::numeric_limits<int>::max() / 2;

void check_word(const ConstrainedSystem& x, const Word& y) {
    for (Symbol s : y) {
        if (s < 0 || s >= x.alphabet_size()) {
            throw InputError("word symbol outside the system's alphabet");
        }
    }
}

}  // namespace

int quantize_distance(const ConstrainedSystem& x, const Word& y) {
    check_word(x, y);
    const LabeledGraph& g = x.presentation();
    std::vector<int> cost(static_cast<size_t>(g.vertex_count()), 0);
    std::vector<int> next(static_cast<size_t>(g.vertex_count()));
    for (Symbol s : y) {
        std::fill(next.begin(), next.end(), kFar);
        for (const Edge& e : g.edges()) {
            int cand = cost[static_cast<size_t>(e.source)] + (e.label != s ? 1 : 0);
            if (cand < next[static_cast<size_t>(e.target)]) {
                next[static_cast<size_t>(e.target)] = cand;
            }
        }
        std::swap(cost, next);
    }
    return *std::min_element(cost.begin(), cost.end());
}

QuantizationResult quantize(const ConstrainedSystem& x, const Word& y) {
    check_word(x, y);
    const LabeledGraph& g = x.presentation();
    int n = static_cast<int>(y.size());
    int vertices = g.vertex_count();

    std::vector<int> cost(static_cast<size_t>(vertices), 0);
    std::vector<int> next(static_cast<size_t>(vertices));
    // back[i][v]: edge that reaches v after consuming i symbols (i >= 1).
    std::vector<std::vector<int>> back(static_cast<size_t>(n) + 1,
                                       std::vector<int>(static_cast<size_t>(vertices), -1));
    for (int i = 0; i < n; ++i) {
        std::fill(next.begin(), next.end(), kFar);
        for (int id = 0; id < g.edge_count(); ++id) {
            const Edge& e = g.edge(id);
            int cand = cost[static_cast<size_t>(e.source)] + (e.label != y[static_cast<size_t>(i)] ? 1 : 0);
            if (cand < next[static_cast<size_t>(e.target)]) {
                next[static_cast<size_t>(e.target)] = cand;
                back[static_cast<size_t>(i) + 1][static_cast<size_t>(e.target)] = id;
            }
        }
        std::swap(cost, next);
    }

    int best_vertex = 0;
    for (int v = 1; v < vertices; ++v) {
        if (cost[static_cast<size_t>(v)] < cost[static_cast<size_t>(best_vertex)]) best_vertex = v;
    }

    QuantizationResult result;
    result.input = y;
    result.distance = cost[static_cast<size_t>(best_vertex)];
    result.path.resize(static_cast<size_t>(n));
    result.nearest.resize(static_cast<size_t>(n));
    int v = best_vertex;
    for (int i = n; i >= 1; --i) {
        int id = back[static_cast<size_t>(i)][static_cast<size_t>(v)];
        result.path[static_cast<size_t>(i) - 1] = id;
        result.nearest[static_cast<size_t>(i) - 1] = g.edge(id).label;
        v = g.edge(id).source;
    }
    return result;
}

std::vector<Word> enumerate_language(const ConstrainedSystem& x, int n, long long cap) {
    if (n < 0) throw InputError("word length must be >= 0");
    const LabeledGraph& g = x.presentation();

    // Level sets: word -> vertices reachable by a path spelling it.  The map
    // keeps words in lexicographic order.
    using VertexSet = std::vector<char>;
    std::map<Word, VertexSet> level;
    level.emplace(Word{}, VertexSet(static_cast<size_t>(g.vertex_count()), 1));

    for (int i = 0; i < n; ++i) {
        std::map<Word, VertexSet> grown;
        for (const auto& [word, active] : level) {
            Word extended = word;
            extended.push_back(0);
            for (Symbol a = 0; a < g.alphabet_size(); ++a) {
                extended.back() = a;
                VertexSet* slot = nullptr;
                for (const Edge& e : g.edges()) {
                    if (e.label != a || !active[static_cast<size_t>(e.source)]) continue;
                    if (slot == nullptr) {
                        slot = &grown
                                    .emplace(extended,
                                             VertexSet(static_cast<size_t>(g.vertex_count()), 0))
                                    .first->second;
                    }
                    (*slot)[static_cast<size_t>(e.target)] = 1;
                }
            }
            if (static_cast<long long>(grown.size()) > cap) {
                throw CapExceededError("language enumeration exceeded the cap");
            }
        }
        level = std::move(grown);
    }

    std::vector<Word> words;
    words.reserve(level.size());
    for (const auto& [word, active] : level) words.push_back(word);
    return words;
}

namespace {

struct ChunkResult {
    int radius = -1;
    std::vector<Word> holes;  // lexicographically first, capped at 16
};

constexpr size_t kMaxHoles = 16;

// words is lexicographically sorted, so scanning [begin, end) in order keeps
// each chunk's hole list sorted too.
ChunkResult scan_chunk(const ConstrainedSystem& x, const std::vector<Word>& words,
                       size_t begin, size_t end) {
    ChunkResult result;
    for (size_t i = begin; i < end; ++i) {
        int d = quantize_distance(x, words[i]);
        if (d > result.radius) {
            result.radius = d;
            result.holes.clear();
        }
        if (d == result.radius && result.holes.size() < kMaxHoles) {
            result.holes.push_back(words[i]);
        }
    }
    return result;
}

}  // namespace

CoveringRadiusReport covering_radius_exact(const ConstrainedSystem& x,
                                           const ConstrainedSystem& y, int n,
                                           long long cap, int threads) {
    if (n < 1) throw InputError("covering radius needs n >= 1");
    if (x.alphabet_size() != y.alphabet_size()) {
        throw InputError("covering radius needs matching alphabets");
    }
    std::vector<Word> words = enumerate_language(y, n, cap);

    int workers = resolve_threads(threads);
    workers = std::max(1, std::min<int>(workers, static_cast<int>(words.size())));
    std::vector<ChunkResult> parts(static_cast<size_t>(workers));
    if (workers == 1) {
        parts[0] = scan_chunk(x, words, 0, words.size());
    } else {
        std::vector<std::thread> pool;
        size_t step = (words.size() + static_cast<size_t>(workers) - 1) / static_cast<size_t>(workers);
        for (int w = 0; w < workers; ++w) {
            size_t begin = static_cast<size_t>(w) * step;
            size_t end = std::min(words.size(), begin + step);
            pool.emplace_back([&, w, begin, end] { parts[static_cast<size_t>(w)] = scan_chunk(x, words, begin, end); });
        }
        for (auto& t : pool) t.join();
    }

    // Chunks cover contiguous sorted ranges, so concatenating the hole lists
    // of maximal chunks in order keeps the global list lexicographic.
    CoveringRadiusReport report;
    report.n = n;
    for (const ChunkResult& part : parts) report.radius = std::max(report.radius, part.radius);
    for (const ChunkResult& part : parts) {
        if (part.radius != report.radius) continue;
        for (const Word& w : part.holes) {
            if (report.deep_holes.size() >= kMaxHoles) break;
            report.deep_holes.push_back(w);
        }
    }
    report.normalized = static_cast<double>(report.radius) / n;
    return report;
}

std::vector<CurvePoint> covering_radius_upper_curve(const ConstrainedSystem& x,
                                                    const ConstrainedSystem& y, int n_max,
                                                    long long cap, int threads) {
    if (n_max < 1) throw InputError("curve needs n_max >= 1");
    std::vector<CurvePoint> curve;
    curve.reserve(static_cast<size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        CoveringRadiusReport r = covering_radius_exact(x, y, n, cap, threads);
        curve.push_back({r.n, r.radius, r.normalized});
    }
    return curve;
}

double sphere_covering_lower_bound(const ConstrainedSystem& x, const ConstrainedSystem& y) {
    if (x.alphabet_size() != y.alphabet_size()) {
        throw InputError("sphere-covering bound needs matching alphabets");
    }
    double hx = capacity_determinized(x);
    double hy = capacity_determinized(y);
    if (hx > hy + 1e-9) {
        throw InputError(
            "sphere-covering bound needs capacity(x) <= capacity(y); "
            "did you swap the arguments?");
    }
    double gap = std::min(1.0, std::max(0.0, hy - hx));
    return entropy_hq_inverse(x.alphabet_size(), gap);
}

}  // namespace covrad
