#include "covrad/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <utility>

namespace covrad {

namespace {

// Dense boolean matrix with bit-packed rows, for reachability and
// primitivity work.
struct BoolMatrix {
    int n = 0;
    int words = 0;
    std::vector<std::uint64_t> bits;  // row-major, `words` per row

    explicit BoolMatrix(int n_)
        : n(n_), words((n_ + 63) / 64), bits(static_cast<size_t>(n_) * words, 0) {}

    void set(int i, int j) {
        bits[static_cast<size_t>(i) * words + j / 64] |= 1ULL << (j % 64);
    }
    bool get(int i, int j) const {
        return (bits[static_cast<size_t>(i) * words + j / 64] >> (j % 64)) & 1ULL;
    }

    bool all_positive() const {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (!get(i, j)) return false;
            }
        }
        return true;
    }

    BoolMatrix square() const {
        BoolMatrix out(n);
        for (int i = 0; i < n; ++i) {
            const std::uint64_t* row = &bits[static_cast<size_t>(i) * words];
            std::uint64_t* dst = &out.bits[static_cast<size_t>(i) * words];
            for (int w = 0; w < words; ++w) {
                std::uint64_t chunk = row[w];
                while (chunk) {
                    int j = w * 64 + std::countr_zero(chunk);
                    chunk &= chunk - 1;
                    const std::uint64_t* mid = &bits[static_cast<size_t>(j) * words];
                    for (int v = 0; v < words; ++v) dst[v] |= mid[v];
                }
            }
        }
        return out;
    }
};

BoolMatrix adjacency_bool(const LabeledGraph& g) {
    BoolMatrix a(g.vertex_count());
    for (const Edge& e : g.edges()) a.set(e.source, e.target);
    return a;
}

std::vector<char> reachable_from(const LabeledGraph& g, int start, bool backward) {
    std::vector<char> seen(static_cast<size_t>(g.vertex_count()), 0);
    std::vector<int> stack{start};
    seen[static_cast<size_t>(start)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        const auto& ids = backward ? g.in_edges(v) : g.out_edges(v);
        for (int id : ids) {
            const Edge& e = g.edge(id);
            int next = backward ? e.source : e.target;
            if (!seen[static_cast<size_t>(next)]) {
                seen[static_cast<size_t>(next)] = 1;
                stack.push_back(next);
            }
        }
    }
    return seen;
}

}  // namespace

LabeledGraph::LabeledGraph(int vertex_count, Alphabet alphabet, std::vector<Edge> edges)
    : vertex_count_(vertex_count), alphabet_(alphabet), edges_(std::move(edges)) {
    if (vertex_count_ < 1) throw InputError("graph needs at least one vertex");
    out_.resize(static_cast<size_t>(vertex_count_));
    in_.resize(static_cast<size_t>(vertex_count_));
    for (size_t id = 0; id < edges_.size(); ++id) {
        const Edge& e = edges_[id];
        if (e.source < 0 || e.source >= vertex_count_ || e.target < 0 ||
            e.target >= vertex_count_) {
            throw InputError("edge endpoint out of range");
        }
        if (e.label < 0 || e.label >= alphabet_.size()) {
            throw InputError("edge label outside the alphabet");
        }
        out_[static_cast<size_t>(e.source)].push_back(static_cast<int>(id));
        in_[static_cast<size_t>(e.target)].push_back(static_cast<int>(id));
    }
}

bool is_essential(const LabeledGraph& g) {
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.out_edges(v).empty() || g.in_edges(v).empty()) return false;
    }
    return true;
}

bool is_deterministic(const LabeledGraph& g) {
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::set<Symbol> seen;
        for (int id : g.out_edges(v)) {
            if (!seen.insert(g.edge(id).label).second) return false;
        }
    }
    return true;
}

bool is_irreducible(const LabeledGraph& g) {
    std::vector<char> fwd = reachable_from(g, 0, false);
    std::vector<char> bwd = reachable_from(g, 0, true);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!fwd[static_cast<size_t>(v)] || !bwd[static_cast<size_t>(v)]) return false;
    }
    return true;
}

bool is_primitive(const LabeledGraph& g) {
    if (!is_essential(g)) throw InputError("primitivity needs an essential graph");
    if (!is_irreducible(g)) return false;
    int n = g.vertex_count();
    // Wielandt: a primitive matrix has an entrywise-positive power at
    // exponent (n-1)^2 + 1.  Square until at or past that exponent; on an
    // essential graph a positive power stays positive, so checking the first
    // power-of-two exponent >= the bound decides.
    long long wielandt = static_cast<long long>(n - 1) * (n - 1) + 1;
    BoolMatrix b = adjacency_bool(g);
    long long exponent = 1;
    while (true) {
        if (b.all_positive()) return true;
        if (exponent >= wielandt) return false;
        b = b.square();
        exponent *= 2;
    }
}

LabeledGraph trim_to_essential(const LabeledGraph& g) {
    int n = g.vertex_count();
    std::vector<char> alive(static_cast<size_t>(n), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (!alive[static_cast<size_t>(v)]) continue;
            bool has_out = false;
            bool has_in = false;
            for (int id : g.out_edges(v)) {
                if (alive[static_cast<size_t>(g.edge(id).target)]) {
                    has_out = true;
                    break;
                }
            }
            for (int id : g.in_edges(v)) {
                if (alive[static_cast<size_t>(g.edge(id).source)]) {
                    has_in = true;
                    break;
                }
            }
            if (!has_out || !has_in) {
                alive[static_cast<size_t>(v)] = 0;
                changed = true;
            }
        }
    }

    std::vector<int> remap(static_cast<size_t>(n), -1);
    int kept = 0;
    for (int v = 0; v < n; ++v) {
        if (alive[static_cast<size_t>(v)]) remap[static_cast<size_t>(v)] = kept++;
    }
    if (kept == 0) throw EmptyLanguageError("presentation has no bi-infinite paths");

    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        if (alive[static_cast<size_t>(e.source)] && alive[static_cast<size_t>(e.target)]) {
            edges.push_back({remap[static_cast<size_t>(e.source)],
                             remap[static_cast<size_t>(e.target)], e.label});
        }
    }
    return LabeledGraph(kept, g.alphabet(), std::move(edges));
}

LabeledGraph determinize(const LabeledGraph& g, int max_states) {
    if (!is_essential(g)) throw InputError("determinize needs an essential graph");
    int n = g.vertex_count();
    size_t words = static_cast<size_t>((n + 63) / 64);
    using Subset = std::vector<std::uint64_t>;

    auto insert_vertex = [&](Subset s, std::map<Subset, int>& ids,
                             std::vector<Subset>& order) {
        auto [it, fresh] = ids.emplace(std::move(s), static_cast<int>(order.size()));
        if (fresh) order.push_back(it->first);
        return std::pair<int, bool>(it->second, fresh);
    };

    std::map<Subset, int> ids;
    std::vector<Subset> order;
    Subset full(words, 0);
    for (int v = 0; v < n; ++v) full[static_cast<size_t>(v) / 64] |= 1ULL << (v % 64);
    insert_vertex(full, ids, order);

    std::vector<Edge> edges;
    for (size_t current = 0; current < order.size(); ++current) {
        Subset source = order[current];  // copy: order may reallocate below
        for (Symbol a = 0; a < g.alphabet_size(); ++a) {
            Subset next(words, 0);
            bool nonempty = false;
            for (int v = 0; v < n; ++v) {
                if (!((source[static_cast<size_t>(v) / 64] >> (v % 64)) & 1ULL)) continue;
                for (int id : g.out_edges(v)) {
                    const Edge& e = g.edge(id);
                    if (e.label != a) continue;
                    next[static_cast<size_t>(e.target) / 64] |= 1ULL << (e.target % 64);
                    nonempty = true;
                }
            }
            if (!nonempty) continue;
            auto [target, fresh] = insert_vertex(std::move(next), ids, order);
            if (fresh && static_cast<int>(order.size()) > max_states) {
                throw CapExceededError("subset construction exceeded " +
                                       std::to_string(max_states) + " states");
            }
            edges.push_back({static_cast<int>(current), target, a});
        }
    }

    return trim_to_essential(
        LabeledGraph(static_cast<int>(order.size()), g.alphabet(), std::move(edges)));
}

bool contains(const LabeledGraph& g, const Word& word) {
    for (Symbol s : word) {
        if (s < 0 || s >= g.alphabet_size()) {
            throw InputError("word symbol outside the alphabet");
        }
    }
    std::vector<char> active(static_cast<size_t>(g.vertex_count()), 1);
    for (Symbol s : word) {
        std::vector<char> next(static_cast<size_t>(g.vertex_count()), 0);
        bool any = false;
        for (const Edge& e : g.edges()) {
            if (e.label == s && active[static_cast<size_t>(e.source)]) {
                next[static_cast<size_t>(e.target)] = 1;
                any = true;
            }
        }
        if (!any) return false;
        active = std::move(next);
    }
    return true;
}

std::vector<int> canonical_edge_order(const LabeledGraph& g) {
    std::vector<int> order(static_cast<size_t>(g.edge_count()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Edge& ea = g.edge(a);
        const Edge& eb = g.edge(b);
        return std::tie(ea.source, ea.label, ea.target, a) <
               std::tie(eb.source, eb.label, eb.target, b);
    });
    return order;
}

ConstrainedSystem ConstrainedSystem::from_graph(const LabeledGraph& g) {
    LabeledGraph trimmed = trim_to_essential(g);
    bool irr = covrad::is_irreducible(trimmed);
    bool prim = covrad::is_primitive(trimmed);
    bool det = covrad::is_deterministic(trimmed);
    return ConstrainedSystem(std::move(trimmed), irr, prim, det);
}

ConstrainedSystem build_rll_0k(int k) {
    if (k < 1) throw InputError("0,k runlength constraint needs k >= 1");
    std::vector<Edge> edges;
    for (int j = 0; j <= k; ++j) {
        if (j < k) edges.push_back({j, j + 1, 0});
        edges.push_back({j, 0, 1});
    }
    return ConstrainedSystem::from_graph(LabeledGraph(k + 1, Alphabet(2), std::move(edges)));
}

ConstrainedSystem build_rll_d_inf(int d) {
    if (d < 1) throw InputError("d,infinity runlength constraint needs d >= 1");
    std::vector<Edge> edges;
    for (int j = 0; j < d; ++j) edges.push_back({j, j + 1, 0});
    edges.push_back({d, d, 0});
    edges.push_back({d, 0, 1});
    return ConstrainedSystem::from_graph(LabeledGraph(d + 1, Alphabet(2), std::move(edges)));
}

ConstrainedSystem build_full_shift(int q) {
    std::vector<Edge> edges;
    for (Symbol a = 0; a < q; ++a) edges.push_back({0, 0, a});
    return ConstrainedSystem::from_graph(LabeledGraph(1, Alphabet(q), std::move(edges)));
}

ConstrainedSystem build_repetition(int q) {
    std::vector<Edge> edges;
    for (Symbol a = 0; a < q; ++a) edges.push_back({a, a, a});
    return ConstrainedSystem::from_graph(LabeledGraph(q, Alphabet(q), std::move(edges)));
}

ConstrainedSystem build_from_forbidden_words(int q, int m, const std::vector<Word>& forbidden) {
    if (q < 1) throw InputError("alphabet size must be >= 1");
    if (m < 1) throw InputError("forbidden-word length must be >= 1");

    double gram_count = std::pow(static_cast<double>(q), m - 1);
    if (gram_count > static_cast<double>(1 << 16)) {
        throw CapExceededError("de Bruijn construction would need too many vertices");
    }
    long long vertices = 1;
    for (int i = 0; i < m - 1; ++i) vertices *= q;

    // Forbidden m-grams as base-q codes, most significant symbol first.
    std::set<long long> banned;
    for (const Word& w : forbidden) {
        if (static_cast<int>(w.size()) != m) {
            throw InputError("every forbidden word must have the stated length");
        }
        long long code = 0;
        for (Symbol s : w) {
            if (s < 0 || s >= q) throw InputError("forbidden word symbol outside the alphabet");
            code = code * q + s;
        }
        banned.insert(code);
    }
    long long total = vertices * q;
    if (static_cast<long long>(banned.size()) >= total) {
        throw InputError("forbidding every length-m word leaves nothing");
    }

    std::vector<Edge> edges;
    for (long long u = 0; u < vertices; ++u) {
        for (Symbol a = 0; a < q; ++a) {
            long long gram = u * q + a;
            if (banned.count(gram)) continue;
            long long v = gram % vertices;
            edges.push_back({static_cast<int>(u), static_cast<int>(v), a});
        }
    }
    return ConstrainedSystem::from_graph(
        LabeledGraph(static_cast<int>(vertices), Alphabet(q), std::move(edges)));
}

namespace {

// Largest eigenvalue of the (nonnegative, essential) adjacency matrix.  The
// iteration runs on A + I so periodic presentations cannot oscillate; the
// shift is removed at the end.
double spectral_radius(const LabeledGraph& g) {
    int n = g.vertex_count();
    std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
    for (const Edge& e : g.edges()) {
        a[static_cast<size_t>(e.source) * n + e.target] += 1.0;
    }
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(i) * n + i] += 1.0;

    const double tol = 1e-12;
    const int max_iterations = 100000;
    std::vector<double> x(static_cast<size_t>(n), 1.0);
    std::vector<double> y(static_cast<size_t>(n), 0.0);
    double lambda = 0.0;
    int stable = 0;
    for (int it = 0; it < max_iterations; ++it) {
        double in_sum = 0.0;
        double out_sum = 0.0;
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            const double* row = &a[static_cast<size_t>(i) * n];
            for (int j = 0; j < n; ++j) acc += row[j] * x[static_cast<size_t>(j)];
            y[static_cast<size_t>(i)] = acc;
            in_sum += x[static_cast<size_t>(i)];
            out_sum += acc;
        }
        double estimate = out_sum / in_sum;
        for (int i = 0; i < n; ++i) y[static_cast<size_t>(i)] /= out_sum;
        std::swap(x, y);
        if (std::abs(estimate - lambda) <= tol * std::max(1.0, std::abs(estimate))) {
            if (++stable >= 3) return estimate - 1.0;
        } else {
            stable = 0;
        }
        lambda = estimate;
    }
    throw ConvergenceError("power iteration did not converge");
}

}  // namespace

double capacity(const ConstrainedSystem& x) {
    if (x.alphabet_size() < 2) {
        throw InputError("capacity needs an alphabet of size >= 2");
    }
    if (!x.is_deterministic()) {
        throw NotDeterministicError(
            "capacity needs a deterministic presentation; determinize first");
    }
    double lambda = spectral_radius(x.presentation());
    return std::log(lambda) / std::log(static_cast<double>(x.alphabet_size()));
}

double capacity_determinized(const ConstrainedSystem& x) {
    if (x.is_deterministic()) return capacity(x);
    return capacity(ConstrainedSystem::from_graph(determinize(x.presentation())));
}

}  // namespace covrad
