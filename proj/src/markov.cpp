#include "covrad/markov.hpp"

#include <cmath>
#include <set>
#include <string>
#include <tuple>

#include "covrad/rng.hpp"

namespace covrad {

MarkovChain markov_from_edge_probs(const LabeledGraph& g, const std::vector<double>& edge_probs,
                                   double tolerance) {
    if (static_cast<int>(edge_probs.size()) != g.edge_count()) {
        throw InputError("need exactly one probability per edge");
    }
    std::vector<double> p = edge_probs;
    double total = 0.0;
    for (double& v : p) {
        if (std::isnan(v) || v < -tolerance) {
            throw InputError("edge probabilities must be nonnegative");
        }
        if (v < 0.0) v = 0.0;  // within tolerance of zero
        total += v;
    }
    if (std::abs(total - 1.0) > tolerance) {
        throw InputError("edge probabilities must sum to 1");
    }

    auto out_mass = [&](const LabeledGraph& graph, const std::vector<double>& prob, int v) {
        double m = 0.0;
        for (int id : graph.out_edges(v)) m += prob[static_cast<size_t>(id)];
        return m;
    };
    auto in_mass = [&](const LabeledGraph& graph, const std::vector<double>& prob, int v) {
        double m = 0.0;
        for (int id : graph.in_edges(v)) m += prob[static_cast<size_t>(id)];
        return m;
    };
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (std::abs(out_mass(g, p, v) - in_mass(g, p, v)) > tolerance) {
            throw InputError("edge probabilities violate flow conservation at vertex " +
                             std::to_string(v));
        }
    }

    // Trim zero-mass vertices.  Iterate: dropping a vertex drops its edges,
    // which can push a neighbour's mass to zero as well.
    std::vector<char> alive(static_cast<size_t>(g.vertex_count()), 1);
    std::vector<char> edge_alive(static_cast<size_t>(g.edge_count()), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (!alive[static_cast<size_t>(v)]) continue;
            double mass = 0.0;
            for (int id : g.out_edges(v)) {
                if (edge_alive[static_cast<size_t>(id)]) mass += p[static_cast<size_t>(id)];
            }
            if (mass <= tolerance) {
                alive[static_cast<size_t>(v)] = 0;
                for (int id : g.out_edges(v)) edge_alive[static_cast<size_t>(id)] = 0;
                for (int id : g.in_edges(v)) edge_alive[static_cast<size_t>(id)] = 0;
                changed = true;
            }
        }
    }

    std::vector<int> vertex_map;
    std::vector<int> remap(static_cast<size_t>(g.vertex_count()), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (alive[static_cast<size_t>(v)]) {
            remap[static_cast<size_t>(v)] = static_cast<int>(vertex_map.size());
            vertex_map.push_back(v);
        }
    }
    if (vertex_map.empty()) throw InputError("the measure has no mass anywhere");

    std::vector<Edge> edges;
    std::vector<int> edge_map;
    std::vector<double> kept_p;
    for (int id = 0; id < g.edge_count(); ++id) {
        if (!edge_alive[static_cast<size_t>(id)]) continue;
        const Edge& e = g.edge(id);
        edges.push_back({remap[static_cast<size_t>(e.source)], remap[static_cast<size_t>(e.target)], e.label});
        edge_map.push_back(id);
        kept_p.push_back(p[static_cast<size_t>(id)]);
    }
    LabeledGraph trimmed(static_cast<int>(vertex_map.size()), g.alphabet(), std::move(edges));

    std::vector<double> pi(static_cast<size_t>(trimmed.vertex_count()), 0.0);
    for (int v = 0; v < trimmed.vertex_count(); ++v) {
        pi[static_cast<size_t>(v)] = out_mass(trimmed, kept_p, v);
    }
    std::vector<double> q(kept_p.size(), 0.0);
    for (int id = 0; id < trimmed.edge_count(); ++id) {
        q[static_cast<size_t>(id)] =
            kept_p[static_cast<size_t>(id)] / pi[static_cast<size_t>(trimmed.edge(id).source)];
    }
    return MarkovChain(std::move(trimmed), std::move(kept_p), std::move(pi), std::move(q),
                       std::move(vertex_map), std::move(edge_map));
}

MarkovChain uniform_bernoulli(int q) {
    if (q < 1) throw InputError("alphabet size must be >= 1");
    std::vector<Edge> edges;
    for (Symbol a = 0; a < q; ++a) edges.push_back({0, 0, a});
    LabeledGraph g(1, Alphabet(q), std::move(edges));
    return markov_from_edge_probs(g, std::vector<double>(static_cast<size_t>(q), 1.0 / q));
}

ProductGraph product_graph(const LabeledGraph& gx, const LabeledGraph& gy) {
    auto check_factor = [](const LabeledGraph& g, const char* side) {
        if (!is_essential(g)) {
            throw InputError(std::string("product needs an essential ") + side + " factor");
        }
        std::set<std::tuple<int, int, Symbol>> seen;
        for (const Edge& e : g.edges()) {
            if (!seen.insert({e.source, e.target, e.label}).second) {
                throw InputError(std::string(side) +
                                 " factor has parallel edges with the same label");
            }
        }
    };
    check_factor(gx, "left");
    check_factor(gy, "right");

    int vy = gy.vertex_count();
    int ny = gy.edge_count();
    int qy = gy.alphabet_size();
    std::vector<Edge> edges;
    std::vector<std::pair<int, int>> factors;
    edges.reserve(static_cast<size_t>(gx.edge_count()) * ny);
    for (int ex = 0; ex < gx.edge_count(); ++ex) {
        for (int ey = 0; ey < ny; ++ey) {
            const Edge& a = gx.edge(ex);
            const Edge& b = gy.edge(ey);
            edges.push_back({a.source * vy + b.source, a.target * vy + b.target,
                             a.label * qy + b.label});
            factors.emplace_back(ex, ey);
        }
    }
    LabeledGraph product(gx.vertex_count() * vy, Alphabet(gx.alphabet_size() * qy),
                         std::move(edges));
    return ProductGraph{std::move(product), gx, gy, std::move(factors), gx.alphabet_size(), qy};
}

Word sample_word(const MarkovChain& mc, int n, std::uint64_t seed) {
    if (n < 0) throw InputError("word length must be >= 0");
    const LabeledGraph& g = mc.graph();

    // Cumulative start distribution over vertices, and per-vertex cumulative
    // transition tables over positive-probability out-edges.
    std::vector<double> start(static_cast<size_t>(g.vertex_count()));
    double mass = 0.0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        mass += mc.vertex_probabilities()[static_cast<size_t>(v)];
        start[static_cast<size_t>(v)] = mass;
    }
    for (double& s : start) s /= mass;

    std::vector<std::vector<int>> choices(static_cast<size_t>(g.vertex_count()));
    std::vector<std::vector<double>> tables(static_cast<size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) {
        double acc = 0.0;
        for (int id : g.out_edges(v)) {
            double q = mc.conditional_probabilities()[static_cast<size_t>(id)];
            if (q <= 0.0) continue;
            acc += q;
            choices[static_cast<size_t>(v)].push_back(id);
            tables[static_cast<size_t>(v)].push_back(acc);
        }
        for (double& t : tables[static_cast<size_t>(v)]) t /= acc;
    }

    RandomSource rng(seed);
    Word word;
    word.reserve(static_cast<size_t>(n));
    int v = rng.next_from_cumulative(start);
    for (int i = 0; i < n; ++i) {
        const auto& table = tables[static_cast<size_t>(v)];
        int pick = rng.next_from_cumulative(table);
        int id = choices[static_cast<size_t>(v)][static_cast<size_t>(pick)];
        word.push_back(g.edge(id).label);
        v = g.edge(id).target;
    }
    return word;
}

}  // namespace covrad
