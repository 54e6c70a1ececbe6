#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "covrad/graph.hpp"

namespace covrad {

// Stationary Markov chain supported on the edges of a labeled graph.  Holds
// the stationary edge measure P, the vertex marginal pi(v) = sum of P over
// edges leaving v, and the transition conditionals Q(e) = P(e) / pi(source).
// Vertices with zero mass (and their edges) are trimmed away at construction;
// source_vertex_ids / source_edge_ids map back into the graph the chain was
// built from.
class MarkovChain {
public:
    const LabeledGraph& graph() const { return graph_; }
    const std::vector<double>& edge_probabilities() const { return edge_prob_; }
    const std::vector<double>& vertex_probabilities() const { return vertex_prob_; }
    const std::vector<double>& conditional_probabilities() const { return conditional_; }
    const std::vector<int>& source_vertex_ids() const { return source_vertices_; }
    const std::vector<int>& source_edge_ids() const { return source_edges_; }

    friend MarkovChain markov_from_edge_probs(const LabeledGraph& g,
                                              const std::vector<double>& edge_probs,
                                              double tolerance);

private:
    MarkovChain(LabeledGraph g, std::vector<double> p, std::vector<double> pi,
                std::vector<double> q, std::vector<int> sv, std::vector<int> se)
        : graph_(std::move(g)),
          edge_prob_(std::move(p)),
          vertex_prob_(std::move(pi)),
          conditional_(std::move(q)),
          source_vertices_(std::move(sv)),
          source_edges_(std::move(se)) {}

    LabeledGraph graph_;
    std::vector<double> edge_prob_;
    std::vector<double> vertex_prob_;
    std::vector<double> conditional_;
    std::vector<int> source_vertices_;
    std::vector<int> source_edges_;
};

// Validates and packages an edge measure: entries nonnegative, total mass 1,
// and flow conservation (in-mass equals out-mass at every vertex), all within
// the tolerance.  Zero-mass vertices are then trimmed.
MarkovChain markov_from_edge_probs(const LabeledGraph& g, const std::vector<double>& edge_probs,
                                   double tolerance = 1e-9);

// Uniform i.i.d. symbols: the full-shift presentation with P = 1/q per loop.
MarkovChain uniform_bernoulli(int q);

// Label product of two presentations.  Vertices are pairs (vx, vy), edges are
// pairs (ex, ey), and the label of a pair edge encodes (label_x, label_y) as
// label_x * qy + label_y.  Both factors must be essential and free of
// parallel edges carrying equal labels.
struct ProductGraph {
    LabeledGraph graph;
    LabeledGraph factor_x;
    LabeledGraph factor_y;
    std::vector<std::pair<int, int>> edge_factors;  // product edge -> (ex, ey)
    int qx = 0;
    int qy = 0;

    Symbol x_label(int product_edge) const {
        return graph.edge(product_edge).label / qy;
    }
    Symbol y_label(int product_edge) const {
        return graph.edge(product_edge).label % qy;
    }
};

ProductGraph product_graph(const LabeledGraph& gx, const LabeledGraph& gy);

// Length-n word from the stationary chain: start vertex drawn from pi, then
// out-edges drawn from Q, emitting labels.  Same seed, same word.
Word sample_word(const MarkovChain& mc, int n, std::uint64_t seed);

}  // namespace covrad
