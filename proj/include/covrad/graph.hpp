#pragma once

#include <vector>

#include "covrad/errors.hpp"

namespace covrad {

// Symbols are 0-based integers below the alphabet size.
using Symbol = int;
using Word = std::vector<Symbol>;

// Finite alphabet {0, ..., size-1}.
class Alphabet {
public:
    explicit Alphabet(int size) : size_(size) {
        if (size < 1) throw InputError("alphabet size must be >= 1");
    }
    int size() const { return size_; }
    bool operator==(const Alphabet& other) const { return size_ == other.size_; }

private:
    int size_;
};

struct Edge {
    int source = 0;
    int target = 0;
    Symbol label = 0;
};

// Labeled directed multigraph.  Vertices are 0..vertex_count-1, edges are
// identified by their index into edges().  Parallel edges are allowed,
// including parallel edges with equal labels.  Immutable after construction;
// const access is safe to share across threads.
class LabeledGraph {
public:
    LabeledGraph(int vertex_count, Alphabet alphabet, std::vector<Edge> edges);

    int vertex_count() const { return vertex_count_; }
    const Alphabet& alphabet() const { return alphabet_; }
    int alphabet_size() const { return alphabet_.size(); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_[static_cast<size_t>(id)]; }

    // Edge ids leaving / entering a vertex, in edge-id order.
    const std::vector<int>& out_edges(int v) const { return out_[static_cast<size_t>(v)]; }
    const std::vector<int>& in_edges(int v) const { return in_[static_cast<size_t>(v)]; }

private:
    int vertex_count_;
    Alphabet alphabet_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
};

// Every vertex has out-degree >= 1 and in-degree >= 1.
bool is_essential(const LabeledGraph& g);

// No vertex has two out-edges with the same label.
bool is_deterministic(const LabeledGraph& g);

// Strongly connected as a directed graph.
bool is_irreducible(const LabeledGraph& g);

// True iff some power N <= (|V|-1)^2 + 1 of the adjacency matrix is entrywise
// positive (the Wielandt bound).  Checked by repeated boolean squaring, which
// suffices because positivity of powers is monotone on essential graphs.
// Requires an essential graph.
bool is_primitive(const LabeledGraph& g);

// Repeatedly delete vertices with no in-edges or no out-edges.  Vertex and
// edge ids are renumbered, preserving relative order.  Throws
// EmptyLanguageError when nothing survives.
LabeledGraph trim_to_essential(const LabeledGraph& g);

// Subset construction.  Returns a right-resolving (deterministic) essential
// presentation of the same system.  Parallel same-label edges collapse.
// Requires an essential input; throws CapExceededError when more than
// max_states subsets get explored.
LabeledGraph determinize(const LabeledGraph& g, int max_states = 1 << 16);

// True iff some path in g spells the word.
bool contains(const LabeledGraph& g, const Word& word);

// Edge ids sorted by (source, label, target).  This is the order used by all
// serialized forms.
std::vector<int> canonical_edge_order(const LabeledGraph& g);

// A constrained system: an essential labeled-graph presentation plus analysis
// flags computed at construction.
class ConstrainedSystem {
public:
    // Trims the graph to its essential part (error when empty) and records
    // the analysis flags.
    static ConstrainedSystem from_graph(const LabeledGraph& g);

    const LabeledGraph& presentation() const { return graph_; }
    int alphabet_size() const { return graph_.alphabet_size(); }
    bool is_irreducible() const { return irreducible_; }
    bool is_primitive() const { return primitive_; }
    bool is_deterministic() const { return deterministic_; }

private:
    ConstrainedSystem(LabeledGraph g, bool irr, bool prim, bool det)
        : graph_(std::move(g)), irreducible_(irr), primitive_(prim), deterministic_(det) {}

    LabeledGraph graph_;
    bool irreducible_;
    bool primitive_;
    bool deterministic_;
};

// Binary words with at most k consecutive zeros.  Vertices 0..k count the
// current zero run: j -> j+1 on 0 for j < k, and j -> 0 on 1 for every j.
ConstrainedSystem build_rll_0k(int k);

// Binary words with at least d zeros between consecutive ones.  Vertices
// 0..d: j -> j+1 on 0 for j < d, a 0-labeled self-loop at d, and d -> 0 on 1.
ConstrainedSystem build_rll_d_inf(int d);

// All words over a q-ary alphabet: one vertex with q self-loops.
ConstrainedSystem build_full_shift(int q);

// The q constant words: q isolated vertices, each with one self-loop.
ConstrainedSystem build_repetition(int q);

// Shift of finite type over [q] avoiding the given length-m words, presented
// on de Bruijn (m-1)-gram vertices and trimmed.  The forbidden set must be a
// proper subset of [q]^m; an empty result throws EmptyLanguageError.
ConstrainedSystem build_from_forbidden_words(int q, int m, const std::vector<Word>& forbidden);

// log_q of the spectral radius of the adjacency matrix, by power iteration
// (relative tolerance 1e-12, at most 1e5 iterations).  The presentation must
// be deterministic; determinize first otherwise (NotDeterministicError).
// Needs an alphabet of size >= 2.
double capacity(const ConstrainedSystem& x);

// capacity() after determinizing a copy when the stored presentation is
// nondeterministic.  Determinizing preserves the language, hence the value.
double capacity_determinized(const ConstrainedSystem& x);

}  // namespace covrad
