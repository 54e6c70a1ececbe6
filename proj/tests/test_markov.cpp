#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "covrad/graph.hpp"
#include "covrad/markov.hpp"
#include "covrad/rng.hpp"

using namespace covrad;

TEST_SUITE("markov") {

TEST_CASE("edge measure validation") {
    const LabeledGraph g = build_rll_0k(1).presentation();
    // Edge ids: 0 -> 1 on 0, 0 -> 0 on 1, 1 -> 0 on 1.
    CHECK_THROWS_AS(markov_from_edge_probs(g, {0.5, 0.5}), InputError);
    CHECK_THROWS_AS(markov_from_edge_probs(g, {0.5, 0.5, std::nan("")}), InputError);
    CHECK_THROWS_AS(markov_from_edge_probs(g, {-0.1, 0.6, 0.5}), InputError);
    CHECK_THROWS_AS(markov_from_edge_probs(g, {0.2, 0.2, 0.2}), InputError);
    // Sums to 1 but pushes more into vertex 1 than comes out.
    CHECK_THROWS_AS(markov_from_edge_probs(g, {0.5, 0.3, 0.2}), InputError);

    // Stationary: mass into vertex 1 equals mass out (0.3 each).
    MarkovChain mc = markov_from_edge_probs(g, {0.3, 0.4, 0.3});
    CHECK(mc.graph().vertex_count() == 2);
    CHECK(mc.edge_probabilities() == std::vector<double>{0.3, 0.4, 0.3});
    CHECK(mc.vertex_probabilities()[0] == doctest::Approx(0.7));
    CHECK(mc.vertex_probabilities()[1] == doctest::Approx(0.3));
    CHECK(mc.conditional_probabilities()[0] == doctest::Approx(0.3 / 0.7));
    CHECK(mc.conditional_probabilities()[2] == doctest::Approx(1.0));

    // A negative entry within tolerance is treated as zero mass.
    MarkovChain clamped = markov_from_edge_probs(g, {-1e-12, 1.0, 1e-12}, 1e-9);
    for (double p : clamped.edge_probabilities()) CHECK(p >= 0.0);
}

TEST_CASE("zero-mass vertices are trimmed with provenance") {
    const LabeledGraph g = build_rll_0k(1).presentation();
    MarkovChain mc = markov_from_edge_probs(g, {0.0, 1.0, 0.0});
    CHECK(mc.graph().vertex_count() == 1);
    CHECK(mc.graph().edge_count() == 1);
    CHECK(mc.edge_probabilities() == std::vector<double>{1.0});
    CHECK(mc.source_vertex_ids() == std::vector<int>{0});
    CHECK(mc.source_edge_ids() == std::vector<int>{1});

    CHECK_THROWS_AS(markov_from_edge_probs(g, {0.0, 0.0, 0.0}), InputError);
}

TEST_CASE("uniform i.i.d. measure") {
    MarkovChain mc = uniform_bernoulli(4);
    CHECK(mc.graph().vertex_count() == 1);
    CHECK(mc.graph().edge_count() == 4);
    for (int e = 0; e < 4; ++e) {
        CHECK(mc.edge_probabilities()[e] == doctest::Approx(0.25));
        CHECK(mc.conditional_probabilities()[e] == doctest::Approx(0.25));
    }
    CHECK(mc.vertex_probabilities()[0] == doctest::Approx(1.0));
    CHECK_THROWS_AS(uniform_bernoulli(0), InputError);
}

TEST_CASE("sampling is reproducible and respects the support") {
    const LabeledGraph g = build_rll_0k(1).presentation();
    MarkovChain mc = markov_from_edge_probs(g, {0.3, 0.4, 0.3});

    Word a = sample_word(mc, 500, 42);
    Word b = sample_word(mc, 500, 42);
    Word c = sample_word(mc, 500, 43);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a.size() == 500);

    // No two consecutive zeros can ever be emitted.
    for (size_t i = 0; i + 1 < a.size(); ++i) {
        CHECK((a[i] != 0 || a[i + 1] != 0));
    }
    CHECK(sample_word(mc, 0, 1).empty());
}

TEST_CASE("long-run symbol frequencies match the chain") {
    MarkovChain fair = uniform_bernoulli(2);
    Word w = sample_word(fair, 100000, 7);
    long long ones = 0;
    for (Symbol s : w) ones += s;
    double freq = static_cast<double>(ones) / static_cast<double>(w.size());
    CHECK(std::fabs(freq - 0.5) < 0.01);
}

TEST_CASE("sampled cylinder frequencies match stationary probabilities") {
    const LabeledGraph g = build_rll_0k(1).presentation();
    MarkovChain mc = markov_from_edge_probs(g, {0.3, 0.4, 0.3});
    // P(01) = pi(0) Q(0 -> 1 on 0) Q(1 -> 0 on 1) = 0.7 * (3/7) * 1 = 0.3,
    // P(11) = pi(0) Q(0 -> 0 on 1) Q(0 -> 0 or 1 emitting 1)...; count the
    // three possible two-symbol cylinders directly instead.
    const int n = 1000000;
    Word w = sample_word(mc, n, 20240817);
    long long c01 = 0, c10 = 0, c11 = 0, c00 = 0;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == 0 && w[i + 1] == 1) ++c01;
        if (w[i] == 1 && w[i + 1] == 0) ++c10;
        if (w[i] == 1 && w[i + 1] == 1) ++c11;
        if (w[i] == 0 && w[i + 1] == 0) ++c00;
    }
    double total = static_cast<double>(n - 1);
    CHECK(c00 == 0);
    // Stationarity makes every window position identically distributed;
    // 0.005 is over 5 sigma even before discounting positive correlations.
    CHECK(std::fabs(c01 / total - 0.3) < 0.005);
    // Every 1-labeled edge lands on vertex 0, so P(1a) = P(reads 1) * Q(0
    // emits a): P(10) = 0.7 * 3/7 and P(11) = 0.7 * 4/7.
    CHECK(std::fabs(c10 / total - 0.3) < 0.005);
    CHECK(std::fabs(c11 / total - 0.4) < 0.005);
}

TEST_CASE("label product of presentations") {
    const LabeledGraph gx = build_rll_0k(1).presentation();
    const LabeledGraph gy = build_full_shift(2).presentation();
    ProductGraph p = product_graph(gx, gy);
    CHECK(p.graph.vertex_count() == 2);
    CHECK(p.graph.edge_count() == 6);
    CHECK(p.qx == 2);
    CHECK(p.qy == 2);
    CHECK(p.graph.alphabet_size() == 4);
    REQUIRE(p.edge_factors.size() == 6);
    for (int e = 0; e < 6; ++e) {
        auto [ex, ey] = p.edge_factors[static_cast<size_t>(e)];
        CHECK(p.x_label(e) == gx.edge(ex).label);
        CHECK(p.y_label(e) == gy.edge(ey).label);
        CHECK(p.graph.edge(e).source ==
              gx.edge(ex).source * gy.vertex_count() + gy.edge(ey).source);
        CHECK(p.graph.edge(e).target ==
              gx.edge(ex).target * gy.vertex_count() + gy.edge(ey).target);
    }

    // Factors must be essential and free of parallel equal-label edges.
    LabeledGraph dangling(2, Alphabet(2), {{0, 0, 0}, {0, 1, 1}});
    CHECK_THROWS_AS(product_graph(dangling, gy), InputError);
    LabeledGraph doubled(1, Alphabet(1), {{0, 0, 0}, {0, 0, 0}});
    CHECK_THROWS_AS(product_graph(gx, doubled), InputError);
}

TEST_CASE("product of irreducible factors can be sampled when given a measure") {
    ProductGraph p = product_graph(build_rll_0k(1).presentation(),
                                   build_full_shift(2).presentation());
    // Couple the 0.3/0.4/0.3 chain with a fair coin independently.
    std::vector<double> x_probs = {0.3, 0.4, 0.3};
    std::vector<double> probs(6, 0.0);
    for (size_t e = 0; e < 6; ++e) {
        auto [ex, ey] = p.edge_factors[e];
        (void)ey;
        probs[e] = x_probs[static_cast<size_t>(ex)] * 0.5;
    }
    MarkovChain mc = markov_from_edge_probs(p.graph, probs);
    Word w = sample_word(mc, 2000, 5);
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        // The X component never emits two zeros in a row.
        CHECK((w[i] / 2 != 0 || w[i + 1] / 2 != 0));
    }
}

}  // TEST_SUITE
