#include <cmath>
#include <vector>

#include <doctest.h>

#include "covrad/graph.hpp"
#include "covrad/markov.hpp"
#include "covrad/markov_bound.hpp"

using namespace covrad;

namespace {

double analytic_0k(int k) { return 0.5 / (std::pow(2.0, k + 1) - 1.0); }

MarkovBoundProblem zero_run_problem(int k) {
    return formulate(build_rll_0k(k), build_full_shift(2), uniform_bernoulli(2));
}

}  // namespace

TEST_SUITE("markov_bound") {

TEST_CASE("formulation shape for the smallest zero-run system") {
    MarkovBoundProblem p = zero_run_problem(1);
    // 3 x-edges times 2 y-edges.
    CHECK(p.lp.variable_count() == 6);
    // 1 normalization + 2 y-marginal + 2 stationarity + 2*2 conditional rows.
    CHECK(p.lp.row_count() == 9);
    REQUIRE(p.is_mismatch.size() == 6);
    int mismatched = 0;
    for (size_t e = 0; e < 6; ++e) {
        bool expect = p.product.x_label(static_cast<int>(e)) !=
                      p.product.y_label(static_cast<int>(e));
        CHECK(static_cast<bool>(p.is_mismatch[e]) == expect);
        mismatched += p.is_mismatch[e];
        CHECK(p.lp.objective[e] == (expect ? 1.0 : 0.0));
    }
    // Each x-edge pairs with one agreeing and one disagreeing y-loop.
    CHECK(mismatched == 3);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(formulate(build_rll_0k(1), build_full_shift(3), uniform_bernoulli(3)),
                    InputError);
    // Measure lives on the wrong graph.
    CHECK_THROWS_AS(formulate(build_full_shift(2), build_rll_0k(1), uniform_bernoulli(2)),
                    InputError);
}

TEST_CASE("zero-run-limited systems against the uniform coin") {
    for (int k = 1; k <= 3; ++k) {
        MarkovBoundResult result = solve_bound(zero_run_problem(k));
        CHECK(result.value == doctest::Approx(analytic_0k(k)).epsilon(1e-9));
        CHECK(result.constraints_checked == zero_run_problem(k).lp.row_count());
    }
}

TEST_CASE("a system that already matches the ambient one has bound zero") {
    MarkovBoundResult r =
        solve_bound(formulate(build_full_shift(2), build_full_shift(2), uniform_bernoulli(2)));
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("repetition system bound is one half") {
    // The coupling must spread each constant word against a fair coin; half
    // of all symbols disagree no matter how mass is split between the loops.
    MarkovBoundResult r =
        solve_bound(formulate(build_repetition(2), build_full_shift(2), uniform_bernoulli(2)));
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("optimizer is a valid stationary extension of the y-measure") {
    MarkovBoundProblem p = zero_run_problem(2);
    MarkovBoundResult result = solve_bound(p);

    // Mismatch mass recomputed from the chain matches the reported value.
    double mismatch_mass = 0.0;
    const auto& probs = result.chain.edge_probabilities();
    const auto& back = result.chain.source_edge_ids();
    for (size_t e = 0; e < probs.size(); ++e) {
        if (p.is_mismatch[static_cast<size_t>(back[e])]) mismatch_mass += probs[e];
    }
    CHECK(mismatch_mass == doctest::Approx(result.value).epsilon(1e-8));

    // The y-marginal survives: each y-edge fiber carries exactly its measure.
    std::vector<double> fiber(2, 0.0);
    for (size_t e = 0; e < probs.size(); ++e) {
        int ey = p.product.edge_factors[static_cast<size_t>(back[e])].second;
        fiber[static_cast<size_t>(ey)] += probs[e];
    }
    CHECK(fiber[0] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(fiber[1] == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("the hand-built optimal coupling for k=1 is feasible and optimal") {
    // With alpha = 1/6: weight 2 alpha on the x-edge 0->1 reading 0 against y
    // reading 0, weight 2 alpha on the x self-loop at 0 (both read 1), and
    // alpha on the return edge 1->0 against each y symbol.  Only the return
    // edge against y reading 0 mismatches, so the objective is exactly alpha.
    MarkovBoundProblem p = zero_run_problem(1);
    std::vector<double> mass(6, 0.0);
    double alpha = 1.0 / 6.0;
    for (int e = 0; e < 6; ++e) {
        auto [ex, ey] = p.product.edge_factors[static_cast<size_t>(e)];
        Symbol lx = p.product.x_label(e);
        Symbol ly = p.product.y_label(e);
        const Edge& xe = p.product.factor_x.edge(ex);
        (void)ey;
        if (xe.source == 0 && lx == 0 && ly == 0) mass[static_cast<size_t>(e)] = 2 * alpha;
        if (xe.source == 0 && lx == 1 && ly == 1) mass[static_cast<size_t>(e)] = 2 * alpha;
        if (xe.source == 1 && lx == 1) mass[static_cast<size_t>(e)] = alpha;
    }
    double total = 0.0, objective = 0.0;
    for (int r = 0; r < p.lp.row_count(); ++r) {
        double lhs = 0.0;
        for (size_t c = 0; c < mass.size(); ++c) lhs += p.lp.rows[static_cast<size_t>(r)][c] * mass[c];
        CHECK(lhs == doctest::Approx(p.lp.rhs[static_cast<size_t>(r)]).epsilon(1e-12));
    }
    for (size_t e = 0; e < mass.size(); ++e) {
        total += mass[e];
        if (p.is_mismatch[e]) objective += mass[e];
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(objective == doctest::Approx(analytic_0k(1)).epsilon(1e-12));
}

TEST_CASE("bound value ignores vertex numbering") {
    // The same system presented with vertices listed in the opposite order.
    LabeledGraph renamed(2, Alphabet(2), {{1, 0, 0}, {1, 1, 1}, {0, 1, 1}});
    ConstrainedSystem x = ConstrainedSystem::from_graph(renamed);
    MarkovBoundResult a = solve_bound(zero_run_problem(1));
    MarkovBoundResult b =
        solve_bound(formulate(x, build_full_shift(2), uniform_bernoulli(2)));
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
}

TEST_CASE("minimum-gap sandwich") {
    for (int d = 1; d <= 4; ++d) {
        DinftySandwich s = dinfty_sandwich(d);
        CHECK(s.lower <= s.lp_value + 1e-9);
        CHECK(s.lp_value <= s.upper + 1e-9);
        // The LP actually attains the upper end.
        CHECK(s.lp_value == doctest::Approx(s.upper).epsilon(1e-9));
    }
    CHECK(dinfty_sandwich(1).lp_value == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
}

TEST_CASE("an unsatisfiable variant raises the dedicated error") {
    // Doubling the normalization target contradicts the y-marginal rows,
    // whose fibers partition the unit mass.
    MarkovBoundProblem p = zero_run_problem(1);
    p.lp.rhs[0] = 2.0;
    CHECK_THROWS_AS(solve_bound(p), InfeasibleError);
}

}  // TEST_SUITE
