#include <cmath>
#include <vector>

#include <doctest.h>

#include "covrad/errors.hpp"
#include "covrad/lp.hpp"
#include "covrad/rng.hpp"
#include "oracles.hpp"

using namespace covrad;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_solution_consistency(const LinearProgram& lp, const LPSolution& sol) {
    REQUIRE(sol.status == LPStatus::Optimal);
    REQUIRE(sol.assignment.size() == static_cast<size_t>(lp.variable_count()));
    for (double x : sol.assignment) CHECK(x >= -1e-9);
    for (int r = 0; r < lp.row_count(); ++r) {
        CHECK(dot(lp.rows[static_cast<size_t>(r)], sol.assignment) ==
              doctest::Approx(lp.rhs[static_cast<size_t>(r)]).epsilon(1e-7));
    }
    CHECK(dot(lp.objective, sol.assignment) == doctest::Approx(sol.value).epsilon(1e-9));
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("textbook instances") {
    // min -x1 - 2 x2  s.t.  x1 + x2 = 1: put everything on x2.
    LinearProgram lp{{-1.0, -2.0}, {{1.0, 1.0}}, {1.0}};
    LPSolution sol = solve(lp);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.value == doctest::Approx(-2.0));
    CHECK(sol.assignment[0] == doctest::Approx(0.0));
    CHECK(sol.assignment[1] == doctest::Approx(1.0));
    check_solution_consistency(lp, sol);

    // Two constraints, transport-like.
    LinearProgram lp2{{1.0, 2.0, 3.0, 1.0},
                      {{1.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 1.0}},
                      {2.0, 3.0}};
    sol = solve(lp2);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.value == doctest::Approx(2.0 + 3.0));
    check_solution_consistency(lp2, sol);

    // Nonnegative objective over a single balance row: optimum sits at zero.
    LinearProgram lp3{{2.0, 1.0}, {{1.0, -1.0}}, {0.0}};
    sol = solve(lp3);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.value == doctest::Approx(0.0));
}

TEST_CASE("infeasible and unbounded detection") {
    // Nonnegative variables cannot sum to a negative number.
    LinearProgram bad{{1.0, 1.0}, {{1.0, 1.0}}, {-1.0}};
    CHECK(solve(bad).status == LPStatus::Infeasible);

    // Contradictory pair.
    LinearProgram bad2{{0.0, 0.0}, {{1.0, 1.0}, {1.0, 1.0}}, {1.0, 2.0}};
    CHECK(solve(bad2).status == LPStatus::Infeasible);

    // x1 = x2 is a ray along which -x1 falls without bound.
    LinearProgram ray{{-1.0, 0.0}, {{1.0, -1.0}}, {0.0}};
    CHECK(solve(ray).status == LPStatus::Unbounded);
}

TEST_CASE("degenerate and redundant rows") {
    // The same row twice: phase 1 must drop the copy, not declare failure.
    LinearProgram lp{{1.0, 1.0}, {{1.0, 1.0}, {1.0, 1.0}}, {1.0, 1.0}};
    LPSolution sol = solve(lp);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.value == doctest::Approx(1.0));

    // An all-zero row with zero right-hand side is vacuous.
    LinearProgram vac{{1.0}, {{0.0}, {1.0}}, {0.0, 2.0}};
    sol = solve(vac);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.value == doctest::Approx(2.0));

    // Degenerate vertex (zero basic variable) must not cycle under Bland's rule.
    LinearProgram degen{{1.0, 1.0, 0.0},
                        {{1.0, 0.0, 1.0}, {0.0, 1.0, 1.0}, {1.0, 1.0, 2.0}},
                        {1.0, 1.0, 2.0}};
    sol = solve(degen);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.value == doctest::Approx(0.0));
}

TEST_CASE("tiny pivots abort instead of dividing") {
    // The only way to improve is through a 1e-12 pivot, far below the floor.
    LinearProgram lp{{-1.0, 0.0}, {{1e-12, 1.0}}, {1.0}};
    CHECK_THROWS_AS(solve(lp), NumericalInstabilityError);
}

TEST_CASE("random feasible bounded instances match the vertex oracle") {
    RandomSource rng(99);
    int solved = 0;
    for (int trial = 0; trial < 50; ++trial) {
        int m = 2 + rng.next_int(2);
        int n = m + 2 + rng.next_int(3);
        LinearProgram lp;
        lp.objective.resize(static_cast<size_t>(n));
        // Nonnegative costs keep the minimum finite.
        for (auto& c : lp.objective) c = rng.next_int(5);
        // An identity block keeps the rows independent, so the vertex oracle
        // always has nonsingular bases to enumerate.
        lp.rows.assign(static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(n), 0.0));
        for (int r = 0; r < m; ++r) {
            lp.rows[static_cast<size_t>(r)][static_cast<size_t>(r)] = 1.0;
            for (int c = m; c < n; ++c) {
                lp.rows[static_cast<size_t>(r)][static_cast<size_t>(c)] = rng.next_int(7) - 3;
            }
        }
        // Feasible by construction: b is the image of a nonnegative point.
        std::vector<double> x0(static_cast<size_t>(n));
        for (auto& v : x0) v = rng.next_int(4);
        lp.rhs.resize(static_cast<size_t>(m));
        for (int r = 0; r < m; ++r) lp.rhs[static_cast<size_t>(r)] = dot(lp.rows[static_cast<size_t>(r)], x0);

        LPSolution sol = solve(lp);
        REQUIRE(sol.status == LPStatus::Optimal);
        check_solution_consistency(lp, sol);
        oracles::VertexSolveResult expected = oracles::lp_vertex_solve(lp);
        REQUIRE(expected.feasible);
        CHECK(sol.value == doctest::Approx(expected.value).epsilon(1e-6));
        ++solved;
    }
    CHECK(solved == 50);
}

TEST_CASE("repeated solves are bitwise identical") {
    LinearProgram lp{{1.0, 0.5, 2.0, 0.0},
                     {{1.0, 1.0, 1.0, 1.0}, {1.0, -1.0, 0.0, 2.0}},
                     {1.0, 0.5}};
    LPSolution first = solve(lp);
    for (int rep = 0; rep < 3; ++rep) {
        LPSolution again = solve(lp);
        CHECK(again.status == first.status);
        CHECK(again.value == first.value);
        CHECK(again.assignment == first.assignment);
    }
}

}  // TEST_SUITE
