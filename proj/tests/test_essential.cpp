#include <cmath>
#include <vector>

#include <doctest.h>

#include "covrad/essential.hpp"
#include "covrad/graph.hpp"
#include "covrad/markov.hpp"
#include "covrad/quantizer.hpp"
#include "covrad/rng.hpp"

using namespace covrad;

TEST_SUITE("essential") {

TEST_CASE("estimator input validation") {
    ConstrainedSystem x = build_rll_0k(1);
    MarkovChain mu = uniform_bernoulli(2);
    CHECK_THROWS_AS(estimate_eps_radius(x, mu, 0, 10, 0.1, 1), InputError);
    CHECK_THROWS_AS(estimate_eps_radius(x, mu, 5, 1, 0.1, 1), InputError);
    CHECK_THROWS_AS(estimate_eps_radius(x, mu, 5, 10, 1.0, 1), InputError);
    CHECK_THROWS_AS(estimate_eps_radius(x, mu, 5, 10, -0.1, 1), InputError);
    CHECK_THROWS_AS(estimate_eps_radius(x, uniform_bernoulli(3), 5, 10, 0.1, 1), InputError);
}

TEST_CASE("estimates are reproducible and schedule-independent") {
    ConstrainedSystem x = build_rll_0k(1);
    MarkovChain mu = uniform_bernoulli(2);
    EpsRadiusEstimate a = estimate_eps_radius(x, mu, 50, 100, 0.1, 77, 1);
    EpsRadiusEstimate b = estimate_eps_radius(x, mu, 50, 100, 0.1, 77, 1);
    EpsRadiusEstimate c = estimate_eps_radius(x, mu, 50, 100, 0.1, 77, 4);
    CHECK(a.quantile_radius == b.quantile_radius);
    CHECK(a.mean_normalized == b.mean_normalized);
    CHECK(a.std_error == b.std_error);
    CHECK(a.quantile_radius == c.quantile_radius);
    CHECK(a.mean_normalized == c.mean_normalized);
    CHECK(a.std_error == c.std_error);
    CHECK(a.seed == 77);
    CHECK(a.n == 50);
    CHECK(a.samples == 100);

    EpsRadiusEstimate other = estimate_eps_radius(x, mu, 50, 100, 0.1, 78, 1);
    CHECK(other.quantile_radius + other.mean_normalized !=
          a.quantile_radius + a.mean_normalized);
}

TEST_CASE("quantile is monotone in eps and consistent with the mean") {
    ConstrainedSystem x = build_rll_0k(2);
    MarkovChain mu = uniform_bernoulli(2);
    EpsRadiusEstimate tight = estimate_eps_radius(x, mu, 80, 400, 0.0, 5);
    EpsRadiusEstimate mid = estimate_eps_radius(x, mu, 80, 400, 0.2, 5);
    EpsRadiusEstimate loose = estimate_eps_radius(x, mu, 80, 400, 0.6, 5);
    CHECK(tight.quantile_radius >= mid.quantile_radius);
    CHECK(mid.quantile_radius >= loose.quantile_radius);
    // The full-sample maximum dominates the mean.
    CHECK(tight.normalized >= tight.mean_normalized);
    CHECK(tight.normalized == doctest::Approx(static_cast<double>(tight.quantile_radius) / 80));
}

TEST_CASE("sampled radii never exceed the exhaustive covering radius") {
    ConstrainedSystem x = build_repetition(2);
    ConstrainedSystem full = build_full_shift(2);
    int n = 11;
    int exact = covering_radius_exact(x, full, n).radius;
    EpsRadiusEstimate est = estimate_eps_radius(x, uniform_bernoulli(2), n, 500, 0.0, 13);
    CHECK(est.quantile_radius <= exact);
    // Half the mass sits well inside the worst case.
    EpsRadiusEstimate median = estimate_eps_radius(x, uniform_bernoulli(2), n, 500, 0.5, 13);
    CHECK(median.quantile_radius <= est.quantile_radius);
}

TEST_CASE("analytic essential radius of the zero-run systems") {
    CHECK(analytic_essential_0k(1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(analytic_essential_0k(2) == doctest::Approx(1.0 / 14.0).epsilon(1e-15));
    CHECK(analytic_essential_0k(3) == doctest::Approx(1.0 / 30.0).epsilon(1e-15));
    CHECK_THROWS_AS(analytic_essential_0k(0), InputError);
    CHECK_THROWS_AS(analytic_essential_0k(61), InputError);
}

TEST_CASE("the Monte Carlo estimate approaches the analytic value") {
    // At n = 2000 the per-word mismatch fraction concentrates tightly around
    // the limit, so even a median over 60 samples lands nearby.
    ConstrainedSystem x = build_rll_0k(1);
    EpsRadiusEstimate est = estimate_eps_radius(x, uniform_bernoulli(2), 2000, 60, 0.5, 2025);
    CHECK(std::fabs(est.normalized - analytic_essential_0k(1)) < 0.02);
    CHECK(std::fabs(est.mean_normalized - analytic_essential_0k(1)) < 0.02);
    CHECK(est.std_error > 0.0);
    CHECK(est.std_error < 0.01);
}

TEST_CASE("sliding-block rule application") {
    SlidingBlockRule parity{1, 1, 2, 2,
                            [](std::span<const Symbol> w) { return (w[0] + w[1] + w[2]) % 2; }};
    SlidingBlockImage img = apply_sliding_block(parity, {1, 0, 1, 1});
    REQUIRE(img.image.size() == 2);
    CHECK(img.image[0] == 0);   // 1+0+1, agrees with the input 0
    CHECK(img.image[1] == 0);   // 0+1+1, flips the input 1
    CHECK(img.mismatches == 1);

    CHECK_THROWS_AS(apply_sliding_block(parity, {1, 0}), InputError);
    CHECK_THROWS_AS(apply_sliding_block(parity, {1, 0, 2, 1}), InputError);

    SlidingBlockRule broken{0, 0, 2, 2, [](std::span<const Symbol>) { return 5; }};
    CHECK_THROWS_AS(apply_sliding_block(broken, {0, 1}), InputError);
}

TEST_CASE("window rule output stays inside the zero-run language") {
    RandomSource rng(4242);
    for (int k : {1, 2}) {
        ConstrainedSystem x = build_rll_0k(k);
        for (int N : {1, 2}) {
            SlidingBlockRule rule = rll0k_rule(k, N);
            CHECK(rule.look_back == N * (k + 1) - 1);
            CHECK(rule.look_ahead == 0);
            for (int trial = 0; trial < 40; ++trial) {
                Word y(200);
                for (auto& s : y) s = rng.next_int(2);
                SlidingBlockImage img = apply_sliding_block(rule, y);
                CHECK(contains(x.presentation(), img.image));
                // Direct recount of the mismatches.
                long long diff = 0;
                for (size_t i = 0; i < img.image.size(); ++i) {
                    diff += img.image[i] != y[i + static_cast<size_t>(rule.look_back)];
                }
                CHECK(diff == img.mismatches);
            }
        }
    }
    CHECK_THROWS_AS(rll0k_rule(0, 1), InputError);
    CHECK_THROWS_AS(rll0k_rule(1, 0), InputError);
}

TEST_CASE("window rule mismatch formula") {
    CHECK(rll0k_rule_mismatch_rate(1, 1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(rll0k_rule_mismatch_rate(1, 2) == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(rll0k_rule_mismatch_rate(1, 3) == doctest::Approx(11.0 / 64.0).epsilon(1e-15));
    CHECK(rll0k_rule_mismatch_rate(2, 1) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(rll0k_rule_mismatch_rate(2, 2) == doctest::Approx(0.078125).epsilon(1e-15));
    CHECK(rll0k_rule_mismatch_rate(2, 3) == doctest::Approx(0.072265625).epsilon(1e-15));

    // Larger windows only help, and the limit is the analytic radius.
    for (int k : {1, 2, 3}) {
        double previous = 1.0;
        for (int N = 1; N <= 12; ++N) {
            double rate = rll0k_rule_mismatch_rate(k, N);
            CHECK(rate < previous);
            CHECK(rate > analytic_essential_0k(k));
            previous = rate;
        }
        CHECK(previous == doctest::Approx(analytic_essential_0k(k)).epsilon(1e-4));
    }
}

TEST_CASE("empirical mismatch rate matches the formula") {
    SlidingBlockRule rule = rll0k_rule(1, 3);
    MismatchEstimate est = estimate_sbc_mismatch(rule, uniform_bernoulli(2), 20000, 30, 99);
    double expected = rll0k_rule_mismatch_rate(1, 3);
    CHECK(std::fabs(est.rate - expected) < 3.0 * est.std_error + 1e-12);
    CHECK(est.std_error > 0.0);
    CHECK(est.std_error < 0.01);

    MismatchEstimate again = estimate_sbc_mismatch(rule, uniform_bernoulli(2), 20000, 30, 99);
    CHECK(est.rate == again.rate);
    CHECK(est.std_error == again.std_error);

    CHECK_THROWS_AS(estimate_sbc_mismatch(rule, uniform_bernoulli(2), 20000, 1, 99), InputError);
    CHECK_THROWS_AS(estimate_sbc_mismatch(rule, uniform_bernoulli(3), 20000, 30, 99), InputError);
}

}  // TEST_SUITE
