#include "covrad/markov_bound.hpp"

#include <cmath>
#include <string>

namespace covrad {

namespace {

bool same_presentation(const LabeledGraph& a, const LabeledGraph& b) {
    if (a.vertex_count() != b.vertex_count()) return false;
    if (a.alphabet_size() != b.alphabet_size()) return false;
    if (a.edge_count() != b.edge_count()) return false;
    for (int id = 0; id < a.edge_count(); ++id) {
        const Edge& ea = a.edge(id);
        const Edge& eb = b.edge(id);
        if (ea.source != eb.source || ea.target != eb.target || ea.label != eb.label) {
            return false;
        }
    }
    return true;
}

}  // namespace

MarkovBoundProblem formulate(const ConstrainedSystem& x, const ConstrainedSystem& y,
                             const MarkovChain& py) {
    if (x.alphabet_size() != y.alphabet_size()) {
        throw InputError("the bound needs matching alphabets");
    }
    if (!same_presentation(py.graph(), y.presentation())) {
        throw InputError("the measure is not a chain on y's presentation");
    }

    ProductGraph product = product_graph(x.presentation(), y.presentation());
    const LabeledGraph& gx = product.factor_x;
    const LabeledGraph& gy = product.factor_y;
    int vars = product.graph.edge_count();

    LinearProgram lp;
    lp.objective.assign(static_cast<size_t>(vars), 0.0);
    std::vector<char> mismatch(static_cast<size_t>(vars), 0);
    for (int e = 0; e < vars; ++e) {
        if (product.x_label(e) != product.y_label(e)) {
            mismatch[static_cast<size_t>(e)] = 1;
            lp.objective[static_cast<size_t>(e)] = 1.0;
        }
    }

    auto fresh_row = [&]() { return std::vector<double>(static_cast<size_t>(vars), 0.0); };

    // Normalization.
    lp.rows.push_back(std::vector<double>(static_cast<size_t>(vars), 1.0));
    lp.rhs.push_back(1.0);

    // Y-marginal, one row per Y edge.
    for (int ey = 0; ey < gy.edge_count(); ++ey) {
        auto row = fresh_row();
        for (int e = 0; e < vars; ++e) {
            if (product.edge_factors[static_cast<size_t>(e)].second == ey) {
                row[static_cast<size_t>(e)] = 1.0;
            }
        }
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(py.edge_probabilities()[static_cast<size_t>(ey)]);
    }

    // Stationarity at every product vertex.  Self-loops cancel to zero.
    for (int v = 0; v < product.graph.vertex_count(); ++v) {
        auto row = fresh_row();
        for (int id : product.graph.out_edges(v)) row[static_cast<size_t>(id)] += 1.0;
        for (int id : product.graph.in_edges(v)) row[static_cast<size_t>(id)] -= 1.0;
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(0.0);
    }

    // Conditional marginal, one row per (X vertex, Y edge) pair.
    for (int sx = 0; sx < gx.vertex_count(); ++sx) {
        for (int ey = 0; ey < gy.edge_count(); ++ey) {
            if (py.edge_probabilities()[static_cast<size_t>(ey)] <= 0.0) continue;
            double q = py.conditional_probabilities()[static_cast<size_t>(ey)];
            int sy = gy.edge(ey).source;
            auto row = fresh_row();
            for (int e = 0; e < vars; ++e) {
                auto [ex2, ey2] = product.edge_factors[static_cast<size_t>(e)];
                if (gx.edge(ex2).source != sx) continue;
                if (ey2 == ey) row[static_cast<size_t>(e)] += 1.0;
                if (gy.edge(ey2).source == sy) row[static_cast<size_t>(e)] -= q;
            }
            lp.rows.push_back(std::move(row));
            lp.rhs.push_back(0.0);
        }
    }

    return MarkovBoundProblem{std::move(product), py, std::move(lp), std::move(mismatch)};
}

MarkovBoundResult solve_bound(const MarkovBoundProblem& problem) {
    LPSolution sol = solve(problem.lp);
    if (sol.status == LPStatus::Infeasible) {
        throw InfeasibleError(
            "no Markov-extension bound is available from these presentations");
    }
    if (sol.status == LPStatus::Unbounded) {
        // Impossible for a mass-normalized nonnegative objective.
        throw NumericalInstabilityError("bound LP claimed to be unbounded");
    }

    int replayed = 0;
    for (size_t r = 0; r < problem.lp.rows.size(); ++r) {
        double lhs = 0.0;
        for (size_t c = 0; c < sol.assignment.size(); ++c) {
            lhs += problem.lp.rows[r][c] * sol.assignment[c];
        }
        if (std::abs(lhs - problem.lp.rhs[r]) > 1e-8) {
            throw NumericalInstabilityError("optimizer fails constraint row " +
                                            std::to_string(r) + " on replay");
        }
        ++replayed;
    }

    MarkovChain chain = markov_from_edge_probs(problem.product.graph, sol.assignment);
    return MarkovBoundResult{sol.value, std::move(chain), replayed};
}

DinftySandwich dinfty_sandwich(int d) {
    ConstrainedSystem x = build_rll_d_inf(d);
    ConstrainedSystem y = build_full_shift(2);
    MarkovChain py = uniform_bernoulli(2);
    MarkovBoundResult result = solve_bound(formulate(x, y, py));

    DinftySandwich s;
    s.d = d;
    s.lower = 0.5 - 1.0 / (d + 1);
    s.upper = d / (2.0 * (d + 2));
    s.lp_value = result.value;
    if (s.lp_value < s.lower - 1e-9 || s.lp_value > s.upper + 1e-9) {
        throw Error("d,infinity bound fell outside its analytic sandwich");
    }
    return s;
}

}  // namespace covrad
