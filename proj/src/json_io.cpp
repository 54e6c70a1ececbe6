#include "covrad/json_io.hpp"

#include <cstdio>

namespace covrad {

json graph_to_json(const LabeledGraph& g) {
    json j;
    j["q"] = g.alphabet_size();
    j["vertices"] = g.vertex_count();
    json edges = json::array();
    for (int id : canonical_edge_order(g)) {
        const Edge& e = g.edge(id);
        edges.push_back(json::array({e.source, e.target, e.label}));
    }
    j["edges"] = std::move(edges);
    return j;
}

LabeledGraph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("q") || !j.contains("vertices") || !j.contains("edges")) {
        throw InputError("graph JSON needs q, vertices and edges fields");
    }
    if (!j["q"].is_number_integer() || !j["vertices"].is_number_integer() ||
        !j["edges"].is_array()) {
        throw InputError("graph JSON field has the wrong type");
    }
    std::vector<Edge> edges;
    for (const auto& entry : j["edges"]) {
        if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
            !entry[1].is_number_integer() || !entry[2].is_number_integer()) {
            throw InputError("each edge must be a [source, target, label] triple");
        }
        edges.push_back({entry[0].get<int>(), entry[1].get<int>(), entry[2].get<Symbol>()});
    }
    return LabeledGraph(j["vertices"].get<int>(), Alphabet(j["q"].get<int>()),
                        std::move(edges));
}

json chain_to_json(const MarkovChain& mc) {
    json j = graph_to_json(mc.graph());
    json probs = json::array();
    for (int id : canonical_edge_order(mc.graph())) {
        probs.push_back(mc.edge_probabilities()[static_cast<size_t>(id)]);
    }
    j["edge_probs"] = std::move(probs);
    return j;
}

MarkovChain chain_from_json(const nlohmann::json& j) {
    LabeledGraph g = graph_from_json(j);
    if (!j.contains("edge_probs") || !j["edge_probs"].is_array()) {
        throw InputError("chain JSON needs an edge_probs array");
    }
    std::vector<double> probs;
    for (const auto& entry : j["edge_probs"]) {
        if (!entry.is_number()) throw InputError("edge_probs entries must be numbers");
        probs.push_back(entry.get<double>());
    }
    return markov_from_edge_probs(g, probs);
}

json report_to_json(const CoveringRadiusReport& report) {
    json j;
    j["n"] = report.n;
    j["radius"] = report.radius;
    j["normalized"] = report.normalized;
    json holes = json::array();
    for (const Word& w : report.deep_holes) holes.push_back(w);
    j["deep_holes"] = std::move(holes);
    j["method"] = report.method;
    return j;
}

json estimate_to_json(const EpsRadiusEstimate& est) {
    json j;
    j["n"] = est.n;
    j["samples"] = est.samples;
    j["eps"] = est.eps;
    j["quantile_radius"] = est.quantile_radius;
    j["normalized"] = est.normalized;
    j["mean_normalized"] = est.mean_normalized;
    j["std_error"] = est.std_error;
    j["seed"] = est.seed;
    return j;
}

std::string estimate_csv_header() {
    return "n,samples,eps,quantile_radius,normalized,mean_normalized,std_error,seed";
}

std::string estimate_csv_row(const EpsRadiusEstimate& est) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d,%d,%.12g,%d,%.12g,%.12g,%.12g,%llu", est.n,
                  est.samples, est.eps, est.quantile_radius, est.normalized,
                  est.mean_normalized, est.std_error,
                  static_cast<unsigned long long>(est.seed));
    return buf;
}

json lp_to_json(const LinearProgram& lp) {
    json j;
    j["variables"] = lp.variable_count();
    j["objective"] = lp.objective;
    json rows = json::array();
    for (size_t r = 0; r < lp.rows.size(); ++r) {
        rows.push_back(json{{"coefficients", lp.rows[r]}, {"rhs", lp.rhs[r]}});
    }
    j["rows"] = std::move(rows);
    return j;
}

}  // namespace covrad
