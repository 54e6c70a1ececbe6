#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "covrad/essential.hpp"
#include "covrad/graph.hpp"
#include "covrad/lp.hpp"
#include "covrad/markov.hpp"
#include "covrad/quantizer.hpp"

namespace covrad {

using json = nlohmann::ordered_json;

// {"q": ..., "vertices": ..., "edges": [[source, target, label], ...]} with
// edges written in canonical (source, label, target) order.  Readers accept
// any edge order; edge ids then follow the stored order.
json graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const nlohmann::json& j);

// Graph fields plus "edge_probs", aligned with the canonical edge order.
json chain_to_json(const MarkovChain& mc);
MarkovChain chain_from_json(const nlohmann::json& j);

json report_to_json(const CoveringRadiusReport& report);

json estimate_to_json(const EpsRadiusEstimate& est);
std::string estimate_csv_header();
std::string estimate_csv_row(const EpsRadiusEstimate& est);

// Debug dump of a program in the solver's min c.x, Ax = b, x >= 0 form.
json lp_to_json(const LinearProgram& lp);

}  // namespace covrad
