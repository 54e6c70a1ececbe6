#include "cli.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "covrad/essential.hpp"
#include "covrad/graph.hpp"
#include "covrad/json_io.hpp"
#include "covrad/markov_bound.hpp"
#include "covrad/qcc.hpp"
#include "covrad/quantizer.hpp"
#include "covrad/rng.hpp"

namespace covrad::cli {

namespace {

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

// System registry: rll0k:K, dinf:D, rep:Q, full:Q, file:PATH.
ConstrainedSystem parse_system(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw InputError("system spec needs the form kind:argument");
    }
    std::string kind = spec.substr(0, colon);
    std::string arg = spec.substr(colon + 1);
    if (kind == "file") {
        return ConstrainedSystem::from_graph(graph_from_json(read_json_file(arg)));
    }
    int value = 0;
    try {
        value = std::stoi(arg);
    } catch (const std::exception&) {
        throw InputError("system spec argument must be an integer: " + spec);
    }
    if (kind == "rll0k") return build_rll_0k(value);
    if (kind == "dinf") return build_rll_d_inf(value);
    if (kind == "rep") return build_repetition(value);
    if (kind == "full") return build_full_shift(value);
    throw InputError("unknown system kind: " + kind);
}

// Code registry: rep:Q:N, table:PATH (JSON {"q": ..., "codewords": [[...]]}).
BlockCode parse_code(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw InputError("code spec needs the form kind:argument");
    }
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    if (kind == "rep") {
        auto second = rest.find(':');
        if (second == std::string::npos) {
            throw InputError("repetition code spec is rep:q:n");
        }
        try {
            return make_repetition_code(std::stoi(rest.substr(0, second)),
                                        std::stoi(rest.substr(second + 1)));
        } catch (const std::invalid_argument&) {
            throw InputError("repetition code spec is rep:q:n");
        }
    }
    if (kind == "table") {
        nlohmann::json j = read_json_file(rest);
        if (!j.contains("q") || !j.contains("codewords") || !j["codewords"].is_array()) {
            throw InputError("code table JSON needs q and codewords fields");
        }
        std::vector<Word> words;
        for (const auto& entry : j["codewords"]) {
            words.push_back(entry.get<Word>());
        }
        return make_table_code(j["q"].get<int>(), std::move(words));
    }
    throw InputError("unknown code kind: " + kind);
}

// Measure registry: "uniform" (i.i.d. over the target alphabet), file:PATH.
MarkovChain parse_measure(const std::string& spec, int q) {
    if (spec == "uniform") return uniform_bernoulli(q);
    if (spec.rfind("file:", 0) == 0) {
        return chain_from_json(read_json_file(spec.substr(5)));
    }
    throw InputError("unknown measure spec: " + spec);
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw InputError("cannot write " + out_path);
        f << text << "\n";
    }
}

void emit_json(const json& j, const std::string& out_path, std::ostream& out) {
    emit(j.dump(2), out_path, out);
}

struct CommonOptions {
    std::string out_path;
    std::string format = "json";
};

void add_output_options(CLI::App* cmd, CommonOptions* common, bool with_format) {
    cmd->add_option("--out", common->out_path, "write the result to a file instead of stdout");
    if (with_format) {
        cmd->add_option("--format", common->format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
    }
}

json curve_to_json(const std::vector<CurvePoint>& curve) {
    json rows = json::array();
    for (const CurvePoint& p : curve) {
        rows.push_back(json{{"n", p.n}, {"radius", p.radius}, {"normalized", p.normalized}});
    }
    return rows;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"covering radii and quantization for constrained systems"};
    app.require_subcommand(1);

    // ------------------------------------------------------------- radius
    auto* radius = app.add_subcommand("radius", "covering radii of B_n(X) inside B_n(Y)");
    radius->require_subcommand(1);

    struct {
        std::string system;
        std::string wrt = "auto";
        int n = 0;
        int n_max = 0;
        long long cap = 1LL << 22;
        int threads = 0;
        CommonOptions common;
    } rad;

    auto resolve_wrt = [](const std::string& spec, const ConstrainedSystem& x) {
        if (spec == "auto") return build_full_shift(x.alphabet_size());
        return parse_system(spec);
    };

    auto* rad_exact = radius->add_subcommand("exact", "exhaustive covering radius at one n");
    rad_exact->add_option("--system", rad.system, "constrained system X")->required();
    rad_exact->add_option("--wrt", rad.wrt, "ambient system Y (default: full shift on X's alphabet)");
    rad_exact->add_option("--n", rad.n, "word length")->required();
    rad_exact->add_option("--cap", rad.cap, "language enumeration cap");
    rad_exact->add_option("--threads", rad.threads, "worker threads (default: COVRAD_THREADS or 1)");
    add_output_options(rad_exact, &rad.common, false);
    rad_exact->callback([&] {
        ConstrainedSystem x = parse_system(rad.system);
        ConstrainedSystem y = resolve_wrt(rad.wrt, x);
        CoveringRadiusReport report = covering_radius_exact(x, y, rad.n, rad.cap, rad.threads);
        json j;
        j["command"] = "radius exact";
        j["config"] = {{"system", rad.system}, {"wrt", rad.wrt},   {"n", rad.n},
                       {"cap", rad.cap},       {"threads", rad.threads}};
        j["report"] = report_to_json(report);
        emit_json(j, rad.common.out_path, out);
    });

    auto* rad_curve = radius->add_subcommand("curve", "covering radii for every n up to a limit");
    rad_curve->add_option("--system", rad.system, "constrained system X")->required();
    rad_curve->add_option("--wrt", rad.wrt, "ambient system Y (default: full shift on X's alphabet)");
    rad_curve->add_option("--nmax", rad.n_max, "largest word length")->required();
    rad_curve->add_option("--cap", rad.cap, "language enumeration cap");
    rad_curve->add_option("--threads", rad.threads, "worker threads (default: COVRAD_THREADS or 1)");
    add_output_options(rad_curve, &rad.common, true);
    rad_curve->callback([&] {
        ConstrainedSystem x = parse_system(rad.system);
        ConstrainedSystem y = resolve_wrt(rad.wrt, x);
        std::vector<CurvePoint> curve =
            covering_radius_upper_curve(x, y, rad.n_max, rad.cap, rad.threads);
        if (rad.common.format == "csv") {
            std::ostringstream csv;
            csv << "n,radius,normalized";
            for (const CurvePoint& p : curve) {
                csv << "\n" << p.n << "," << p.radius << "," << p.normalized;
            }
            emit(csv.str(), rad.common.out_path, out);
            return;
        }
        json j;
        j["command"] = "radius curve";
        j["config"] = {{"system", rad.system}, {"wrt", rad.wrt},   {"nmax", rad.n_max},
                       {"cap", rad.cap},       {"threads", rad.threads}};
        j["curve"] = curve_to_json(curve);
        emit_json(j, rad.common.out_path, out);
    });

    auto* rad_lower = radius->add_subcommand("lower", "sphere-covering lower bound");
    rad_lower->add_option("--system", rad.system, "constrained system X")->required();
    rad_lower->add_option("--wrt", rad.wrt, "ambient system Y (default: full shift on X's alphabet)");
    add_output_options(rad_lower, &rad.common, false);
    rad_lower->callback([&] {
        ConstrainedSystem x = parse_system(rad.system);
        ConstrainedSystem y = resolve_wrt(rad.wrt, x);
        json j;
        j["command"] = "radius lower";
        j["config"] = {{"system", rad.system}, {"wrt", rad.wrt}};
        j["capacity_x"] = capacity_determinized(x);
        j["capacity_y"] = capacity_determinized(y);
        j["lower_bound"] = sphere_covering_lower_bound(x, y);
        emit_json(j, rad.common.out_path, out);
    });

    // ---------------------------------------------------------- essential
    struct {
        std::string system;
        std::string measure = "uniform";
        int n = 0;
        int samples = 0;
        double eps = 0.0;
        std::uint64_t seed = 0;
        int threads = 0;
        CommonOptions common;
    } ess;

    auto* essential = app.add_subcommand("essential", "Monte Carlo eps-covering radius");
    essential->add_option("--system", ess.system, "constrained system X")->required();
    essential->add_option("--measure", ess.measure, "word measure on the ambient full shift");
    essential->add_option("--n", ess.n, "word length")->required();
    essential->add_option("--samples", ess.samples, "sample count")->required();
    essential->add_option("--eps", ess.eps, "mass allowed outside the radius")->required();
    essential->add_option("--seed", ess.seed, "RNG seed")->required();
    essential->add_option("--threads", ess.threads, "worker threads (default: COVRAD_THREADS or 1)");
    add_output_options(essential, &ess.common, true);
    essential->callback([&] {
        ConstrainedSystem x = parse_system(ess.system);
        MarkovChain mu = parse_measure(ess.measure, x.alphabet_size());
        EpsRadiusEstimate est =
            estimate_eps_radius(x, mu, ess.n, ess.samples, ess.eps, ess.seed, ess.threads);
        if (ess.common.format == "csv") {
            emit(estimate_csv_header() + "\n" + estimate_csv_row(est), ess.common.out_path, out);
            return;
        }
        json j;
        j["command"] = "essential";
        j["config"] = {{"system", ess.system},   {"measure", ess.measure},
                       {"n", ess.n},             {"samples", ess.samples},
                       {"eps", ess.eps},         {"seed", ess.seed},
                       {"threads", ess.threads}};
        j["estimate"] = estimate_to_json(est);
        if (ess.system.rfind("rll0k:", 0) == 0) {
            j["analytic_limit"] = analytic_essential_0k(std::stoi(ess.system.substr(6)));
        }
        emit_json(j, ess.common.out_path, out);
    });

    // ---------------------------------------------------------------- sbc
    struct {
        int k = 1;
        int N = 1;
        int n = 0;
        int samples = 0;
        std::uint64_t seed = 0;
        CommonOptions common;
    } sbc;

    auto* sbc_cmd = app.add_subcommand("sbc", "sliding-block quantizer mismatch rate");
    sbc_cmd->add_option("--k", sbc.k, "zero-run limit of the target system")->required();
    sbc_cmd->add_option("--N", sbc.N, "window multiplier")->required();
    sbc_cmd->add_option("--n", sbc.n, "sample word length")->required();
    sbc_cmd->add_option("--samples", sbc.samples, "sample count")->required();
    sbc_cmd->add_option("--seed", sbc.seed, "RNG seed")->required();
    add_output_options(sbc_cmd, &sbc.common, false);
    sbc_cmd->callback([&] {
        SlidingBlockRule rule = rll0k_rule(sbc.k, sbc.N);
        MismatchEstimate est =
            estimate_sbc_mismatch(rule, uniform_bernoulli(2), sbc.n, sbc.samples, sbc.seed);
        json j;
        j["command"] = "sbc";
        j["config"] = {{"k", sbc.k}, {"N", sbc.N},       {"n", sbc.n},
                       {"samples", sbc.samples}, {"seed", sbc.seed}};
        j["look_back"] = rule.look_back;
        j["analytic_rate"] = rll0k_rule_mismatch_rate(sbc.k, sbc.N);
        j["analytic_limit"] = analytic_essential_0k(sbc.k);
        j["estimate"] = {{"rate", est.rate}, {"std_error", est.std_error}};
        emit_json(j, sbc.common.out_path, out);
    });

    // -------------------------------------------------------------- bound
    struct {
        std::string system;
        std::string wrt = "auto";
        std::string measure = "uniform";
        CommonOptions common;
    } bnd;

    auto* bound = app.add_subcommand("bound", "provable upper bounds");
    bound->require_subcommand(1);
    auto* bound_markov = bound->add_subcommand("markov", "stationary-coupling LP bound");
    bound_markov->add_option("--system", bnd.system, "constrained system X")->required();
    bound_markov->add_option("--wrt", bnd.wrt, "ambient system Y (default: full shift on X's alphabet)");
    bound_markov->add_option("--measure", bnd.measure, "chain on Y's presentation");
    add_output_options(bound_markov, &bnd.common, false);
    bound_markov->callback([&] {
        ConstrainedSystem x = parse_system(bnd.system);
        ConstrainedSystem y = resolve_wrt(bnd.wrt, x);
        MarkovChain py = parse_measure(bnd.measure, y.alphabet_size());
        MarkovBoundResult result = solve_bound(formulate(x, y, py));
        json j;
        j["command"] = "bound markov";
        j["config"] = {{"system", bnd.system}, {"wrt", bnd.wrt}, {"measure", bnd.measure}};
        j["value"] = result.value;
        j["constraints_checked"] = result.constraints_checked;
        j["chain"] = chain_to_json(result.chain);
        emit_json(j, bnd.common.out_path, out);
    });

    // ---------------------------------------------------------------- qcc
    struct {
        std::string system;
        std::string code;
        int message = 0;
        int errors = 0;
        std::string positions;
        int trials = 0;
        int max_weight = 0;
        std::uint64_t seed = 0;
        CommonOptions common;
    } qcc;

    auto* qcc_cmd = app.add_subcommand("qcc", "quantize-then-code experiments");
    qcc_cmd->require_subcommand(1);

    auto* qcc_run = qcc_cmd->add_subcommand("run", "one encode/quantize/corrupt/decode pass");
    qcc_run->add_option("--system", qcc.system, "constrained system X")->required();
    qcc_run->add_option("--code", qcc.code, "block code (rep:q:n or table:file)")->required();
    qcc_run->add_option("--message", qcc.message, "codeword index to send");
    auto* opt_errors =
        qcc_run->add_option("--errors", qcc.errors, "number of random channel errors");
    auto* opt_positions = qcc_run->add_option(
        "--positions", qcc.positions, "comma-separated channel error positions");
    opt_errors->excludes(opt_positions);
    qcc_run->add_option("--seed", qcc.seed, "RNG seed")->required();
    add_output_options(qcc_run, &qcc.common, false);
    qcc_run->callback([&] {
        ConstrainedSystem x = parse_system(qcc.system);
        BlockCode code = parse_code(qcc.code);
        std::vector<int> positions;
        if (!qcc.positions.empty()) {
            std::stringstream ss(qcc.positions);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    positions.push_back(std::stoi(item));
                } catch (const std::exception&) {
                    throw InputError("positions must be integers");
                }
            }
        } else {
            if (qcc.errors < 0 || qcc.errors > code.length()) {
                throw InputError("error count must lie in [0, n]");
            }
            // Draw a uniform position set from the seed, then spend the rest
            // of the stream on the flips inside qcc_transmit.
            RandomSource rng(derive_seed(qcc.seed, 0));
            std::vector<int> all(static_cast<size_t>(code.length()));
            for (int i = 0; i < code.length(); ++i) all[static_cast<size_t>(i)] = i;
            for (int i = 0; i < qcc.errors; ++i) {
                int j = i + rng.next_int(code.length() - i);
                std::swap(all[static_cast<size_t>(i)], all[static_cast<size_t>(j)]);
            }
            positions.assign(all.begin(), all.begin() + qcc.errors);
        }
        QccRun run_result = qcc_transmit(code, x, qcc.message, positions, qcc.seed);
        json j;
        j["command"] = "qcc run";
        j["config"] = {{"system", qcc.system},   {"code", qcc.code},
                       {"message", qcc.message}, {"positions", positions},
                       {"seed", qcc.seed}};
        j["run"] = {{"message", run_result.message},
                    {"codeword", run_result.codeword},
                    {"quantized", run_result.quantized},
                    {"received", run_result.received},
                    {"quantization_distance", run_result.quantization_distance},
                    {"channel_errors", run_result.channel_errors},
                    {"decoded", run_result.decoded},
                    {"success", run_result.success}};
        emit_json(j, qcc.common.out_path, out);
    });

    auto* qcc_sweep = qcc_cmd->add_subcommand("sweep", "success rate across channel weights");
    qcc_sweep->add_option("--system", qcc.system, "constrained system X")->required();
    qcc_sweep->add_option("--code", qcc.code, "block code (rep:q:n or table:file)")->required();
    qcc_sweep->add_option("--trials", qcc.trials, "trials per weight")->required();
    qcc_sweep->add_option("--max-weight", qcc.max_weight, "largest channel weight")->required();
    qcc_sweep->add_option("--seed", qcc.seed, "RNG seed")->required();
    add_output_options(qcc_sweep, &qcc.common, true);
    qcc_sweep->callback([&] {
        ConstrainedSystem x = parse_system(qcc.system);
        BlockCode code = parse_code(qcc.code);
        std::vector<QccSummary> sweep;
        for (int w = 0; w <= qcc.max_weight; ++w) {
            sweep.push_back(qcc_experiment(code, x, qcc.trials, w,
                                           derive_seed(qcc.seed, static_cast<std::uint64_t>(w))));
        }
        if (qcc.common.format == "csv") {
            std::ostringstream csv;
            csv << "weight,trials,success_rate,mean_quantization_distance";
            for (const QccSummary& s : sweep) {
                csv << "\n"
                    << s.error_weight << "," << s.trials << "," << s.success_rate << ","
                    << s.mean_quantization_distance;
            }
            emit(csv.str(), qcc.common.out_path, out);
            return;
        }
        json j;
        j["command"] = "qcc sweep";
        j["config"] = {{"system", qcc.system},
                       {"code", qcc.code},
                       {"trials", qcc.trials},
                       {"max_weight", qcc.max_weight},
                       {"seed", qcc.seed}};
        j["preflight"] = {{"correction_radius", code.correction_radius()},
                          {"max_codeword_distance", sweep.front().max_codeword_distance},
                          {"guaranteed_weight", sweep.front().guaranteed_weight}};
        json rows = json::array();
        for (const QccSummary& s : sweep) {
            json histogram = json::object();
            for (const auto& [d, count] : s.distance_histogram) {
                histogram[std::to_string(d)] = count;
            }
            rows.push_back(json{{"weight", s.error_weight},
                                {"trials", s.trials},
                                {"success_rate", s.success_rate},
                                {"mean_quantization_distance", s.mean_quantization_distance},
                                {"distance_histogram", histogram}});
        }
        j["sweep"] = std::move(rows);
        emit_json(j, qcc.common.out_path, out);
    });

    // ------------------------------------------------------------- system
    struct {
        std::string system;
        int q = 2;
        int m = 1;
        std::string forbidden;
        std::string forbidden_file;
        long long cap = 1 << 16;
        CommonOptions common;
    } sys;

    auto* system_cmd = app.add_subcommand("system", "build and inspect presentations");
    system_cmd->require_subcommand(1);

    auto* sys_build = system_cmd->add_subcommand("build", "shift of finite type from forbidden words");
    sys_build->add_option("--q", sys.q, "alphabet size")->required();
    sys_build->add_option("--m", sys.m, "forbidden word length")->required();
    auto* opt_forbidden = sys_build->add_option(
        "--forbidden", sys.forbidden, "comma-separated digit words (alphabets up to 10)");
    auto* opt_forbidden_file = sys_build->add_option(
        "--forbidden-file", sys.forbidden_file, "JSON array of symbol arrays");
    opt_forbidden->excludes(opt_forbidden_file);
    add_output_options(sys_build, &sys.common, false);
    sys_build->callback([&] {
        std::vector<Word> forbidden;
        if (!sys.forbidden_file.empty()) {
            nlohmann::json j = read_json_file(sys.forbidden_file);
            if (!j.is_array()) throw InputError("forbidden-word file must hold an array");
            for (const auto& entry : j) forbidden.push_back(entry.get<Word>());
        } else if (!sys.forbidden.empty()) {
            if (sys.q > 10) {
                throw InputError("digit words only cover alphabets up to 10; use --forbidden-file");
            }
            std::stringstream ss(sys.forbidden);
            std::string item;
            while (std::getline(ss, item, ',')) {
                Word w;
                for (char c : item) {
                    if (c < '0' || c > '9') throw InputError("forbidden words must be digits");
                    w.push_back(c - '0');
                }
                forbidden.push_back(std::move(w));
            }
        }
        ConstrainedSystem built = build_from_forbidden_words(sys.q, sys.m, forbidden);
        json j = graph_to_json(built.presentation());
        j["config"] = {{"q", sys.q}, {"m", sys.m}, {"forbidden", sys.forbidden},
                       {"forbidden_file", sys.forbidden_file}};
        emit_json(j, sys.common.out_path, out);
    });

    auto* sys_info = system_cmd->add_subcommand("info", "presentation facts and capacity");
    sys_info->add_option("--system", sys.system, "constrained system")->required();
    add_output_options(sys_info, &sys.common, false);
    sys_info->callback([&] {
        ConstrainedSystem x = parse_system(sys.system);
        json j;
        j["command"] = "system info";
        j["config"] = {{"system", sys.system}};
        j["q"] = x.alphabet_size();
        j["vertices"] = x.presentation().vertex_count();
        j["edges"] = x.presentation().edge_count();
        j["irreducible"] = x.is_irreducible();
        j["primitive"] = x.is_primitive();
        j["deterministic"] = x.is_deterministic();
        if (!x.is_deterministic()) {
            err << "note: presentation is nondeterministic; "
                   "capacity computed from a determinized copy\n";
        }
        j["capacity"] = capacity_determinized(x);
        emit_json(j, sys.common.out_path, out);
    });

    auto* sys_det = system_cmd->add_subcommand("determinize", "subset-construction presentation");
    sys_det->add_option("--system", sys.system, "constrained system")->required();
    sys_det->add_option("--cap", sys.cap, "subset state cap");
    add_output_options(sys_det, &sys.common, false);
    sys_det->callback([&] {
        ConstrainedSystem x = parse_system(sys.system);
        LabeledGraph det = determinize(x.presentation(), static_cast<int>(sys.cap));
        json j = graph_to_json(det);
        j["config"] = {{"system", sys.system}, {"cap", sys.cap}};
        emit_json(j, sys.common.out_path, out);
    });

    // ------------------------------------------------------------ dispatch
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("covrad");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const CapExceededError& e) {
        err << "error: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const NumericalInstabilityError& e) {
        err << "error: " << e.what() << "\n";
        return kNumeric;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kNumeric;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kOk;
}

}  // namespace covrad::cli
