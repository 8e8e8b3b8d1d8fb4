// imc-hit: generate, solve and verify hitting-probability bounds for
// imprecise Markov chains. Errors leave as JSON diagnostics on stderr with a
// nonzero exit code.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "imc/errors.hpp"
#include "imc/experiments.hpp"
#include "imc/generators.hpp"
#include "imc/instance.hpp"
#include "imc/oracle.hpp"
#include "imc/reachability.hpp"
#include "imc/solve.hpp"

namespace {

using nlohmann::ordered_json;

std::size_t env_threads() {
    const char* raw = std::getenv("IMC_HIT_THREADS");
    if (!raw) return 0;
    const long v = std::strtol(raw, nullptr, 10);
    return v > 0 ? static_cast<std::size_t>(v) : 1;
}

// Grid syntax: "1..10" (unit steps) or a comma list like "1,2.5,4".
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const double lo = std::stod(text.substr(0, dots));
        const double hi = std::stod(text.substr(dots + 2));
        for (double v = lo; v <= hi + 1e-9; v += 1.0) grid.push_back(v);
        return grid;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto comma = text.find(',', pos);
        const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
        if (!tok.empty()) grid.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (grid.empty()) throw std::invalid_argument("empty grid '" + text + "'");
    return grid;
}

std::vector<std::size_t> parse_size_grid(const std::string& text) {
    std::vector<std::size_t> out;
    for (double v : parse_grid(text)) out.push_back(static_cast<std::size_t>(v));
    return out;
}

void emit(const ordered_json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << j.dump(2) << "\n";
}

ordered_json matrix_json(const imc::TransitionMatrix& t) {
    ordered_json rows = ordered_json::array();
    for (std::size_t x = 0; x < t.n_states(); ++x) rows.push_back(t.row_copy(x));
    return rows;
}

ordered_json solve_json(const imc::SolveResult& r, const imc::CredalSet& credal) {
    ordered_json out;
    out["mode"] = r.mode == imc::Bound::lower ? "lower" : "upper";
    out["probabilities"] = r.probabilities.values;
    out["iterations"] = r.iterations;
    out["residual"] = r.residual;
    out["witness"] = matrix_json(imc::materialize(credal, r.final_selection));
    if (r.trace) {
        ordered_json trace = ordered_json::array();
        for (const auto& p : *r.trace) trace.push_back(p);
        out["trace"] = std::move(trace);
    }
    return out;
}

ordered_json report_json(const imc::ReachabilityReport& rep) {
    ordered_json out;
    out["mode"] = rep.mode == imc::ReachMode::lower ? "lower" : "upper";
    out["target"] = rep.target.members();
    ordered_json chain = ordered_json::array();
    for (const auto& d : rep.chain) chain.push_back(d.members());
    out["chain"] = std::move(chain);
    out["trivial_zero"] = rep.trivial_zero.members();
    out["nontrivial"] = rep.nontrivial.members();
    out["witness"] = matrix_json(rep.witness);
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Lower and upper hitting probabilities for imprecise Markov chains"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate an instance");
    std::string family = "random", model = "eps", gen_out;
    std::size_t gen_n = 10, gen_m = 4;
    double gen_lambda = 5.0, gen_eps = 0.1, gen_b = 0.95;
    std::uint64_t gen_seed = 0;
    gen->add_option("--family", family,
                    "random | worst_case | propagation_chain | example1 | example2 | tiebreak");
    gen->add_option("--n", gen_n, "state count (random) / chain length (propagation_chain)");
    gen->add_option("--lambda", gen_lambda, "average degree (random family)");
    gen->add_option("--model", model, "eps | hull (random family)");
    gen->add_option("--epsilon", gen_eps, "contamination weight (eps model)");
    gen->add_option("--m", gen_m, "extreme-point count (worst_case family)");
    gen->add_option("--b", gen_b, "interval upper endpoint (propagation_chain family)");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output file (stdout when omitted)");

    // fixtures
    auto* fixtures = app.add_subcommand("fixtures", "Emit a named example instance");
    std::string fixture_name = "example1", fixture_out;
    fixtures->add_option("--name", fixture_name, "example1 | example2 | tiebreak")->required();
    fixtures->add_option("--out", fixture_out, "output file (stdout when omitted)");

    // solve-lower / solve-upper
    std::string solve_in, solve_out;
    double tol = imc::kResidualTol;
    std::size_t max_iters = 0;
    bool trace = false;
    auto add_solve = [&](const char* name, const char* help) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("instance", solve_in, "instance JSON file")->required();
        cmd->add_option("--tol", tol, "fixed-point residual tolerance");
        cmd->add_option("--max-iters", max_iters, "iteration cap (0 = 10N+100)");
        cmd->add_flag("--trace", trace, "record per-iteration hitting vectors");
        cmd->add_option("--out", solve_out, "output file (stdout when omitted)");
        return cmd;
    };
    auto* solve_lower = add_solve("solve-lower", "Lower hitting probabilities");
    auto* solve_upper = add_solve("solve-upper", "Upper hitting probabilities");

    // reach
    auto* reach = app.add_subcommand("reach", "Reachability report");
    std::string reach_in, reach_mode = "lower", reach_out;
    reach->add_option("instance", reach_in, "instance JSON file")->required();
    reach->add_option("--mode", reach_mode, "lower | upper");
    reach->add_option("--out", reach_out, "output file (stdout when omitted)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Brute-force and Monte-Carlo verification");
    std::string oracle_in, oracle_out;
    std::size_t combo_limit = 100000, trials = 0, horizon = 0;
    std::uint64_t oracle_seed = 0;
    oracle->add_option("instance", oracle_in, "instance JSON file")->required();
    oracle->add_option("--combo-limit", combo_limit, "vertex-matrix enumeration limit");
    oracle->add_option("--trials", trials,
                       "Monte-Carlo trials on the center matrix (0 = skip)");
    oracle->add_option("--horizon", horizon, "Monte-Carlo horizon (0 = 50N)");
    oracle->add_option("--seed", oracle_seed, "Monte-Carlo seed");
    oracle->add_option("--out", oracle_out, "output file (stdout when omitted)");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Batch iteration-count study");
    std::size_t exp_n = 10, runs = 1000;
    std::string lambda_grid = "1..10", exp_model = "eps", exp_out = "results.csv", exp_agg,
                exp_hist;
    double exp_eps = 0.1;
    std::uint64_t exp_seed = 0;
    experiment->add_option("--n", exp_n, "state count");
    experiment->add_option("--lambda", lambda_grid, "grid, e.g. 1..10 or 1,2,5");
    experiment->add_option("--model", exp_model, "eps | hull");
    experiment->add_option("--runs", runs, "runs per cell");
    experiment->add_option("--epsilon", exp_eps, "contamination weight (eps model)");
    experiment->add_option("--seed", exp_seed, "batch seed");
    experiment->add_option("--out", exp_out, "raw per-run CSV")->required();
    experiment->add_option("--agg", exp_agg, "aggregate plot-data CSV");
    experiment->add_option("--hist", exp_hist, "iteration-histogram CSV");

    // peak-scan
    auto* peak = app.add_subcommand("peak-scan", "Locate the iteration-maximising degree");
    std::string n_grid = "10,20", peak_lambda = "1..10", peak_model = "eps", peak_out,
                peak_scan_csv;
    std::size_t peak_runs = 100;
    double peak_eps = 0.1;
    std::uint64_t peak_seed = 0;
    peak->add_option("--n-grid", n_grid, "state counts, e.g. 10,20");
    peak->add_option("--lambda", peak_lambda, "degree grid");
    peak->add_option("--model", peak_model, "eps | hull");
    peak->add_option("--runs", peak_runs, "runs per cell");
    peak->add_option("--epsilon", peak_eps, "contamination weight (eps model)");
    peak->add_option("--seed", peak_seed, "scan seed");
    peak->add_option("--out", peak_out, "peaks CSV")->required();
    peak->add_option("--scan", peak_scan_csv, "full-surface CSV");

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        const imc::Family fam = imc::family_from_string(family);
        imc::InstanceSpec inst = [&] {
            switch (fam) {
                case imc::Family::random:
                    return imc::gen_random_instance(gen_n, gen_lambda,
                                                    imc::credal_model_from_string(model),
                                                    gen_eps, gen_seed);
                case imc::Family::worst_case: return imc::worst_case_instance(gen_m);
                case imc::Family::propagation_chain:
                    return imc::propagation_chain_instance(gen_n, gen_b);
                default: return imc::fixture(fam);
            }
        }();
        emit(imc::instance_to_json(inst), gen_out);
        return 0;
    }
    if (fixtures->parsed()) {
        emit(imc::instance_to_json(imc::fixture(imc::family_from_string(fixture_name))),
             fixture_out);
        return 0;
    }
    if (solve_lower->parsed() || solve_upper->parsed()) {
        const imc::InstanceSpec inst = imc::load_instance(solve_in);
        imc::SolveOptions opts;
        opts.residual_tol = tol;
        opts.max_iterations = max_iters;
        opts.record_trace = trace;
        const imc::SolveResult r = solve_lower->parsed()
                                       ? imc::lower_hitting(inst.credal, inst.target_set(), opts)
                                       : imc::upper_hitting(inst.credal, inst.target_set(), opts);
        emit(solve_json(r, inst.credal), solve_out);
        return 0;
    }
    if (reach->parsed()) {
        const imc::InstanceSpec inst = imc::load_instance(reach_in);
        if (reach_mode != "lower" && reach_mode != "upper")
            throw std::invalid_argument("reach: --mode must be lower or upper");
        const imc::ReachabilityReport rep =
            reach_mode == "lower" ? imc::lower_reach_report(inst.credal, inst.target_set())
                                  : imc::upper_reach_report(inst.credal, inst.target_set());
        emit(report_json(rep), reach_out);
        return 0;
    }
    if (oracle->parsed()) {
        const imc::InstanceSpec inst = imc::load_instance(oracle_in);
        const imc::TargetSet target = inst.target_set();
        const imc::BruteBounds bounds =
            imc::brute_force_bounds(inst.credal, target, combo_limit);
        ordered_json out;
        out["combinations"] = bounds.combinations;
        out["lower"] = bounds.lower.values;
        out["upper"] = bounds.upper.values;
        if (trials > 0) {
            const imc::TransitionMatrix center = imc::center_matrix(inst.credal);
            const std::size_t h = horizon > 0 ? horizon : 50 * inst.states;
            ordered_json mc = ordered_json::array();
            for (std::size_t x = 0; x < inst.states; ++x) {
                const imc::McEstimate e = imc::simulate_hitting(
                    center, target, x, imc::McConfig{trials, h, oracle_seed});
                mc.push_back({{"start", x},
                              {"estimate", e.estimate},
                              {"stderr", e.std_error},
                              {"survival", e.survival}});
            }
            out["mc_center"] = std::move(mc);
        }
        emit(out, oracle_out);
        return 0;
    }
    if (experiment->parsed()) {
        imc::BatchConfig cfg{exp_n,   parse_grid(lambda_grid),
                             imc::credal_model_from_string(exp_model),
                             runs,    exp_eps,
                             exp_seed, env_threads()};
        imc::run_batch(cfg, exp_out, exp_agg, exp_hist);
        return 0;
    }
    if (peak->parsed()) {
        imc::lambda_peak_scan(parse_size_grid(n_grid), parse_grid(peak_lambda),
                              imc::credal_model_from_string(peak_model), peak_runs, peak_eps,
                              peak_seed, peak_scan_csv, peak_out, env_threads());
        return 0;
    }
    return 0;
}

} // namespace

int fail(const char* kind, const std::string& message) {
    ordered_json err;
    err["error"] = kind;
    err["message"] = message;
    std::cerr << err.dump() << "\n";
    return 1;
}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const imc::ConvergenceError& e) {
        return fail("convergence", e.what());
    } catch (const imc::CapacityError& e) {
        return fail("capacity", e.what());
    } catch (const imc::SolverError& e) {
        return fail("solver", e.what());
    } catch (const std::invalid_argument& e) {
        return fail("domain", e.what());
    } catch (const std::domain_error& e) {
        return fail("domain", e.what());
    } catch (const std::out_of_range& e) {
        return fail("domain", e.what());
    } catch (const std::exception& e) {
        return fail("error", e.what());
    }
}
