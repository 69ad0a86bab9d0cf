// proxgrad command line front end: solve built-in problems, verify solver
// traces, run the dictionary-learning benchmark and turn its result tables
// into performance-profile data files.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "proxgrad/proxgrad.hpp"

namespace {

using nlohmann::json;
using namespace proxgrad;

MeritFlavor flavor_from_string(const std::string& s) {
    if (s == "monotone") return MeritFlavor::monotone;
    if (s == "average") return MeritFlavor::average;
    if (s == "max") return MeritFlavor::max;
    throw std::invalid_argument("unknown merit flavor '" + s + "' (monotone|average|max)");
}

StepsizeKind stepsize_from_string(const std::string& s) {
    if (s == "plain") return StepsizeKind::plain;
    if (s == "spectral") return StepsizeKind::spectral;
    throw std::invalid_argument("unknown stepsize strategy '" + s + "' (plain|spectral)");
}

json load_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open file: " + path);
    json j;
    is >> j;
    return j;
}

SolverConfig config_from_json(const json& j) {
    SolverConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "gamma_min") cfg.gamma_min = value.get<double>();
        else if (key == "gamma_max") cfg.gamma_max = value.get<double>();
        else if (key == "alpha") cfg.alpha = value.get<double>();
        else if (key == "beta") cfg.beta = value.get<double>();
        else if (key == "p") cfg.p = value.get<double>();
        else if (key == "flavor") cfg.flavor = flavor_from_string(value.get<std::string>());
        else if (key == "window") cfg.window = value.get<int>();
        else if (key == "stepsize") cfg.stepsize = stepsize_from_string(value.get<std::string>());
        else if (key == "epsilon") cfg.epsilon = value.get<double>();
        else if (key == "max_iters") cfg.max_iters = value.get<std::int64_t>();
        else if (key == "max_backtracks") cfg.max_backtracks = value.get<int>();
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    return cfg;
}

struct RunSpec {
    json problem;
    SolverConfig config;
    std::uint64_t seed = 0;
};

RunSpec runspec_from_file(const std::string& path) {
    const json j = load_json_file(path);
    RunSpec spec;
    if (!j.contains("problem")) throw std::invalid_argument("run spec is missing 'problem'");
    spec.problem = j.at("problem");
    if (j.contains("config")) spec.config = config_from_json(j.at("config"));
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    return spec;
}

BuiltinProblem build_problem(const json& p, std::uint64_t default_seed,
                             std::vector<std::string>& notes) {
    const std::string name = p.at("name").get<std::string>();
    const std::uint64_t seed = p.value("seed", default_seed);
    if (name == "lasso1d") return make_lasso1d();
    if (name == "lasso")
        return make_lasso(p.value("n", 50), p.value("lambda", 0.1), seed);
    if (name == "l0reg")
        return make_l0reg(p.value("n", 50), p.value("lambda", 0.05), seed);
    if (name == "dictlearn") {
        notes.push_back("x0: dictionary columns normalized to unit norm (feasible start)");
        return make_dictlearn(p.value("n", 10), p.value("l", 20), p.value("m", 30),
                              p.value("N", 3), p.value("lambda", 0.01), seed);
    }
    throw std::invalid_argument("unknown problem '" + name +
                                "' (lasso1d|lasso|l0reg|dictlearn)");
}

json result_to_json(const BuiltinProblem& bp, const SolveResult& res,
                    const std::vector<std::string>& notes) {
    json j;
    j["problem"] = bp.name;
    j["status"] = to_string(res.status);
    j["phi_final"] = res.phi_final;
    j["residual_final"] = res.final_residual;
    j["iterations"] = res.trace.empty() ? 0 : res.trace.back().k;
    j["counters"] = {{"f_evals", bp.problem.counters().f_evals},
                     {"grad_evals", bp.problem.counters().grad_evals},
                     {"g_evals", bp.problem.counters().g_evals},
                     {"prox_evals", bp.problem.counters().prox_evals}};
    j["x_final"] = res.x_final;
    if (!notes.empty()) j["notes"] = notes;
    return j;
}

void apply_config_override(SolverConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "flavor") { cfg.flavor = flavor_from_string(value); return; }
    if (key == "stepsize") { cfg.stepsize = stepsize_from_string(value); return; }
    const auto as_double = [&] { return std::stod(value); };
    if (key == "gamma_min") cfg.gamma_min = as_double();
    else if (key == "gamma_max") cfg.gamma_max = as_double();
    else if (key == "alpha") cfg.alpha = as_double();
    else if (key == "beta") cfg.beta = as_double();
    else if (key == "p") cfg.p = as_double();
    else if (key == "window") cfg.window = std::stoi(value);
    else if (key == "epsilon") cfg.epsilon = as_double();
    else if (key == "max_iters") cfg.max_iters = std::stoll(value);
    else if (key == "max_backtracks") cfg.max_backtracks = std::stoi(value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

int cmd_solve(const std::string& spec_path, const std::string& out_trace,
              const std::string& out_result, const std::vector<std::string>& overrides) {
    RunSpec spec = runspec_from_file(spec_path);
    if (overrides.size() % 2 != 0)
        throw std::invalid_argument("--set expects key value pairs");
    // flag overrides beat the spec file
    for (std::size_t i = 0; i < overrides.size(); i += 2)
        apply_config_override(spec.config, overrides[i], overrides[i + 1]);
    spec.config.validate();

    std::vector<std::string> notes;
    BuiltinProblem bp = build_problem(spec.problem, spec.seed, notes);
    const SolveResult res = solve(bp.problem, bp.x0, spec.config);

    if (!out_trace.empty()) write_trace_file(out_trace, res.trace);
    const json result = result_to_json(bp, res, notes);
    if (!out_result.empty()) {
        std::ofstream os(out_result);
        if (!os) throw std::runtime_error("cannot open result file: " + out_result);
        os << result.dump(2) << '\n';
    }
    std::cout << "status=" << to_string(res.status) << " phi=" << res.phi_final
              << " residual=" << res.final_residual
              << " prox_evals=" << bp.problem.counters().prox_evals << '\n';
    return res.status == SolveStatus::converged ? 0 : 2;
}

int cmd_diagnose(const std::string& trace_path, const std::string& spec_path,
                 const std::string& out_path) {
    const RunSpec spec = runspec_from_file(spec_path);
    const std::vector<IterationRecord> trace = read_trace_file(trace_path);
    const DiagnosticsReport report = run_diagnostics(trace, spec.config);
    const json j = to_json(report);
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        if (!os) throw std::runtime_error("cannot open report file: " + out_path);
        os << j.dump(2) << '\n';
    } else {
        std::cout << j.dump(2) << '\n';
    }
    return report.all_hard_passed() ? 0 : 3;
}

int cmd_bench(int instances, std::uint64_t seed, int parallel, const std::string& out_path,
              int n, int atoms, int signals, int nnz, double lambda, double epsilon,
              std::int64_t max_iters) {
    if (instances < 0) throw std::invalid_argument("--instances must be nonnegative");
    std::vector<DictLearnInstance> insts;
    insts.reserve(static_cast<std::size_t>(instances));
    for (int i = 0; i < instances; ++i)
        insts.push_back(generate_instance(n, atoms, signals, nnz, lambda, seed + i));
    auto variants = variant_configs(epsilon);
    for (auto& [name, cfg] : variants) cfg.max_iters = max_iters;
    const std::vector<RunRow> rows = run_suite(insts, variants, parallel);

    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    const std::vector<std::string> metadata = {
        "dictionary learning bench: n=" + std::to_string(n) + " atoms=" + std::to_string(atoms) +
            " signals=" + std::to_string(signals) + " nnz_per_signal=" + std::to_string(nnz),
        "lambda=" + std::to_string(lambda) + " epsilon=" + std::to_string(epsilon) +
            " base_seed=" + std::to_string(seed),
        "x0: dictionary columns normalized to unit norm (feasible start)"};
    write_results_csv(os, rows, metadata);
    if (!os) throw std::runtime_error("failed writing output file: " + out_path);

    std::size_t converged = 0;
    for (const RunRow& r : rows) converged += r.status == SolveStatus::converged;
    std::cout << "ran " << rows.size() << " runs, " << converged << " converged, results in "
              << out_path << '\n';
    return 0;
}

int cmd_profile(const std::string& results_path, const std::string& metric,
                const std::string& out_dir) {
    const std::vector<RunRow> rows = read_results_file(results_path);
    ProfileMetric m;
    if (metric == "prox") m = ProfileMetric::prox_evals;
    else if (metric == "objective") m = ProfileMetric::final_objective;
    else throw std::invalid_argument("unknown metric '" + metric + "' (prox|objective)");
    const auto curves = performance_profile(rows, m);
    const auto files = write_profile_data(curves, out_dir);
    for (const std::string& f : files) std::cout << f << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive proximal gradient solver and benchmark harness"};
    app.require_subcommand(1);

    std::string spec_path, trace_path, out_trace, out_result, out_path, results_path;
    std::string metric = "prox", out_dir = "profiles";
    std::vector<std::string> overrides;
    int instances = 100, parallel = 1;
    int n = 10, atoms = 20, signals = 30, nnz = 3;
    double lambda = 1e-2, epsilon = 1e-6;
    std::int64_t bench_max_iters = 1000000;
    std::uint64_t seed = 0;

    CLI::App* solve = app.add_subcommand("solve", "run the solver on a built-in problem");
    solve->add_option("--spec", spec_path, "run spec JSON file")->required();
    solve->add_option("--out-trace", out_trace, "write the iteration trace CSV here");
    solve->add_option("--out-result", out_result, "write the result JSON here");
    solve->add_option("--set", overrides,
                      "override a config key, e.g. --set epsilon 1e-8 (repeatable)");

    CLI::App* diagnose = app.add_subcommand("diagnose", "verify a trace against the run spec");
    diagnose->add_option("--trace", trace_path, "trace CSV file")->required();
    diagnose->add_option("--spec", spec_path, "run spec JSON file")->required();
    diagnose->add_option("--out", out_path, "write the report JSON here (default stdout)");

    CLI::App* bench = app.add_subcommand("bench", "run the dictionary-learning suite");
    bench->add_option("--instances", instances, "number of instances (default 100)");
    bench->add_option("--seed", seed, "base seed; instance i uses seed+i");
    bench->add_option("--parallel", parallel, "worker threads (default 1)");
    bench->add_option("--out", out_path, "result table CSV")->required();
    bench->add_option("--n", n, "signal dimension");
    bench->add_option("--atoms", atoms, "number of dictionary atoms");
    bench->add_option("--signals", signals, "number of signals");
    bench->add_option("--nnz", nnz, "planted nonzeros per signal");
    bench->add_option("--lambda", lambda, "l0 regularization weight");
    bench->add_option("--epsilon", epsilon, "termination tolerance");
    bench->add_option("--max-iters", bench_max_iters, "per-run iteration cap (default 1000000)");

    CLI::App* profile = app.add_subcommand("profile", "performance profiles from a result table");
    profile->add_option("--results", results_path, "bench result CSV")->required();
    profile->add_option("--metric", metric, "prox|objective (default prox)");
    profile->add_option("--out-dir", out_dir, "output directory for .dat files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(spec_path, out_trace, out_result, overrides);
        if (diagnose->parsed()) return cmd_diagnose(trace_path, spec_path, out_path);
        if (bench->parsed())
            return cmd_bench(instances, seed, parallel, out_path, n, atoms, signals, nnz, lambda,
                             epsilon, bench_max_iters);
        if (profile->parsed()) return cmd_profile(results_path, metric, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
