// Acceptance suite: end-to-end checks of the solver, the shipped proxes,
// the trace verifiers and the dictionary-learning benchmark, one printed
// line per criterion. Exits nonzero if any hard criterion fails; the
// benchmark-trend and wall-time targets only warn.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "proxgrad/proxgrad.hpp"

using namespace proxgrad;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(const char* status, const std::string& name, const std::string& detail) {
    std::printf("[%s] %s: %s\n", status, name.c_str(), detail.c_str());
}

void hard(const std::string& name, bool ok, const std::string& detail) {
    if (!ok) ++g_failures;
    report(ok ? "PASS" : "FAIL", name, detail);
}

void soft(const std::string& name, bool ok, const std::string& detail) {
    report(ok ? "PASS" : "WARN", name, detail);
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// brute-force scalar prox oracle
double grid_prox(const std::function<double(double)>& g, double x, double gamma) {
    const double lo = -10.0, hi = 10.0;
    const int n = 10000;
    double best_z = lo, best_cost = kPlusInf;
    for (int i = 0; i <= n; ++i) {
        const double z = lo + (hi - lo) * i / n;
        const double cost = g(z) + (z - x) * (z - x) / (2.0 * gamma);
        if (cost < best_cost) {
            best_cost = cost;
            best_z = z;
        }
    }
    return best_z;
}

void closed_form_fixed_points() {
    double worst_err = 0.0, worst_time = 0.0;
    bool ok = true;
    for (const auto& [name, cfg] : variant_configs(1e-6)) {
        BuiltinProblem bp = make_lasso1d();
        const auto t0 = Clock::now();
        const SolveResult res = solve(bp.problem, bp.x0, cfg);
        const double elapsed = seconds_since(t0);
        const double err = std::abs(res.x_final[0] - 1.0);
        worst_err = std::max(worst_err, err);
        worst_time = std::max(worst_time, elapsed);
        ok = ok && res.status == SolveStatus::converged && err <= 1e-5 && elapsed < 1.0;
    }
    hard("closed-form fixed points",
         ok, "lasso1d, six variants; worst |x-1| = " + fmt(worst_err) + ", worst time " +
                 fmt(worst_time) + " s");
}

void prox_oracle_equivalence() {
    const double resolution = 0.002;
    Rng rng(31);
    double worst = 0.0;
    int checked = 0;
    for (int t = 0; t < 100; ++t) {
        const double x = -8.0 + 16.0 * rng.uniform01();
        const double gamma = 0.05 + 1.95 * rng.uniform01();
        const double lambda = 2.0 * rng.uniform01();
        const double grid = grid_prox([lambda](double z) { return lambda * std::abs(z); }, x,
                                      gamma);
        worst = std::max(worst, std::abs(prox_l1({x}, gamma, lambda)[0] - grid));
        ++checked;
    }
    for (int t = 0; t < 100; ++t) {
        double x, gamma, lambda;
        do {
            x = -8.0 + 16.0 * rng.uniform01();
            gamma = 0.05 + 1.95 * rng.uniform01();
            lambda = 2.0 * rng.uniform01();
        } while (std::abs(x * x - 2.0 * gamma * lambda) < 0.05);
        const double grid =
            grid_prox([lambda](double z) { return z == 0.0 ? 0.0 : lambda; }, x, gamma);
        worst = std::max(worst, std::abs(prox_l0({x}, gamma, lambda)[0] - grid));
        ++checked;
    }
    hard("prox oracle equivalence",
         worst <= resolution, std::to_string(checked) + " seeded scalar cases vs 10^4-point grid; "
                                  "worst gap " + fmt(worst) + " (allowed " + fmt(resolution) + ")");
}

void invariant_suite() {
    bool ok = true;
    std::string first_failure;
    int traces = 0;
    for (const auto& [name, cfg] : variant_configs(1e-6)) {
        std::vector<BuiltinProblem> problems;
        problems.push_back(make_lasso1d());
        problems.push_back(make_lasso(50, 0.1, 11));
        problems.push_back(make_l0reg(40, 0.05, 12));
        problems.push_back(make_dictlearn(10, 20, 30, 3, 1e-2, 13));
        for (BuiltinProblem& bp : problems) {
            const SolveResult res = solve(bp.problem, bp.x0, cfg);
            const DiagnosticsReport rep = run_diagnostics(res.trace, cfg);
            ++traces;
            for (const CheckResult& c : rep.checks) {
                if (c.name == "residual_trend") continue;  // soft check
                if (c.status == CheckStatus::fail) {
                    ok = false;
                    if (first_failure.empty())
                        first_failure = c.name + " on " + bp.name + "/" + name + " margin " +
                                        fmt(c.margin) + " at k=" + std::to_string(c.index);
                }
            }
        }
    }
    hard("invariant suite on traces", ok,
         ok ? "sufficient decrease, summability and rate bounds hold on " +
                  std::to_string(traces) + " traces (built-ins x six variants)"
            : first_failure);
}

void stationarity_certification() {
    const double eps = 1e-6;
    bool ok = true;
    double worst = 0.0;
    int runs = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
        for (const auto& [name, cfg_base] : variant_configs(eps)) {
            SolverConfig cfg = cfg_base;
            BuiltinProblem bp = make_lasso(50, 0.1, seed);
            const SolveResult res = solve(bp.problem, bp.x0, cfg);
            ++runs;
            if (res.status != SolveStatus::converged) {
                ok = false;
                continue;
            }
            const Point grad = bp.problem.smooth().gradient(res.x_final);
            const double dist = subdiff_residual_l1(res.x_final, grad, bp.lambda);
            worst = std::max(worst, dist);
            ok = ok && dist <= 10.0 * eps;
        }
    hard("stationarity certification", ok,
         std::to_string(runs) + " converged lasso(n=50) runs; worst dist(-grad f, dg) = " +
             fmt(worst) + " (allowed " + fmt(10.0 * eps) + ")");
}

std::vector<RunRow> g_suite_rows;

void full_scale_benchmark() {
    const auto t0 = Clock::now();
    std::vector<DictLearnInstance> instances;
    instances.reserve(100);
    for (int i = 0; i < 100; ++i) instances.push_back(generate_instance(10, 20, 30, 3, 1e-2, i));
    auto variants = variant_configs(1e-6);
    for (auto& [name, cfg] : variants) cfg.max_iters = 1000000;
    g_suite_rows = run_suite(instances, variants, 2);
    const double elapsed = seconds_since(t0);

    std::size_t converged = 0;
    for (const RunRow& r : g_suite_rows) converged += r.status == SolveStatus::converged;
    const bool all = converged == g_suite_rows.size();
    hard("benchmark reproduction", all,
         std::to_string(converged) + "/" + std::to_string(g_suite_rows.size()) +
             " runs converged (100 instances x 6 variants), wall " + fmt(elapsed) + " s");
    soft("benchmark wall-time target", elapsed < 600.0,
         "suite took " + fmt(elapsed) + " s (target < 600 s)");
}

double median_prox_evals(const std::string& variant) {
    std::vector<double> v;
    for (const RunRow& r : g_suite_rows)
        if (r.variant == variant && r.status == SolveStatus::converged)
            v.push_back(static_cast<double>(r.prox_evals));
    if (v.empty()) return kPlusInf;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void benchmark_trend() {
    const double spectral_avg = median_prox_evals("spectral_average");
    const double plain_mono = median_prox_evals("plain_monotone");
    soft("benchmark trend (spectral-average vs plain-monotone)", spectral_avg <= plain_mono,
         "median prox evals " + fmt(spectral_avg) + " vs " + fmt(plain_mono));
}

void gradient_correctness() {
    const DictLearnInstance inst = generate_instance(10, 20, 30, 3, 1e-2, 99);
    Problem p = dictlearn_problem(inst);
    Rng rng(100);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        Point x(p.dim());
        for (double& v : x) v = rng.normal();
        worst = std::max(worst, check_gradient_fd(p.smooth(), x, 1e-6));
    }
    hard("gradient correctness", worst <= 1e-5,
         "dictionary-learning gradient vs central differences at 20 seeded points; worst "
         "relative discrepancy " + fmt(worst));
}

void feasibility_maintenance() {
    bool ok = true;
    double worst_col = 0.0, worst_merit_gap = 0.0;
    for (StepsizeKind kind : {StepsizeKind::plain, StepsizeKind::spectral}) {
        const DictLearnInstance inst = generate_instance(10, 20, 30, 3, 1e-2, 123);
        const DictBlockLayout lay = inst.layout;
        Problem reference = dictlearn_problem(inst);

        // shim the prox to check each trial's atom norms as it is produced
        SmoothTerm f;
        f.dim = reference.smooth().dim;
        f.value = reference.smooth().value;
        f.gradient = reference.smooth().gradient;
        NonsmoothTerm g;
        g.dim = reference.nonsmooth().dim;
        g.value = reference.nonsmooth().value;
        const auto inner_prox = reference.nonsmooth().prox;
        g.prox = [&, inner_prox](const Point& x, double gamma) {
            Point z = inner_prox(x, gamma);
            for (int j = 0; j < lay.atoms; ++j) {
                double nrm2 = 0.0;
                for (int i = 0; i < lay.n; ++i) {
                    const double v = z[static_cast<std::size_t>(j) * lay.n + i];
                    nrm2 += v * v;
                }
                worst_col = std::max(worst_col, std::abs(std::sqrt(nrm2) - 1.0));
            }
            return z;
        };
        Problem p(std::move(f), std::move(g));

        SolverConfig cfg;
        cfg.stepsize = kind;
        cfg.flavor = MeritFlavor::average;
        const SolveResult res = solve(p, feasible_start(inst), cfg);
        ok = ok && res.status == SolveStatus::converged;

        for (const IterationRecord& r : res.trace) {
            if (r.k < 1 || r.residual <= cfg.epsilon) continue;
            const double gap = r.phi - r.merit;  // phi_k <= Phi_k
            worst_merit_gap = std::max(worst_merit_gap, gap);
            ok = ok && gap <= 1e-12 * std::max(1.0, std::abs(r.merit));
        }
    }
    ok = ok && worst_col <= 1e-12;
    hard("feasibility maintenance", ok,
         "worst |column norm - 1| = " + fmt(worst_col) + " over all trial iterates; worst "
         "phi - Phi = " + fmt(worst_merit_gap) + " on accepted average-flavor rows");
}

}  // namespace

int main() {
    closed_form_fixed_points();
    prox_oracle_equivalence();
    invariant_suite();
    stationarity_certification();
    full_scale_benchmark();
    benchmark_trend();
    gradient_correctness();
    feasibility_maintenance();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all hard criteria passed\n");
    return 0;
}
