#ifndef PROXGRAD_DIAGNOSTICS_HPP
#define PROXGRAD_DIAGNOSTICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "proxgrad/solver.hpp"

namespace proxgrad {

enum class CheckStatus { pass, fail, warn, not_applicable };

inline std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::warn: return "warn";
        case CheckStatus::not_applicable: return "not_applicable";
    }
    return "unknown";
}

// margin is the smallest slack (bound minus observed value) seen across the
// trace, before tolerances; index is the iteration where it occurred, -1
// when the check was vacuous.
struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::not_applicable;
    double margin = 0.0;
    std::int64_t index = -1;
};

struct DiagnosticsReport {
    std::vector<CheckResult> checks;

    bool all_hard_passed() const {
        for (const CheckResult& c : checks)
            if (c.status == CheckStatus::fail) return false;
        return true;
    }
};

inline nlohmann::json to_json(const DiagnosticsReport& report) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckResult& c : report.checks)
        arr.push_back({{"check", c.name},
                       {"status", to_string(c.status)},
                       {"margin", c.margin},
                       {"index", c.index}});
    return arr;
}

namespace detail {

// Rows that went through the acceptance test. The final row of a converged
// trace has residual <= epsilon: it was returned from inside the
// backtracking loop before the test ran, so the line-search inequalities
// below do not cover it. Row k = 0 is the starting point.
inline bool is_search_row(const IterationRecord& r, const SolverConfig& cfg) {
    return r.k >= 1 && r.residual > cfg.epsilon;
}

struct WorstSlack {
    double slack = kPlusInf;
    std::int64_t index = -1;
    bool any = false;

    void observe(double s, std::int64_t k) {
        any = true;
        if (s < slack) {
            slack = s;
            index = k;
        }
    }

    CheckResult finish(const std::string& name, double tolerance_at_worst) const {
        CheckResult res;
        res.name = name;
        if (!any) {
            res.status = CheckStatus::pass;  // vacuous
            return res;
        }
        res.margin = slack;
        res.index = index;
        res.status = slack + tolerance_at_worst >= 0.0 ? CheckStatus::pass : CheckStatus::fail;
        return res;
    }
};

}  // namespace detail

// Both halves of the per-iteration sufficient decrease of the averaging
// merit: phi_k + (1 - p) delta_k <= Phi_k and Phi_k <= Phi_{k-1} - p delta_k
// with delta_k = (1 - alpha) / (2 gamma_k) ||x_k - x_{k-1}||^2. Applies to
// the monotone (p = 1) and average flavors only.
inline CheckResult verify_sufficient_decrease(const std::vector<IterationRecord>& trace,
                                              const SolverConfig& cfg) {
    const std::string name = "sufficient_decrease";
    if (cfg.flavor == MeritFlavor::max) return {name, CheckStatus::not_applicable, 0.0, -1};
    const double p = cfg.effective_p();
    detail::WorstSlack worst;
    double tol_at_worst = 0.0;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        const IterationRecord& prev = trace[i - 1];
        const IterationRecord& cur = trace[i];
        if (!detail::is_search_row(cur, cfg)) continue;
        const double delta =
            (1.0 - cfg.alpha) / (2.0 * cur.gamma) * cur.step_norm * cur.step_norm;
        const double tol = 1e-10 * std::max(1.0, std::abs(prev.merit));
        const double slack_upper = cur.merit - (cur.phi + (1.0 - p) * delta);
        const double slack_decrease = (prev.merit - p * delta) - cur.merit;
        const double s = std::min(slack_upper, slack_decrease);
        if (!worst.any || s < worst.slack) tol_at_worst = tol;
        worst.observe(s, cur.k);
    }
    return worst.finish(name, tol_at_worst);
}

// Telescoped bound on the accumulated decrease: at every k the partial sum
// of p (1 - alpha) / (2 gamma_j) ||x_j - x_{j-1}||^2 over accepted rows
// stays below Phi_0 - Phi_k. Averaging analysis; skipped for the max flavor.
inline CheckResult verify_summability(const std::vector<IterationRecord>& trace,
                                      const SolverConfig& cfg) {
    const std::string name = "summability";
    if (cfg.flavor == MeritFlavor::max) return {name, CheckStatus::not_applicable, 0.0, -1};
    if (trace.empty()) return {name, CheckStatus::pass, 0.0, -1};
    const double p = cfg.effective_p();
    const double phi_budget_base = trace.front().merit;  // Phi_0
    double partial = 0.0;
    detail::WorstSlack worst;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        const IterationRecord& cur = trace[i];
        if (detail::is_search_row(cur, cfg))
            partial += p * (1.0 - cfg.alpha) / (2.0 * cur.gamma) * cur.step_norm * cur.step_norm;
        worst.observe(phi_budget_base - cur.merit - partial, cur.k);
    }
    return worst.finish(name, 1e-8);
}

// O(1/sqrt(k)) envelopes for the iterates and for the fixed-point residual,
// evaluated along the accepted rows with observed quantities:
//   min_{j<=k} step_j     <= sqrt(2 gamma_max (phi_0 - Phi_fin) / (p (1-a))) / sqrt(k)
//   min_{j<=k} residual_j <= sqrt(2 (phi_0 - Phi_fin) / (gamma_* p (1-a))) / sqrt(k)
// where gamma_* is the smallest accepted stepsize in the trace.
inline CheckResult verify_rate_bounds(const std::vector<IterationRecord>& trace,
                                      const SolverConfig& cfg) {
    const std::string name = "rate_bounds";
    std::vector<const IterationRecord*> rows;
    for (const IterationRecord& r : trace)
        if (detail::is_search_row(r, cfg)) rows.push_back(&r);
    if (trace.empty() || rows.empty()) return {name, CheckStatus::pass, 0.0, -1};

    const double phi0 = trace.front().phi;
    // The window merit of the max flavor can stay flat while the objective
    // drops, so the telescoped budget falls back to the objective there.
    double merit_final = trace.back().merit;
    if (cfg.flavor == MeritFlavor::max)
        for (const IterationRecord& r : trace) merit_final = std::min(merit_final, r.phi);
    const double budget = std::max(phi0 - merit_final, 0.0);
    const double p = cfg.effective_p();

    double gamma_star = rows.front()->gamma;
    for (const IterationRecord* r : rows) gamma_star = std::min(gamma_star, r->gamma);

    const double step_const = std::sqrt(2.0 * cfg.gamma_max * budget / (p * (1.0 - cfg.alpha)));
    const double res_const = std::sqrt(2.0 * budget / (gamma_star * p * (1.0 - cfg.alpha)));

    detail::WorstSlack worst;
    double min_step = kPlusInf;
    double min_res = kPlusInf;
    for (std::size_t t = 0; t < rows.size(); ++t) {
        min_step = std::min(min_step, rows[t]->step_norm);
        min_res = std::min(min_res, rows[t]->residual);
        const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(t + 1));
        worst.observe(step_const * inv_sqrt_k - min_step, rows[t]->k);
        worst.observe(res_const * inv_sqrt_k - min_res, rows[t]->k);
    }
    return worst.finish(name, 1e-8);
}

// Soft sanity check standing in for the asymptotic vanishing of the
// residual: the smallest residual should be attained late in the run, unless
// the run already terminated at tolerance. Warns instead of failing.
inline CheckResult verify_residual_decrease_trend(const std::vector<IterationRecord>& trace,
                                                  const SolverConfig& cfg) {
    const std::string name = "residual_trend";
    std::vector<const IterationRecord*> rows;
    for (const IterationRecord& r : trace)
        if (r.k >= 1) rows.push_back(&r);
    if (rows.size() < 8) return {name, CheckStatus::not_applicable, 0.0, -1};
    if (rows.back()->residual <= cfg.epsilon)
        return {name, CheckStatus::pass, 0.0, rows.back()->k};
    std::size_t arg_min = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i]->residual <= rows[arg_min]->residual) arg_min = i;
    const bool late = arg_min + 1 > (3 * rows.size()) / 4;
    CheckResult res{name, late ? CheckStatus::pass : CheckStatus::warn, 0.0, rows[arg_min]->k};
    res.margin = static_cast<double>(arg_min + 1) / static_cast<double>(rows.size());
    return res;
}

// Every registered check, exactly once each, in a fixed order.
inline DiagnosticsReport run_diagnostics(const std::vector<IterationRecord>& trace,
                                         const SolverConfig& cfg) {
    DiagnosticsReport report;
    report.checks.push_back(verify_sufficient_decrease(trace, cfg));
    report.checks.push_back(verify_summability(trace, cfg));
    report.checks.push_back(verify_rate_bounds(trace, cfg));
    report.checks.push_back(verify_residual_decrease_trend(trace, cfg));
    return report;
}

}  // namespace proxgrad

#endif
