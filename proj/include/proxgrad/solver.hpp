#ifndef PROXGRAD_SOLVER_HPP
#define PROXGRAD_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "proxgrad/merit.hpp"
#include "proxgrad/problem.hpp"
#include "proxgrad/stepsize.hpp"
#include "proxgrad/vec.hpp"

namespace proxgrad {

// All tunables of the adaptive proximal gradient loop. alpha controls how
// weak the acceptance test is (close to 1 = nearly any descent counts),
// beta is the backtracking factor, p the averaging weight of the merit and
// window the memory of the max flavor. Monotone behaviour is the average
// flavor with p forced to 1.
struct SolverConfig {
    double gamma_min = 1e-12;
    double gamma_max = 1e12;
    double alpha = 0.999;
    double beta = 0.5;
    double p = 0.2;
    MeritFlavor flavor = MeritFlavor::average;
    int window = 5;
    StepsizeKind stepsize = StepsizeKind::plain;
    double epsilon = 1e-6;
    std::int64_t max_iters = 100000;
    int max_backtracks = 200;

    double effective_p() const { return flavor == MeritFlavor::monotone ? 1.0 : p; }

    void validate() const {
        if (!(gamma_min > 0.0) || !(gamma_min <= gamma_max) || !std::isfinite(gamma_max))
            throw std::invalid_argument("require 0 < gamma_min <= gamma_max < inf");
        if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("require alpha in (0, 1)");
        if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("require beta in (0, 1)");
        if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("require p in (0, 1]");
        if (window < 0) throw std::invalid_argument("require window >= 0");
        if (!(epsilon > 0.0)) throw std::invalid_argument("require epsilon > 0");
        if (max_iters < 1) throw std::invalid_argument("require max_iters >= 1");
        if (max_backtracks < 0) throw std::invalid_argument("require max_backtracks >= 0");
    }
};

// One realized iterate. Row k = 0 is the starting point (residual recorded
// as +inf, zero step); rows k >= 1 are iterates produced by the prox-
// gradient step, the last of which may be the in-loop terminated point
// (recognizable by residual <= epsilon). Evaluation counts are cumulative.
struct IterationRecord {
    std::int64_t k = 0;
    double gamma = 0.0;
    double phi = 0.0;
    double merit = 0.0;  // Phi_k
    double residual = 0.0;
    int backtracks = 0;
    double step_norm = 0.0;
    std::uint64_t prox_evals = 0;
    std::uint64_t grad_evals = 0;
    std::uint64_t f_evals = 0;
    std::uint64_t g_evals = 0;
};

enum class SolveStatus { converged, max_iters, max_backtracks, infeasible_start };

inline std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iters: return "max_iters";
        case SolveStatus::max_backtracks: return "max_backtracks";
        case SolveStatus::infeasible_start: return "infeasible_start";
    }
    return "unknown";
}

struct SolveResult {
    Point x_final;
    SolveStatus status = SolveStatus::max_iters;
    double final_residual = kPlusInf;
    std::vector<IterationRecord> trace;
    double phi_final = kPlusInf;
};

// Fixed-point residual used by the in-loop termination test:
// || (x_new - x_prev) / gamma - grad_new + grad_prev ||. The norm bounds the
// distance of 0 from the regular subdifferential of phi at x_new.
inline double termination_residual(const Point& x_prev, const Point& x_new, double gamma,
                                   const Point& grad_prev, const Point& grad_new) {
    if (!(gamma > 0.0)) throw std::invalid_argument("termination_residual: gamma must be > 0");
    double s = 0.0;
    for (std::size_t i = 0; i < x_prev.size(); ++i) {
        const double d = (x_new[i] - x_prev[i]) / gamma - grad_new[i] + grad_prev[i];
        s += d * d;
    }
    return std::sqrt(s);
}

struct StepOutcome {
    enum class Kind { accepted, terminated, backtrack_limit };
    Kind kind = Kind::backtrack_limit;
    Point x;          // trial point (empty for backtrack_limit)
    Point grad;       // gradient at x
    double gamma = 0.0;
    double residual = 0.0;
    double phi = 0.0;
    double step_norm = 0.0;
    int backtracks = 0;
};

// One outer iteration: proximal gradient trials from x_prev, starting at
// gamma_init and shrinking by beta until either the termination residual
// drops to epsilon (checked before the acceptance test, inside the loop) or
// the merit-based acceptance test passes. The merit is frozen while
// backtracking. For a terminated trial phi is evaluated only for reporting.
inline StepOutcome take_step(Problem& problem, const Point& x_prev, const Point& grad_prev,
                             double merit_prev, double gamma_init, const SolverConfig& cfg) {
    double gamma = gamma_init;
    int backtracks = 0;
    Point base(x_prev.size());
    for (;;) {
        for (std::size_t i = 0; i < base.size(); ++i) base[i] = x_prev[i] - gamma * grad_prev[i];
        Point trial = problem.prox(base, gamma);
        Point grad_trial = problem.gradient(trial);
        const double residual = termination_residual(x_prev, trial, gamma, grad_prev, grad_trial);
        const double step_sq = squared_distance(trial, x_prev);

        StepOutcome out;
        out.gamma = gamma;
        out.residual = residual;
        out.step_norm = std::sqrt(step_sq);
        out.backtracks = backtracks;

        if (residual <= cfg.epsilon) {
            out.kind = StepOutcome::Kind::terminated;
            out.phi = problem.objective(trial);
            out.x = std::move(trial);
            out.grad = std::move(grad_trial);
            return out;
        }

        const double phi = problem.objective(trial);
        if (accept_trial(phi, merit_prev, gamma, cfg.alpha, step_sq)) {
            out.kind = StepOutcome::Kind::accepted;
            out.phi = phi;
            out.x = std::move(trial);
            out.grad = std::move(grad_trial);
            return out;
        }

        if (backtracks == cfg.max_backtracks) {
            out.kind = StepOutcome::Kind::backtrack_limit;
            out.phi = phi;
            return out;
        }
        ++backtracks;
        gamma *= cfg.beta;
    }
}

// Full driver. The gradient at the incumbent is carried over from the trial
// that produced it, so each trial costs exactly one prox, one gradient and
// one objective evaluation.
inline SolveResult solve(Problem& problem, const Point& x0, const SolverConfig& cfg) {
    cfg.validate();
    if (static_cast<int>(x0.size()) != problem.dim())
        throw std::invalid_argument("solve: starting point dimension mismatch");

    SolveResult result;
    const double phi0 = problem.objective(x0);
    if (!std::isfinite(phi0)) {
        result.x_final = x0;
        result.status = SolveStatus::infeasible_start;
        result.phi_final = phi0;
        return result;
    }

    Point x = x0;
    Point grad = problem.gradient(x);
    MeritState merit = MeritState::init(cfg.flavor, cfg.effective_p(), cfg.window, phi0);
    StepsizeRule rule(cfg.stepsize);

    const auto push_row = [&](std::int64_t k, double gamma, double phi, double merit_value,
                              double residual, int backtracks, double step_norm) {
        const EvalCounters& c = problem.counters();
        result.trace.push_back({k, gamma, phi, merit_value, residual, backtracks, step_norm,
                                c.prox_evals, c.grad_evals, c.f_evals, c.g_evals});
    };
    push_row(0, std::clamp(1.0, cfg.gamma_min, cfg.gamma_max), phi0, phi0, kPlusInf, 0, 0.0);

    for (std::int64_t k = 1; k <= cfg.max_iters; ++k) {
        const double gamma_trial = rule.propose(cfg.gamma_min, cfg.gamma_max);
        StepOutcome out = take_step(problem, x, grad, merit.value(), gamma_trial, cfg);

        if (out.kind == StepOutcome::Kind::terminated) {
            // The merit update never runs for the terminated point; Phi stays put.
            push_row(k, out.gamma, out.phi, merit.value(), out.residual, out.backtracks,
                     out.step_norm);
            result.x_final = std::move(out.x);
            result.status = SolveStatus::converged;
            result.final_residual = out.residual;
            result.phi_final = out.phi;
            return result;
        }
        if (out.kind == StepOutcome::Kind::backtrack_limit) {
            result.x_final = std::move(x);
            result.status = SolveStatus::max_backtracks;
            result.final_residual = result.trace.back().residual;
            result.phi_final = result.trace.back().phi;
            return result;
        }

        merit.update(out.phi);
        rule.accepted(out.gamma, diff(out.x, x), diff(out.grad, grad));
        push_row(k, out.gamma, out.phi, merit.value(), out.residual, out.backtracks,
                 out.step_norm);
        x = std::move(out.x);
        grad = std::move(out.grad);
    }

    result.x_final = std::move(x);
    result.status = SolveStatus::max_iters;
    result.final_residual = result.trace.back().residual;
    result.phi_final = result.trace.back().phi;
    return result;
}

}  // namespace proxgrad

#endif
