#ifndef PROXGRAD_TESTS_SUPPORT_HPP
#define PROXGRAD_TESTS_SUPPORT_HPP

// Shared oracles and instrumentation for the test suites. Everything here is
// deliberately independent of the closed forms it is used to check: proxes
// are minimized by brute force on a grid, gradients by central differences.

#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "proxgrad/problem.hpp"
#include "proxgrad/vec.hpp"

namespace testsupport {

// Brute-force scalar prox: argmin over an n_points grid on [lo, hi] of
// g(z) + (z - x)^2 / (2 gamma).
inline double grid_prox_minimizer(const std::function<double(double)>& g, double x, double gamma,
                                  double lo, double hi, int n_points) {
    double best_z = lo;
    double best_cost = proxgrad::kPlusInf;
    const double step = (hi - lo) / static_cast<double>(n_points);
    for (int i = 0; i <= n_points; ++i) {
        const double z = lo + step * i;
        const double cost = g(z) + (z - x) * (z - x) / (2.0 * gamma);
        if (cost < best_cost) {
            best_cost = cost;
            best_z = z;
        }
    }
    return best_z;
}

struct OracleLog {
    std::uint64_t f_calls = 0;
    std::uint64_t grad_calls = 0;
    std::uint64_t g_calls = 0;
    std::uint64_t prox_calls = 0;
    std::vector<proxgrad::Point> prox_outputs;  // every trial point, in order
};

// Wraps a problem's terms with counting/recording shims so tests can compare
// the Problem counters with ground truth and replay the trial sequence.
inline proxgrad::Problem instrument(const proxgrad::SmoothTerm& f,
                                    const proxgrad::NonsmoothTerm& g,
                                    std::shared_ptr<OracleLog> log) {
    proxgrad::SmoothTerm fi;
    fi.dim = f.dim;
    fi.value = [log, f](const proxgrad::Point& x) {
        ++log->f_calls;
        return f.value(x);
    };
    fi.gradient = [log, f](const proxgrad::Point& x) {
        ++log->grad_calls;
        return f.gradient(x);
    };
    proxgrad::NonsmoothTerm gi;
    gi.dim = g.dim;
    gi.value = [log, g](const proxgrad::Point& x) {
        ++log->g_calls;
        return g.value(x);
    };
    gi.prox = [log, g](const proxgrad::Point& x, double gamma) {
        ++log->prox_calls;
        proxgrad::Point z = g.prox(x, gamma);
        log->prox_outputs.push_back(z);
        return z;
    };
    gi.subdiff_residual = g.subdiff_residual;
    return proxgrad::Problem(std::move(fi), std::move(gi));
}

// 1D smooth term 0.5 * a * (x - c)^2; with a != 1 the proximal gradient
// iteration takes several steps, which keeps line-search paths nontrivial.
inline proxgrad::SmoothTerm quad1d(double a, double c) {
    proxgrad::SmoothTerm f;
    f.dim = 1;
    f.value = [a, c](const proxgrad::Point& x) { return 0.5 * a * (x[0] - c) * (x[0] - c); };
    f.gradient = [a, c](const proxgrad::Point& x) { return proxgrad::Point{a * (x[0] - c)}; };
    return f;
}

// Diagonal quadratic 0.5 * sum_i a_i (x_i - c_i)^2.
inline proxgrad::SmoothTerm quad_diag(std::vector<double> a, std::vector<double> c) {
    proxgrad::SmoothTerm f;
    f.dim = static_cast<int>(a.size());
    f.value = [a, c](const proxgrad::Point& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - c[i];
            s += a[i] * d * d;
        }
        return 0.5 * s;
    };
    f.gradient = [a, c](const proxgrad::Point& x) {
        proxgrad::Point g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = a[i] * (x[i] - c[i]);
        return g;
    };
    return f;
}

}  // namespace testsupport

#endif
