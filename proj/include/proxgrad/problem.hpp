#ifndef PROXGRAD_PROBLEM_HPP
#define PROXGRAD_PROBLEM_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "proxgrad/vec.hpp"

namespace proxgrad {

inline constexpr double kPlusInf = std::numeric_limits<double>::infinity();

// Thrown when a user-supplied oracle produces an invalid value (NaN where a
// real is required, -inf from the nonsmooth term, non-finite gradient
// entries). Usage errors such as dimension mismatches throw
// std::invalid_argument instead.
class OracleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Smooth component f: real-valued and differentiable on the whole space.
struct SmoothTerm {
    int dim = 0;
    std::function<double(const Point&)> value;
    std::function<Point(const Point&)> gradient;
};

// Nonsmooth component g: proper, lower semicontinuous and prox-bounded.
// value() may return +inf outside dom g, never NaN or -inf. prox(x, gamma)
// returns one minimizer of g(z) + ||z - x||^2 / (2 gamma); where the
// minimizer set is not a singleton any fixed selection is fine, but the
// output must always lie in dom g. subdiff_residual(x, v), when present,
// returns dist(-v, dg(x)); it is wired up only for terms where the
// subdifferential has a usable closed form.
struct NonsmoothTerm {
    int dim = 0;
    std::function<double(const Point&)> value;
    std::function<Point(const Point&, double)> prox;
    std::function<double(const Point&, const Point&)> subdiff_residual;
};

struct EvalCounters {
    std::uint64_t f_evals = 0;
    std::uint64_t grad_evals = 0;
    std::uint64_t g_evals = 0;
    std::uint64_t prox_evals = 0;
};

// Composite objective phi = f + g with per-instance evaluation tallies.
// Counters belong to the Problem instance; concurrent solves must each own
// their Problem. The oracles themselves are expected to be stateless.
class Problem {
  public:
    Problem(SmoothTerm f, NonsmoothTerm g)
        : f_(std::move(f)), g_(std::move(g)) {
        if (f_.dim <= 0 || f_.dim != g_.dim)
            throw std::invalid_argument("Problem: smooth/nonsmooth dimension mismatch");
        if (!f_.value || !f_.gradient || !g_.value || !g_.prox)
            throw std::invalid_argument("Problem: missing oracle");
    }

    int dim() const { return f_.dim; }
    const SmoothTerm& smooth() const { return f_; }
    const NonsmoothTerm& nonsmooth() const { return g_; }
    const EvalCounters& counters() const { return counters_; }
    void reset_counters() { counters_ = EvalCounters{}; }

    double smooth_value(const Point& x) {
        check_input(x);
        ++counters_.f_evals;
        const double v = f_.value(x);
        if (!std::isfinite(v)) throw OracleError("smooth term returned a non-finite value");
        return v;
    }

    Point gradient(const Point& x) {
        check_input(x);
        ++counters_.grad_evals;
        Point g = f_.gradient(x);
        if (static_cast<int>(g.size()) != dim())
            throw OracleError("gradient oracle returned wrong dimension");
        if (!all_finite(g)) throw OracleError("gradient oracle returned NaN/Inf");
        return g;
    }

    double nonsmooth_value(const Point& x) {
        check_input(x);
        ++counters_.g_evals;
        const double v = g_.value(x);
        if (std::isnan(v) || v == -kPlusInf)
            throw OracleError("nonsmooth term returned NaN or -inf");
        return v;
    }

    // phi(x) = f(x) + g(x); equals +inf exactly when g(x) = +inf. f is
    // finite by contract, so the addition cannot produce NaN.
    double objective(const Point& x) {
        const double fv = smooth_value(x);
        const double gv = nonsmooth_value(x);
        return fv + gv;
    }

    Point prox(const Point& x, double gamma) {
        check_input(x);
        if (!(gamma > 0.0)) throw std::invalid_argument("prox: stepsize must be positive");
        ++counters_.prox_evals;
        Point z = g_.prox(x, gamma);
        if (static_cast<int>(z.size()) != dim())
            throw OracleError("prox oracle returned wrong dimension");
        if (!all_finite(z)) throw OracleError("prox oracle returned NaN/Inf");
        return z;
    }

    bool has_subdiff_residual() const { return static_cast<bool>(g_.subdiff_residual); }

    // dist(-v, dg(x)); typically called with v = grad f(x).
    double subdiff_residual(const Point& x, const Point& v) const {
        if (!g_.subdiff_residual)
            throw std::invalid_argument("subdiff_residual not available for this nonsmooth term");
        return g_.subdiff_residual(x, v);
    }

  private:
    void check_input(const Point& x) const {
        if (static_cast<int>(x.size()) != dim())
            throw std::invalid_argument("point dimension does not match problem");
        if (!all_finite(x))
            throw std::invalid_argument("point passed to an oracle has NaN/Inf entries");
    }

    SmoothTerm f_;
    NonsmoothTerm g_;
    EvalCounters counters_;
};

// Central-difference check of a gradient oracle. Returns the maximum over
// coordinates of |fd_i - grad_i| / max(1, |grad_i|).
inline double check_gradient_fd(const SmoothTerm& f, const Point& x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("check_gradient_fd: h must be positive");
    const Point g = f.gradient(x);
    Point xp = x;
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        xp[i] = xi + h;
        const double fp = f.value(xp);
        xp[i] = xi - h;
        const double fm = f.value(xp);
        xp[i] = xi;
        const double fd = (fp - fm) / (2.0 * h);
        const double rel = std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i]));
        worst = std::max(worst, rel);
    }
    return worst;
}

}  // namespace proxgrad

#endif
