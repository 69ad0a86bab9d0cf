#ifndef PROXGRAD_PROBLEMS_HPP
#define PROXGRAD_PROBLEMS_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "proxgrad/dictlearn.hpp"
#include "proxgrad/prox.hpp"
#include "proxgrad/rng.hpp"

namespace proxgrad {

// Built-in problem instances shared by the CLI and the test suites. Between
// them they exercise every shipped prox: l1 (lasso1d, lasso), l0 (l0reg) and
// the sphere/l0 block term (dictlearn).
struct BuiltinProblem {
    std::string name;
    Problem problem;
    Point x0;
    double lambda = 0.0;
};

// Scalar lasso with a closed-form solution: f(x) = 0.5 (x - 2)^2,
// g(x) = |x|, minimizer soft_threshold(2, 1) = 1.
inline BuiltinProblem make_lasso1d() {
    SmoothTerm f;
    f.dim = 1;
    f.value = [](const Point& x) { return 0.5 * (x[0] - 2.0) * (x[0] - 2.0); };
    f.gradient = [](const Point& x) { return Point{x[0] - 2.0}; };
    return {"lasso1d", Problem(std::move(f), make_l1_term(1, 1.0)), Point{0.0}, 1.0};
}

namespace detail {

// f(x) = 0.5 ||A x - b||^2 with a seeded well-conditioned A (entries
// N(0, 1/n) around rows of data), so runs take a nontrivial number of
// iterations. b = A x_true + small noise for a sparse planted x_true.
struct LeastSquaresData {
    int n = 0;
    std::vector<double> a;  // n x n column-major
    std::vector<double> b;
};

inline std::shared_ptr<const LeastSquaresData> make_least_squares(int n, std::uint64_t seed) {
    auto data = std::make_shared<LeastSquaresData>();
    data->n = n;
    data->a.resize(static_cast<std::size_t>(n) * n);
    Rng rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (double& v : data->a) v = rng.normal() * scale;
    std::vector<double> x_true(n, 0.0);
    for (int i = 0; i < n; ++i)
        if (rng.uniform01() < 0.1) x_true[i] = 3.0 * rng.normal();
    data->b.assign(n, 0.0);
    matmul_nn(n, n, 1, data->a.data(), x_true.data(), data->b.data());
    for (double& v : data->b) v += 0.01 * rng.normal();
    return data;
}

inline SmoothTerm least_squares_term(std::shared_ptr<const LeastSquaresData> data) {
    const int n = data->n;
    SmoothTerm f;
    f.dim = n;
    f.value = [data, n](const Point& x) {
        std::vector<double> r(n, 0.0);
        matmul_nn(n, n, 1, data->a.data(), x.data(), r.data());
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = r[i] - data->b[i];
            s += d * d;
        }
        return 0.5 * s;
    };
    f.gradient = [data, n](const Point& x) {
        std::vector<double> r(n, 0.0);
        matmul_nn(n, n, 1, data->a.data(), x.data(), r.data());
        for (int i = 0; i < n; ++i) r[i] -= data->b[i];
        Point g(n);
        matmul_tn(n, n, 1, data->a.data(), r.data(), g.data());
        return g;
    };
    return f;
}

}  // namespace detail

inline BuiltinProblem make_lasso(int n, double lambda, std::uint64_t seed) {
    auto data = detail::make_least_squares(n, seed);
    return {"lasso", Problem(detail::least_squares_term(data), make_l1_term(n, lambda)),
            Point(static_cast<std::size_t>(n), 0.0), lambda};
}

inline BuiltinProblem make_l0reg(int n, double lambda, std::uint64_t seed) {
    auto data = detail::make_least_squares(n, seed);
    return {"l0reg", Problem(detail::least_squares_term(data), make_l0_term(n, lambda)),
            Point(static_cast<std::size_t>(n), 0.0), lambda};
}

inline BuiltinProblem make_dictlearn(int n, int atoms, int signals, int nnz, double lambda,
                                     std::uint64_t seed) {
    const DictLearnInstance inst = generate_instance(n, atoms, signals, nnz, lambda, seed);
    return {"dictlearn", dictlearn_problem(inst), feasible_start(inst), lambda};
}

}  // namespace proxgrad

#endif
