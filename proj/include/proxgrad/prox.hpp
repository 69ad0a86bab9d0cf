#ifndef PROXGRAD_PROX_HPP
#define PROXGRAD_PROX_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "proxgrad/problem.hpp"
#include "proxgrad/vec.hpp"

namespace proxgrad {

// Closed-form proximal mappings for the shipped nonsmooth terms, all
// separable across coordinates or matrix columns. Each prox returns a single
// point; where the underlying argmin is set-valued the selection rules are:
//   - hard threshold at the tie x^2 = 2*gamma*lambda: keep x;
//   - projection of a zero column onto the unit sphere: first basis vector.

// Soft threshold, g = lambda * ||.||_1.
inline Point prox_l1(const Point& x, double gamma, double lambda) {
    if (!(gamma > 0.0)) throw std::invalid_argument("prox_l1: gamma must be positive");
    const double t = gamma * lambda;
    Point z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = std::abs(x[i]) - t;
        z[i] = a > 0.0 ? (x[i] > 0.0 ? a : -a) : 0.0;
    }
    return z;
}

// Hard threshold, g = lambda * ||.||_0. Keeps x_i iff x_i^2 >= 2*gamma*lambda.
inline Point prox_l0(const Point& x, double gamma, double lambda) {
    if (!(gamma > 0.0)) throw std::invalid_argument("prox_l0: gamma must be positive");
    const double t = 2.0 * gamma * lambda;
    Point z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        z[i] = x[i] * x[i] < t ? 0.0 : x[i];
    return z;
}

inline double l1_value(const Point& x, double lambda) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return lambda * s;
}

inline double l0_value(const Point& x, double lambda) {
    std::size_t nnz = 0;
    for (double v : x) nnz += v != 0.0;
    return lambda * static_cast<double>(nnz);
}

// Column-major layout of a point packing a dictionary D (n x atoms) followed
// by a coefficient matrix C (atoms x signals).
struct DictBlockLayout {
    int n = 0;        // rows of D (signal dimension)
    int atoms = 0;    // columns of D, rows of C
    int signals = 0;  // columns of C
    int d_size() const { return n * atoms; }
    int c_size() const { return atoms * signals; }
    int total() const { return d_size() + c_size(); }
};

// Projection onto {columns of unit Euclidean norm}; the prox of the
// corresponding indicator for any gamma > 0. x holds a rows x cols matrix
// column-major. A zero column maps to the first standard basis vector.
inline Point prox_unit_sphere_columns(const Point& x, int rows, int cols, double gamma = 1.0) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("prox_unit_sphere_columns: gamma must be positive");
    if (static_cast<int>(x.size()) != rows * cols)
        throw std::invalid_argument("prox_unit_sphere_columns: size does not match rows*cols");
    Point z(x.size());
    for (int j = 0; j < cols; ++j) {
        const std::size_t off = static_cast<std::size_t>(j) * rows;
        double nrm2 = 0.0;
        for (int i = 0; i < rows; ++i) nrm2 += x[off + i] * x[off + i];
        if (nrm2 == 0.0) {
            for (int i = 0; i < rows; ++i) z[off + i] = 0.0;
            z[off] = 1.0;
        } else {
            const double inv = 1.0 / std::sqrt(nrm2);
            for (int i = 0; i < rows; ++i) z[off + i] = x[off + i] * inv;
        }
    }
    return z;
}

// Tolerance used when evaluating the unit-column indicator: prox outputs
// are normalized only up to roundoff, and the indicator has to accept them.
inline constexpr double kSphereFeasTol = 1e-8;

// 0 if every column of the rows x cols matrix has unit norm within
// kSphereFeasTol, +inf otherwise.
inline double unit_sphere_columns_value(const Point& x, int rows, int cols) {
    for (int j = 0; j < cols; ++j) {
        const std::size_t off = static_cast<std::size_t>(j) * rows;
        double nrm2 = 0.0;
        for (int i = 0; i < rows; ++i) nrm2 += x[off + i] * x[off + i];
        if (std::abs(std::sqrt(nrm2) - 1.0) > kSphereFeasTol) return kPlusInf;
    }
    return 0.0;
}

// Block prox for the dictionary-learning regularizer: unit-sphere projection
// on the D block, hard threshold on the C block. g is block-separable, so
// this is the exact prox of the sum.
inline Point prox_dictlearn(const Point& x, double gamma, double lambda,
                            const DictBlockLayout& layout) {
    if (static_cast<int>(x.size()) != layout.total())
        throw std::invalid_argument("prox_dictlearn: point does not match layout");
    const Point d(x.begin(), x.begin() + layout.d_size());
    const Point c(x.begin() + layout.d_size(), x.end());
    Point zd = prox_unit_sphere_columns(d, layout.n, layout.atoms, gamma);
    const Point zc = prox_l0(c, gamma, lambda);
    zd.insert(zd.end(), zc.begin(), zc.end());
    return zd;
}

inline double dictlearn_reg_value(const Point& x, double lambda, const DictBlockLayout& layout) {
    if (static_cast<int>(x.size()) != layout.total())
        throw std::invalid_argument("dictlearn_reg_value: point does not match layout");
    const Point d(x.begin(), x.begin() + layout.d_size());
    const double sphere = unit_sphere_columns_value(d, layout.n, layout.atoms);
    if (sphere == kPlusInf) return kPlusInf;
    const Point c(x.begin() + layout.d_size(), x.end());
    return l0_value(c, lambda);
}

// Euclidean distance from -v to the subdifferential of lambda*||.||_1 at x.
// Coordinate-wise: {lambda*sign(x_i)} for x_i != 0, [-lambda, lambda] at 0.
inline double subdiff_residual_l1(const Point& x, const Point& v, double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d;
        if (x[i] != 0.0)
            d = std::abs(-v[i] - (x[i] > 0.0 ? lambda : -lambda));
        else
            d = std::max(std::abs(v[i]) - lambda, 0.0);
        s += d * d;
    }
    return std::sqrt(s);
}

// ----- NonsmoothTerm factories -----------------------------------------

inline NonsmoothTerm make_zero_term(int dim) {
    NonsmoothTerm g;
    g.dim = dim;
    g.value = [](const Point&) { return 0.0; };
    g.prox = [](const Point& x, double) { return x; };
    return g;
}

inline NonsmoothTerm make_l1_term(int dim, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("make_l1_term: lambda must be >= 0");
    NonsmoothTerm g;
    g.dim = dim;
    g.value = [lambda](const Point& x) { return l1_value(x, lambda); };
    g.prox = [lambda](const Point& x, double gamma) { return prox_l1(x, gamma, lambda); };
    g.subdiff_residual = [lambda](const Point& x, const Point& v) {
        return subdiff_residual_l1(x, v, lambda);
    };
    return g;
}

inline NonsmoothTerm make_l0_term(int dim, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("make_l0_term: lambda must be >= 0");
    NonsmoothTerm g;
    g.dim = dim;
    g.value = [lambda](const Point& x) { return l0_value(x, lambda); };
    g.prox = [lambda](const Point& x, double gamma) { return prox_l0(x, gamma, lambda); };
    return g;
}

inline NonsmoothTerm make_dictlearn_term(const DictBlockLayout& layout, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("make_dictlearn_term: lambda must be >= 0");
    NonsmoothTerm g;
    g.dim = layout.total();
    g.value = [layout, lambda](const Point& x) { return dictlearn_reg_value(x, lambda, layout); };
    g.prox = [layout, lambda](const Point& x, double gamma) {
        return prox_dictlearn(x, gamma, lambda, layout);
    };
    return g;
}

}  // namespace proxgrad

#endif
