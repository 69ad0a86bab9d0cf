#ifndef PROXGRAD_VEC_HPP
#define PROXGRAD_VEC_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace proxgrad {

// Decision variables are flat dense arrays of doubles. Matrix-shaped
// unknowns are flattened column-major (see dictlearn.hpp for the (D, C)
// packing used by the dictionary-learning problem).
using Point = std::vector<double>;

inline double dot(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double squared_norm(const Point& a) { return dot(a, a); }

inline double norm(const Point& a) { return std::sqrt(squared_norm(a)); }

inline double squared_distance(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline Point diff(const Point& a, const Point& b) {
    Point d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

inline bool all_finite(const Point& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace proxgrad

#endif
