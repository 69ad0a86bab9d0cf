#ifndef PROXGRAD_MERIT_HPP
#define PROXGRAD_MERIT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <stdexcept>

namespace proxgrad {

enum class MeritFlavor { monotone, average, max };

// Line-search acceptance test: a trial with objective phi_new and squared
// step step_sq taken with stepsize gamma is accepted against the previous
// merit iff phi_new <= merit_prev - (1 - alpha) / (2 gamma) * step_sq.
// The comparison is exact; phi_new = +inf is always rejected.
inline bool accept_trial(double phi_new, double merit_prev, double gamma, double alpha,
                         double step_sq) {
    return phi_new <= merit_prev - (1.0 - alpha) / (2.0 * gamma) * step_sq;
}

// The merit value the line search compares against. Monotone and average
// flavors track the scalar recursion Phi_k = (1 - p) Phi_{k-1} + p phi_k
// (monotone is p = 1, so Phi_k = phi_k). The max flavor keeps the last
// window + 1 accepted objective values and uses their maximum.
class MeritState {
  public:
    static MeritState init(MeritFlavor flavor, double p, int window, double phi0) {
        if (!std::isfinite(phi0))
            throw std::invalid_argument("merit init requires a feasible starting point");
        if (flavor != MeritFlavor::max && !(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("merit averaging weight must lie in (0, 1]");
        if (flavor == MeritFlavor::max && window < 0)
            throw std::invalid_argument("merit window must be nonnegative");
        MeritState s;
        s.flavor_ = flavor;
        s.p_ = flavor == MeritFlavor::monotone ? 1.0 : p;
        s.capacity_ = static_cast<std::size_t>(window) + 1;
        s.scalar_ = phi0;
        if (flavor == MeritFlavor::max) s.history_.push_back(phi0);
        return s;
    }

    MeritFlavor flavor() const { return flavor_; }
    double averaging_weight() const { return p_; }

    double value() const {
        if (flavor_ != MeritFlavor::max) return scalar_;
        double m = history_.front();
        for (double v : history_) m = std::max(m, v);
        return m;
    }

    // Record an accepted objective value.
    void update(double phi_new) {
        if (flavor_ == MeritFlavor::max) {
            history_.push_back(phi_new);
            if (history_.size() > capacity_) history_.pop_front();
        } else {
            scalar_ = (1.0 - p_) * scalar_ + p_ * phi_new;
        }
    }

  private:
    MeritFlavor flavor_ = MeritFlavor::average;
    double p_ = 1.0;
    std::size_t capacity_ = 1;
    double scalar_ = 0.0;
    std::deque<double> history_;
};

}  // namespace proxgrad

#endif
