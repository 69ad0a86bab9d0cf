#ifndef PROXGRAD_STEPSIZE_HPP
#define PROXGRAD_STEPSIZE_HPP

#include <algorithm>
#include <optional>
#include <utility>

#include "proxgrad/vec.hpp"

namespace proxgrad {

enum class StepsizeKind { plain, spectral };

// Barzilai-Borwein two-point estimate <dx,dx>/<dx,dg> from the last accepted
// step dx = x_k - x_{k-1} and gradient change dg. Empty when dx = 0 or the
// curvature <dx,dg> is not positive.
inline std::optional<double> bb_stepsize(const Point& dx, const Point& dg) {
    const double sts = dot(dx, dx);
    if (sts == 0.0) return std::nullopt;
    const double sty = dot(dx, dg);
    if (!(sty > 0.0)) return std::nullopt;
    return sts / sty;
}

// Per-solve trial-stepsize state. The first proposal is 1; afterwards
// "plain" carries over the last accepted gamma and "spectral" uses the BB
// estimate of the last accepted step, falling back to the carried gamma when
// no estimate exists. Proposals are clamped into [gamma_min, gamma_max]
// after the fallback.
class StepsizeRule {
  public:
    explicit StepsizeRule(StepsizeKind kind) : kind_(kind) {}

    double propose(double gamma_min, double gamma_max) const {
        double g = gamma_prev_;
        if (kind_ == StepsizeKind::spectral && have_pair_) {
            if (const auto bb = bb_stepsize(dx_, dg_)) g = *bb;
        }
        return std::clamp(g, gamma_min, gamma_max);
    }

    // Record an accepted iteration: the gamma that survived backtracking and
    // the (dx, dg) pair of accepted iterates. Trial points discarded by the
    // line search never reach this.
    void accepted(double gamma_used, Point dx, Point dg) {
        gamma_prev_ = gamma_used;
        dx_ = std::move(dx);
        dg_ = std::move(dg);
        have_pair_ = true;
    }

    StepsizeKind kind() const { return kind_; }
    double carried_gamma() const { return gamma_prev_; }

  private:
    StepsizeKind kind_;
    double gamma_prev_ = 1.0;
    bool have_pair_ = false;
    Point dx_;
    Point dg_;
};

}  // namespace proxgrad

#endif
