#pragma once

// Globally adaptive Gauss-Kronrod quadrature on top of Boost's 31-point rule.
// Neither endpoint is ever evaluated, which the Bose-type integrands rely on.
//
// Boost's own adaptive driver halves the absolute tolerance at every level of
// bisection and compares it to an unscaled error.  Spectral integrands
// computed from a numerically solved profile carry rounding noise near the
// point where the occupation dies out, and that scheme then bisects every
// branch to full depth.  Here the interval with the
// largest error is split until the summed error meets the tolerance, so noise
// in a negligible tail costs a bounded amount of work.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "broadband/errors.hpp"

namespace broadband::detail {

inline constexpr double kQuadratureTolerance = 1e-10;
inline constexpr int kMaxPanels = 400;
// Accepted when the rule stalls on noise: far below any tolerance we report.
inline constexpr double kStallTolerance = 1e-7;
// The spectral integrals are dimensionless and of order one; an absolute error
// below this never shows in a reported factor.
inline constexpr double kAbsoluteFloor = 1e-12;

struct Estimate {
    double value = 0.0;
    double error = 0.0;

    Estimate& operator+=(const Estimate& o) {
        value += o.value;
        error += o.error;
        return *this;
    }
};

/// Throws ConvergenceError when the estimate is not good to the stall
/// tolerance, NumericError when it is not finite.
inline double checked(const Estimate& e, double rel_tol = kQuadratureTolerance) {
    if (!std::isfinite(e.value)) throw NumericError("quadrature: non-finite integrand");
    if (e.error > std::max(rel_tol, kStallTolerance) * std::abs(e.value) && e.error > kAbsoluteFloor) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "quadrature: error estimate %.3g on %.6g", e.error, e.value);
        throw ConvergenceError(buf);
    }
    return e.value;
}

template <class F>
Estimate integrate_estimate(F&& f, double a, double b, double rel_tol = kQuadratureTolerance) {
    if (!(b > a)) return {};
    using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    // With zero depth Boost returns the bare rule; its error estimate is for
    // the rule mapped to [-1, 1] and still needs the half-width.
    auto panel = [&](double lo, double hi) {
        double err = 0.0;
        const double v = Rule::integrate(f, lo, hi, 0, 0.0, &err);
        return Panel{lo, hi, v, 0.5 * (hi - lo) * err};
    };

    std::priority_queue<Panel> heap;
    heap.push(panel(a, b));
    double total = heap.top().value;
    double error = heap.top().error;
    int panels = 1;
    while (error > rel_tol * std::abs(total) && panels < kMaxPanels) {
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        const Panel left = panel(worst.a, mid);
        const Panel right = panel(mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    // Re-sum to shed the drift of the running updates.
    total = 0.0;
    error = 0.0;
    for (; !heap.empty(); heap.pop()) {
        total += heap.top().value;
        error += heap.top().error;
    }
    return {total, error};
}

template <class F>
double integrate(F&& f, double a, double b, double rel_tol = kQuadratureTolerance) {
    return checked(integrate_estimate(f, a, b, rel_tol), rel_tol);
}

/// Integral over (0, b] of a function with at most a logarithmic singularity
/// at the origin.  The first percent of the interval is integrated in the
/// variable u = ln x down to x = 1e-15 b; what lies below is O(1e-15 b ln b).
template <class F>
Estimate integrate_from_zero(F&& f, double b, double rel_tol = kQuadratureTolerance) {
    if (!(b > 0.0)) return {};
    const double split = 1e-2 * b;
    const double floor = 1e-15 * b;
    auto in_log = [&](double u) {
        const double x = std::exp(u);
        return f(x) * x;
    };
    Estimate e = integrate_estimate(in_log, std::log(floor), std::log(split), rel_tol);
    e += integrate_estimate(f, split, b, rel_tol);
    return e;
}

}  // namespace broadband::detail
