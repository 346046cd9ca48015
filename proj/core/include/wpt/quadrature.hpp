#pragma once

#include <cmath>
#include <utility>

#include "wpt/errors.hpp"

namespace wpt {

namespace detail {

template <typename F>
double simpson_recurse(F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * eps || b - a < 1e-14 * (std::abs(a) + std::abs(b))) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        throw NumericalError("adaptive Simpson: interval subdivision limit reached");
    }
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with Richardson error control. The tolerance handed to the
// recursion is max(abs_tol, rel_tol * |coarse estimate|); the absolute floor
// keeps near-zero integrals from demanding unbounded refinement.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double rel_tol, double abs_tol,
                        int max_depth = 60) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw std::invalid_argument("adaptive_simpson: requires a <= b");
    }
    // Coarse composite Simpson (16 intervals) for the tolerance scale.
    constexpr int kCoarse = 16;
    const double h = (b - a) / kCoarse;
    double coarse = 0.0;
    for (int i = 0; i < kCoarse; ++i) {
        const double x0 = a + i * h;
        coarse += h / 6.0 * (f(x0) + 4.0 * f(x0 + 0.5 * h) + f(x0 + h));
    }
    const double eps = std::max(abs_tol, rel_tol * std::abs(coarse));

    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, eps, max_depth);
}

}  // namespace wpt
