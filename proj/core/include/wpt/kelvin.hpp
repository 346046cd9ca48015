#pragma once

namespace wpt {

// Kelvin functions ber/bei of orders 0 and 2 plus the order-0 first
// derivatives, all evaluated at the same argument. These are the pieces the
// skin- and proximity-resistance factors need.
struct KelvinEval {
    double ber0 = 1.0;
    double bei0 = 0.0;
    double ber0_prime = 0.0;
    double bei0_prime = 0.0;
    double ber2 = 0.0;
    double bei2 = 0.0;
};

// Branch switch: power series below, Hankel-type asymptotic expansion above.
// The asymptotic expansion carries a subdominant e^{-sqrt(2) x} mode whose
// truncation floor is ~2e-6 relative at x=10 but ~1e-12 at x=20, while the
// double-precision series stays below ~1e-13 relative out to x~25, so 20 is
// where both branches are clean.
inline constexpr double kKelvinSeriesAsymptoticSwitch = 20.0;

// Rejects negative or non-finite x.
KelvinEval kelvin(double x);

namespace detail {
// Both branches exposed for the handoff-continuity check.
KelvinEval kelvin_series(double x);
KelvinEval kelvin_asymptotic(double x);
}  // namespace detail

}  // namespace wpt
