#include "kelvin_oracle.hpp"

#include <cmath>

namespace wpt::test {

namespace {
const long double kPi = 3.14159265358979323846264338327950288L;
const long double kSqrt2 = 1.41421356237309504880168872420969808L;
}  // namespace

KelvinRef kelvin_ref_series(long double x) {
    const long double h = x / 2.0L;
    const long double h4 = h * h * h * h;
    KelvinRef ref{1.0L, 0.0L, 0.0L, 0.0L, 0.0L, 0.0L};
    if (x == 0.0L) return ref;

    // ber0 = sum (-1)^m h^{4m} / ((2m)!)^2, derivative term-wise.
    long double term = 1.0L;
    for (int m = 1; m <= 200; ++m) {
        term *= h4 / ((2.0L * m - 1.0L) * (2.0L * m - 1.0L) * (2.0L * m) * (2.0L * m));
        const long double signed_term = (m % 2 == 0) ? term : -term;
        ref.ber0 += signed_term;
        ref.ber0_prime += signed_term * (2.0L * m) / h;
        if (term < 1e-24L * std::fabs(ref.ber0) && m > 3) break;
    }
    // bei0 = sum (-1)^m h^{4m+2} / ((2m+1)!)^2
    term = h * h;
    for (int m = 0; m <= 200; ++m) {
        if (m > 0) {
            term *= h4 / ((2.0L * m) * (2.0L * m) * (2.0L * m + 1.0L) * (2.0L * m + 1.0L));
        }
        const long double signed_term = (m % 2 == 0) ? term : -term;
        ref.bei0 += signed_term;
        ref.bei0_prime += signed_term * (2.0L * m + 1.0L) / h;
        if (term < 1e-24L * std::fabs(ref.bei0) && m > 3) break;
    }
    // ber2 = sum (-1)^m h^{4m+4} / ((2m+1)! (2m+3)!)
    term = h4 / 6.0L;
    for (int m = 0; m <= 200; ++m) {
        if (m > 0) {
            term *= h4 / ((2.0L * m) * (2.0L * m + 1.0L) * (2.0L * m + 2.0L) * (2.0L * m + 3.0L));
        }
        ref.ber2 += (m % 2 == 0) ? term : -term;
        if (term < 1e-24L * std::fabs(ref.ber2) && m > 3) break;
    }
    // bei2 = sum (-1)^{m+1} h^{4m+2} / ((2m)! (2m+2)!)
    term = h * h / 2.0L;
    for (int m = 0; m <= 200; ++m) {
        if (m > 0) {
            term *= h4 / ((2.0L * m - 1.0L) * (2.0L * m) * (2.0L * m + 1.0L) * (2.0L * m + 2.0L));
        }
        ref.bei2 += (m % 2 == 0) ? -term : term;
        if (term < 1e-24L * std::fabs(ref.bei2) && m > 3) break;
    }
    return ref;
}

namespace {

struct Pair {
    long double re, im;
};

// ber_nu + i bei_nu ~ e^{x/sqrt2}/sqrt(2 pi x) sum_k (a_k/x^k) e^{i phi_k}
//                   + e^{-x/sqrt2}/sqrt(2 pi x) sum_k (a_k/x^k) e^{-i psi_k}
// phi_k = x/sqrt2 + nu pi/2 - pi/8 + 3 pi k / 4
// psi_k = x/sqrt2 + nu pi/2 + 5 pi/8 + pi k / 4
// a_k(nu) = a_{k-1} (4 nu^2 - (2k-1)^2) / (8k)
Pair asymptotic_order(int nu, long double x) {
    const long double envelope = std::exp(x / kSqrt2) / std::sqrt(2.0L * kPi * x);
    const long double sub_envelope = std::exp(-x / kSqrt2) / std::sqrt(2.0L * kPi * x);
    const long double base = x / kSqrt2 + nu * kPi / 2.0L;
    const long double four_nu_sq = 4.0L * nu * nu;

    long double re = 0.0L, im = 0.0L;
    long double coeff = 1.0L;
    long double prev = 1e30L;
    for (int k = 0; k <= 40; ++k) {
        if (k > 0) {
            const long double odd = 2.0L * k - 1.0L;
            coeff *= (four_nu_sq - odd * odd) / (8.0L * k * x);
        }
        const long double mag = std::fabs(coeff);
        if (mag > prev) break;
        prev = mag;
        const long double phi = base - kPi / 8.0L + 3.0L * kPi * k / 4.0L;
        const long double psi = base + 5.0L * kPi / 8.0L + kPi * k / 4.0L;
        re += envelope * coeff * std::cos(phi) + sub_envelope * coeff * std::cos(psi);
        im += envelope * coeff * std::sin(phi) - sub_envelope * coeff * std::sin(psi);
        if (mag < 1e-24L) break;
    }
    return {re, im};
}

}  // namespace

KelvinRef kelvin_ref_asymptotic(long double x) {
    const Pair j0 = asymptotic_order(0, x);
    const Pair j1 = asymptotic_order(1, x);
    const Pair j2 = asymptotic_order(2, x);
    KelvinRef ref{};
    ref.ber0 = j0.re;
    ref.bei0 = j0.im;
    // ber0' = (ber1 + bei1)/sqrt2, bei0' = (bei1 - ber1)/sqrt2
    ref.ber0_prime = (j1.re + j1.im) / kSqrt2;
    ref.bei0_prime = (j1.im - j1.re) / kSqrt2;
    ref.ber2 = j2.re;
    ref.bei2 = j2.im;
    return ref;
}

KelvinRef kelvin_ref(long double x) {
    return x < 40.0L ? kelvin_ref_series(x) : kelvin_ref_asymptotic(x);
}

}  // namespace wpt::test
