#include "wpt/kelvin.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace wpt {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// ber_nu(x) + i bei_nu(x) = J_nu(x e^{3 pi i / 4}), and the order-0
// derivative pair is -e^{3 pi i / 4} J_1 at the same argument. Both branches
// below produce J_0, J_1, J_2 at z = x e^{3 pi i / 4} and assemble the six
// outputs the same way.

// Asymptotic branch: J_nu = (H1_nu + H2_nu)/2 with the Hankel expansions
//   H1,2 ~ sqrt(2/(pi z)) e^{+-i w} sum_k (+-i)^k a_k(nu) / z^k,
//   w = z - nu pi/2 - pi/4,  a_k(nu) = prod_{j<=k} (4 nu^2 - (2j-1)^2)/(8j).
// Keeping both pieces retains the e^{-x/sqrt(2)} mode, so accuracy at the
// branch switch is limited only by the min-term truncation.
Complex hankel_series(int nu, Complex z, double sign) {
    const double four_nu_sq = 4.0 * nu * nu;
    const Complex rot = Complex(0.0, sign) / z;
    Complex term(1.0, 0.0);
    Complex sum(1.0, 0.0);
    double smallest = 1.0;
    for (int k = 1; k <= 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (four_nu_sq - odd * odd) / (8.0 * k) * rot;
        const double mag = std::abs(term);
        if (mag > smallest) break;  // divergent tail reached
        smallest = mag;
        sum += term;
        if (mag < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

Complex jnu_asymptotic(int nu, Complex z) {
    const Complex omega = z - Complex(nu * kPi / 2.0 + kPi / 4.0, 0.0);
    const Complex prefactor = std::sqrt(2.0 / (kPi * z));
    const Complex i(0.0, 1.0);
    const Complex h1 = std::exp(i * omega) * hankel_series(nu, z, +1.0);
    const Complex h2 = std::exp(-i * omega) * hankel_series(nu, z, -1.0);
    return 0.5 * prefactor * (h1 + h2);
}

Complex jnu_series(int nu, Complex z) {
    // J_nu(z) = (z/2)^nu sum_k (-z^2/4)^k / (k! (k+nu)!)
    const Complex q = -z * z / 4.0;
    double factorial_ratio = 1.0;
    for (int j = 1; j <= nu; ++j) factorial_ratio *= j;
    Complex term = std::pow(z / 2.0, nu) / factorial_ratio;
    Complex sum = term;
    for (int k = 1; k <= 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + nu));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

KelvinEval assemble(Complex j0, Complex j1, Complex j2) {
    const Complex rot = std::polar(1.0, 3.0 * kPi / 4.0);
    const Complex d0 = -rot * j1;
    KelvinEval out;
    out.ber0 = j0.real();
    out.bei0 = j0.imag();
    out.ber0_prime = d0.real();
    out.bei0_prime = d0.imag();
    out.ber2 = j2.real();
    out.bei2 = j2.imag();
    return out;
}

}  // namespace

namespace detail {

KelvinEval kelvin_series(double x) {
    if (x == 0.0) return KelvinEval{};
    const Complex z = std::polar(x, 3.0 * kPi / 4.0);
    return assemble(jnu_series(0, z), jnu_series(1, z), jnu_series(2, z));
}

KelvinEval kelvin_asymptotic(double x) {
    const Complex z = std::polar(x, 3.0 * kPi / 4.0);
    return assemble(jnu_asymptotic(0, z), jnu_asymptotic(1, z), jnu_asymptotic(2, z));
}

}  // namespace detail

KelvinEval kelvin(double x) {
    if (!std::isfinite(x) || x < 0.0) {
        throw std::invalid_argument("kelvin: argument must be finite and non-negative");
    }
    return x < kKelvinSeriesAsymptoticSwitch ? detail::kelvin_series(x)
                                             : detail::kelvin_asymptotic(x);
}

}  // namespace wpt
