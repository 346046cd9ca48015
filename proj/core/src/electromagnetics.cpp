#include "wpt/electromagnetics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wpt/kelvin.hpp"
#include "wpt/quadrature.hpp"

namespace wpt {

namespace {
constexpr double kPi = std::numbers::pi;
}

double self_inductance_spiral(const SpiralCoil& coil) {
    validate(coil);
    const double advance = coil.turns * (coil.wire.diameter + coil.pitch);
    const double diff = coil.od - advance;
    if (!(diff > 0.0)) {
        throw std::invalid_argument("spiral self-inductance: od - N*(w+p) must be positive");
    }
    const double n = static_cast<double>(coil.turns);
    return n * n * diff * diff / (16.0 * coil.od + 28.0 * advance) * 39.37e-6;
}

double self_inductance_loop(const LoopCoil& coil) {
    validate(coil);
    const double log_term = std::log(4.0 * coil.od / coil.wire.diameter) - 1.75;
    if (!(log_term > 0.0)) {
        throw std::invalid_argument("loop self-inductance: ln(4 od/w) must exceed 1.75");
    }
    return 2.0 * kPi * coil.od * log_term * 1e-7;
}

double mutual_inductance(std::span<const double> radii_a, std::span<const double> radii_b,
                         double distance, const PhysicalConstants& constants) {
    if (radii_a.empty() || radii_b.empty()) {
        throw std::invalid_argument("mutual inductance: empty turn-radius list");
    }
    for (double r : radii_a) {
        if (!(r > 0.0)) throw std::invalid_argument("mutual inductance: radii must be positive");
    }
    for (double r : radii_b) {
        if (!(r > 0.0)) throw std::invalid_argument("mutual inductance: radii must be positive");
    }
    if (!(distance >= 0.0)) {
        throw std::invalid_argument("mutual inductance: distance must be non-negative");
    }
    if (distance == 0.0) {
        for (double ra : radii_a) {
            for (double rb : radii_b) {
                if (ra == rb) {
                    throw std::invalid_argument(
                        "mutual inductance: coincident turn radii at zero distance are singular");
                }
            }
        }
    }

    // Canonical operand order makes M(A,B,d) == M(B,A,d) bit-for-bit.
    if (std::lexicographical_compare(radii_b.begin(), radii_b.end(), radii_a.begin(),
                                     radii_a.end())) {
        std::swap(radii_a, radii_b);
    }

    const double d_sq = distance * distance;
    double total = 0.0;
    for (double ra : radii_a) {
        for (double rb : radii_b) {
            const double scale = constants.mu0 * ra * rb;
            const double sum_sq = ra * ra + rb * rb + d_sq;
            const double cross = 2.0 * ra * rb;
            auto integrand = [&](double theta) {
                const double c = std::cos(theta);
                return c / std::sqrt(sum_sq - cross * c);
            };
            total += scale * adaptive_simpson(integrand, 0.0, kPi, 1e-8, 1e-18 / scale);
        }
    }
    return total;
}

double coupling_coefficient(double m_ab, double l_a, double l_b) {
    if (!(l_a > 0.0) || !(l_b > 0.0)) {
        throw std::invalid_argument("coupling coefficient: self-inductances must be positive");
    }
    return m_ab / std::sqrt(l_a * l_b);
}

double tuning_capacitance(double inductance, double f0) {
    if (!(inductance > 0.0) || !(f0 > 0.0)) {
        throw std::invalid_argument("tuning capacitance: inductance and f0 must be positive");
    }
    const double omega0 = 2.0 * kPi * f0;
    return 1.0 / (omega0 * omega0 * inductance);
}

double skin_depth(double f, double sigma, const PhysicalConstants& constants) {
    if (!(f > 0.0) || !(sigma > 0.0)) {
        throw std::invalid_argument("skin depth: frequency and conductivity must be positive");
    }
    return 1.0 / std::sqrt(kPi * f * sigma * constants.mu0);
}

namespace detail {

double skin_resistance_factor(double gamma) {
    const KelvinEval k = kelvin(gamma);
    if (gamma == 0.0) return 1.0;
    const double numerator = k.ber0 * k.bei0_prime - k.bei0 * k.ber0_prime;
    const double denominator = k.ber0_prime * k.ber0_prime + k.bei0_prime * k.bei0_prime;
    return gamma / 2.0 * numerator / denominator;
}

double proximity_resistance_factor(double gamma) {
    const KelvinEval k = kelvin(gamma);
    if (gamma == 0.0) return 0.0;
    const double numerator = k.ber2 * k.ber0_prime + k.bei2 * k.bei0_prime;
    const double denominator = k.ber0 * k.ber0 + k.bei0 * k.bei0;
    return -2.0 * kPi * gamma / 2.0 * numerator / denominator;
}

}  // namespace detail

std::vector<double> turn_radii(const Coil& coil) {
    return std::visit([](const auto& c) { return turn_radii(c); }, coil);
}

double wire_length(const Coil& coil) {
    return std::visit([](const auto& c) { return wire_length(c); }, coil);
}

double self_inductance(const Coil& coil) {
    if (const auto* loop = std::get_if<LoopCoil>(&coil)) return self_inductance_loop(*loop);
    return self_inductance_spiral(std::get<SpiralCoil>(coil));
}

double dc_resistance(const Coil& coil) {
    const WireSpec wire = std::visit([](const auto& c) { return c.wire; }, coil);
    const double radius = wire.diameter / 2.0;
    return wire_length(coil) / (wire.conductivity * kPi * radius * radius);
}

double ac_parasitic_resistance(const Coil& coil, double f, const PhysicalConstants& constants) {
    const WireSpec wire = std::visit([](const auto& c) { return c.wire; }, coil);
    const double delta = skin_depth(f, wire.conductivity, constants);
    const double gamma = wire.diameter / (delta * std::numbers::sqrt2);
    const double r_dc = dc_resistance(coil);
    return r_dc * (detail::skin_resistance_factor(gamma) +
                   detail::proximity_resistance_factor(gamma));
}

ResonantElement make_resonant_element(const Coil& coil, double f0,
                                      const PhysicalConstants& constants) {
    std::visit([](const auto& c) { validate(c); }, coil);
    if (!(f0 > 0.0)) throw std::invalid_argument("resonant element: f0 must be positive");
    ResonantElement element;
    element.coil = coil;
    element.self_l = self_inductance(coil);
    element.tuning_c = tuning_capacitance(element.self_l, f0);
    element.r_parasitic = ac_parasitic_resistance(coil, f0, constants);
    return element;
}

}  // namespace wpt
