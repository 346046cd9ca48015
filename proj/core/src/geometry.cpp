#include "wpt/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wpt {

void validate(const WireSpec& wire) {
    if (!(wire.diameter > 0.0) || !std::isfinite(wire.diameter)) {
        throw std::invalid_argument("wire diameter must be positive");
    }
    if (!(wire.conductivity > 0.0) || !std::isfinite(wire.conductivity)) {
        throw std::invalid_argument("wire conductivity must be positive");
    }
}

void validate(const LoopCoil& coil) {
    validate(coil.wire);
    if (!(coil.od > coil.wire.diameter)) {
        throw std::invalid_argument("loop od must exceed the wire diameter");
    }
}

void validate(const SpiralCoil& coil) {
    validate(coil.wire);
    if (coil.turns < 1) {
        throw std::invalid_argument("spiral turn count must be at least 1");
    }
    if (!(coil.pitch >= 0.0) || !std::isfinite(coil.pitch)) {
        throw std::invalid_argument("spiral pitch must be non-negative");
    }
    if (!(coil.od > 0.0)) {
        throw std::invalid_argument("spiral od must be positive");
    }
    if (!(inner_diameter(coil) > 0.0)) {
        throw std::invalid_argument(
            "spiral inner diameter is not positive: od - 2*(turns-1)*(wire+pitch) = " +
            std::to_string(inner_diameter(coil)));
    }
}

double inner_diameter(const SpiralCoil& coil) {
    return coil.od - 2.0 * (coil.turns - 1) * (coil.wire.diameter + coil.pitch);
}

std::vector<double> turn_radii(const SpiralCoil& coil) {
    validate(coil);
    const double advance = coil.wire.diameter + coil.pitch;
    std::vector<double> radii(static_cast<std::size_t>(coil.turns));
    for (int i = 0; i < coil.turns; ++i) {
        radii[static_cast<std::size_t>(i)] = coil.od / 2.0 - (coil.turns - 1 - i) * advance;
    }
    return radii;
}

std::vector<double> turn_radii(const LoopCoil& coil) {
    validate(coil);
    return {coil.od / 2.0};
}

double wire_length(const SpiralCoil& coil) {
    validate(coil);
    return 0.5 * coil.turns * std::numbers::pi * (coil.od + inner_diameter(coil));
}

double wire_length(const LoopCoil& coil) {
    validate(coil);
    return std::numbers::pi * coil.od;
}

}  // namespace wpt
