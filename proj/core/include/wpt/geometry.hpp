#pragma once

#include <vector>

namespace wpt {

// Round conductor. Lengths in meters, conductivity in S/m.
struct WireSpec {
    double diameter = 0.0;
    double conductivity = 0.0;
};

// Single-turn loop of outer diameter od.
struct LoopCoil {
    double od = 0.0;
    WireSpec wire;
};

// Planar single-layer spiral. `pitch` is the gap between adjacent turns, so
// the radial advance per turn is wire.diameter + pitch. Turns wind inward
// from od: the inner diameter is od - 2*(turns-1)*(wire.diameter + pitch).
struct SpiralCoil {
    double od = 0.0;
    int turns = 0;
    double pitch = 0.0;
    WireSpec wire;
};

// Throw std::invalid_argument when an invariant is violated.
void validate(const WireSpec& wire);
void validate(const LoopCoil& coil);
void validate(const SpiralCoil& coil);

double inner_diameter(const SpiralCoil& coil);

// Per-turn radii, innermost first: r_i = od/2 - (turns-1-i)*(w+p), so the
// last element is od/2 and adjacent radii differ by exactly w+p.
std::vector<double> turn_radii(const SpiralCoil& coil);
std::vector<double> turn_radii(const LoopCoil& coil);  // { od/2 }

double wire_length(const SpiralCoil& coil);  // N*pi*(od + id)/2
double wire_length(const LoopCoil& coil);    // pi*od

}  // namespace wpt
