#pragma once

#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "wpt/geometry.hpp"

namespace wpt {

struct PhysicalConstants {
    double mu0 = 4.0e-7 * std::numbers::pi;  // free-space permeability, H/m
};

inline constexpr double kCopperConductivity = 5.8e7;     // S/m, annealed copper
inline constexpr double kAwg20WireDiameter = 0.8128e-3;  // m

// Modified Wheeler formula for a planar spiral, lengths in meters:
//   L = N^2 (od - N(w+p))^2 / (16 od + 28 N(w+p)) * 39.37e-6   [H]
// Rejects coils where od - N(w+p) <= 0.
double self_inductance_spiral(const SpiralCoil& coil);

// Kirchhoff loop formula, natural log:
//   L = 2 pi od (ln(4 od / w) - 1.75) * 1e-7   [H]
// Rejects a nonpositive result (ln(4 od/w) <= 1.75).
double self_inductance_loop(const LoopCoil& coil);

// Mutual inductance of two coaxial filament sets at axial distance d,
// summed over all turn pairs:
//   M = sum_ij mu0 r_ai r_bj Int_0^pi cos(t) / sqrt(r_ai^2 + r_bj^2 + d^2
//       - 2 r_ai r_bj cos(t)) dt
// Each integral is evaluated adaptively to 1e-8 relative with an absolute
// floor of 1e-18 H per turn pair. Operands are evaluated in a canonical
// order so M(A,B,d) == M(B,A,d) bit-for-bit. Rejects d == 0 with coincident
// turn radii (singular integrand).
double mutual_inductance(std::span<const double> radii_a, std::span<const double> radii_b,
                         double distance, const PhysicalConstants& constants = {});

// k = M / sqrt(L_a L_b); rejects nonpositive self-inductances.
double coupling_coefficient(double m_ab, double l_a, double l_b);

// C = 1 / ((2 pi f0)^2 L)
double tuning_capacitance(double inductance, double f0);

// delta = 1 / sqrt(pi f sigma mu0)
double skin_depth(double f, double sigma, const PhysicalConstants& constants = {});

namespace detail {
// R_skin / R_DC and R_proximity / R_DC as functions of gamma = w/(delta sqrt(2)).
double skin_resistance_factor(double gamma);
double proximity_resistance_factor(double gamma);
}  // namespace detail

using Coil = std::variant<LoopCoil, SpiralCoil>;

std::vector<double> turn_radii(const Coil& coil);
double wire_length(const Coil& coil);
double self_inductance(const Coil& coil);

// R_DC = l / (sigma pi (w/2)^2)
double dc_resistance(const Coil& coil);

// R_p = R_skin + R_proximity at frequency f. The proximity term is applied
// to loops as well: it depends only on gamma, and the parasitic model treats
// every winding alike.
double ac_parasitic_resistance(const Coil& coil, double f,
                               const PhysicalConstants& constants = {});

// A coil with the lumped elements the mesh analysis needs. r_parasitic is
// evaluated at the tuning frequency and treated as a fixed component value
// in frequency sweeps.
struct ResonantElement {
    Coil coil;
    double self_l = 0.0;       // H
    double tuning_c = 0.0;     // F
    double r_parasitic = 0.0;  // ohm
};

// Builds the element tuned to f0; (2 pi f0)^2 L C = 1 holds as computed.
ResonantElement make_resonant_element(const Coil& coil, double f0,
                                      const PhysicalConstants& constants = {});

}  // namespace wpt
