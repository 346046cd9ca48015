#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "wpt/electromagnetics.hpp"

namespace wpt {

// Five-element chain, in order: TXL(0) - TXC(1) - IC(2) - RXC(3) - RXL(4).
// Only adjacent couplings are modeled; non-adjacent mutuals are neglected.
struct SystemConfig {
    ResonantElement txl;
    ResonantElement txc;
    ResonantElement ic;
    ResonantElement rxc;
    ResonantElement rxl;
    double d_txl_txc = 0.0;  // m
    double d_txc_ic = 0.0;   // m, the swept IC location (TXC plane to IC plane)
    double d_txc_rxc = 0.0;  // m, fixed TXC-to-RXC span
    double d_rxc_rxl = 0.0;  // m
    double f0 = 0.0;         // Hz
    double r_source = 50.0;  // ohm
    double r_load = 50.0;    // ohm
    PhysicalConstants constants;
};

// Throws std::invalid_argument on violated invariants, including elements
// not tuned to f0 (resonance checked to 1e-12 relative).
void validate(const SystemConfig& sys);

// The four adjacent mutual inductances (H). Geometry-only; frequency sweeps
// reuse one set.
struct CouplingSet {
    double m_txl_txc = 0.0;
    double m_txc_ic = 0.0;
    double m_ic_rxc = 0.0;
    double m_rxc_rxl = 0.0;
};
CouplingSet compute_couplings(const SystemConfig& sys);

// Symmetric pentadiagonal 5x5 mesh-impedance matrix at frequency f.
// Diagonals: R_p + j w L + 1/(j w C), with r_source added at (0,0) and
// r_load at (4,4). Off-diagonals: j w M for the four adjacent pairs.
struct ImpedanceMatrix {
    double f = 0.0;
    std::array<std::array<std::complex<double>, 5>, 5> z{};
};

ImpedanceMatrix build_impedance_matrix(const SystemConfig& sys, const CouplingSet& couplings,
                                       double f);
ImpedanceMatrix build_impedance_matrix(const SystemConfig& sys, double f);

// Solves Z I = [v_source, 0, 0, 0, 0]^T with partial pivoting. Throws
// NumericalError when the condition estimate exceeds 1e14 or the residual
// ||Z I - V|| / ||V|| cannot be brought below 1e-10.
std::array<std::complex<double>, 5> solve_mesh_currents(const ImpedanceMatrix& z,
                                                        double v_source);

// V_load/V_source by the closed-form elimination of the pentadiagonal system
// (product numerator over the eight-term determinant). Kept as an
// independent cross-check of the general solve. Throws NumericalError when
// the denominator vanishes.
std::complex<double> voltage_gain_closed_form(const ImpedanceMatrix& z, double r_load);

struct PortResponse {
    double f = 0.0;
    std::complex<double> v_gain;  // V_load / V_source
    std::complex<double> s21;     // 2 (V_load/V_source) sqrt(r_source/r_load)
    std::array<std::complex<double>, 5> mesh_currents;  // A, for V_source = 1 V
};

PortResponse s21_at(const SystemConfig& sys, const CouplingSet& couplings, double f);
PortResponse s21(const SystemConfig& sys, double f);
PortResponse s21(const SystemConfig& sys);  // at f0

enum class GridSpacing { kLinear, kLog };

struct FrequencyPoint {
    double f = 0.0;
    std::optional<PortResponse> response;
    std::string error;  // set when this point failed; the sweep continues
};

std::vector<FrequencyPoint> frequency_sweep(const SystemConfig& sys, double f_lo, double f_hi,
                                            int n_points, GridSpacing spacing = GridSpacing::kLinear);

}  // namespace wpt
