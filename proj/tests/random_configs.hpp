#pragma once

// Test-only generator of randomized valid five-element systems.

#include <random>

#include "wpt/config.hpp"
#include "wpt/network.hpp"

namespace wpt::test {

inline SystemConfig random_system(std::mt19937& rng) {
    std::uniform_real_distribution<double> od_m(0.020, 0.250);
    std::uniform_int_distribution<int> turns(1, 7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> span_m(0.080, 0.300);
    std::uniform_real_distribution<double> loop_gap_m(0.001, 0.020);
    std::uniform_real_distribution<double> port_ohm(10.0, 100.0);

    const WireSpec wire{kAwg20WireDiameter, kCopperConductivity};
    auto spiral = [&] {
        SpiralCoil coil;
        coil.od = od_m(rng);
        coil.turns = turns(rng);
        coil.wire = wire;
        if (coil.turns == 1) {
            coil.pitch = unit(rng) * 1e-3;
        } else {
            // Keep both the inner diameter and od - N(w+p) positive.
            const double max_advance = coil.od / (2.0 * (coil.turns - 1));
            const double max_pitch = max_advance - wire.diameter;
            coil.pitch = (0.05 + 0.8 * unit(rng)) * std::max(max_pitch, 0.0);
        }
        return coil;
    };
    auto loop = [&] { return LoopCoil{od_m(rng), wire}; };

    SystemConfig sys;
    sys.f0 = 13.56e6;
    sys.r_source = port_ohm(rng);
    sys.r_load = port_ohm(rng);
    sys.d_txc_rxc = span_m(rng);
    sys.d_txc_ic = (0.1 + 0.8 * unit(rng)) * sys.d_txc_rxc;
    sys.d_txl_txc = loop_gap_m(rng);
    sys.d_rxc_rxl = loop_gap_m(rng);
    sys.txl = make_resonant_element(Coil(loop()), sys.f0);
    sys.txc = make_resonant_element(Coil(spiral()), sys.f0);
    sys.ic = make_resonant_element(Coil(spiral()), sys.f0);
    sys.rxc = make_resonant_element(Coil(spiral()), sys.f0);
    sys.rxl = make_resonant_element(Coil(loop()), sys.f0);
    return sys;
}

// The chain reversed end to end: elements, spacings and port resistances all
// swap sides.
inline SystemConfig mirrored(const SystemConfig& sys) {
    SystemConfig out = sys;
    out.txl = sys.rxl;
    out.txc = sys.rxc;
    out.rxc = sys.txc;
    out.rxl = sys.txl;
    out.d_txl_txc = sys.d_rxc_rxl;
    out.d_rxc_rxl = sys.d_txl_txc;
    out.d_txc_ic = sys.d_txc_rxc - sys.d_txc_ic;
    out.r_source = sys.r_load;
    out.r_load = sys.r_source;
    return out;
}

}  // namespace wpt::test
