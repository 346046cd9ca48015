#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wpt/errors.hpp"
#include "wpt/network.hpp"

namespace wpt {

// Parsed run configuration. Geometry and spacings are SI (meters) here; the
// file format uses millimeters and the conversion happens once, at parse
// time.
struct RunConfig {
    WireSpec wire;
    LoopCoil txl;
    SpiralCoil txc;
    SpiralCoil ic;
    SpiralCoil rxc;
    LoopCoil rxl;

    double d_txl_txc = 0.0;
    double d_txc_ic = 0.0;
    double d_txc_rxc = 0.0;
    double d_rxc_rxl = 0.0;
    double f0 = 0.0;
    double r_source = 50.0;
    double r_load = 50.0;

    // Sweep/heatmap grids. When the location grid is not given the default
    // is 31 interior points at k*D/32, symmetric about the midpoint.
    std::vector<double> od_list;  // m
    std::optional<double> loc_lo;
    std::optional<double> loc_hi;
    std::optional<double> loc_step;
    double coarse_step = 5e-3;  // m, optimizer coarse grid

    double f_lo = 0.0;  // 0 means default 0.7*f0
    double f_hi = 0.0;  // 0 means default 1.3*f0
    int f_points = 2001;
    GridSpacing f_spacing = GridSpacing::kLinear;

    // Published measured optimum OD for this arrangement, if any; reports
    // print the delta against it.
    std::optional<double> reference_optimum_od;

    std::string heatmap_csv = "heatmap.csv";
    std::string spectrum_csv = "spectrum.csv";
    std::string optimum_csv = "optima.csv";
    std::string residual_csv = "residuals.csv";
    std::string error_log = "errors.log";
    std::optional<std::string> measured_csv;
};

// Flat key/value sections; '#' starts a comment. Unknown sections or keys
// are errors, as are missing keys without defaults. Throws ConfigError with
// a line number for syntax problems and the violated invariant for
// validation problems.
RunConfig parse_config(const std::string& text);

// The two shipped arrangements. Pitch 0.01 mm (close-wound) is an assumption:
// the build they mirror specifies equal turn spacing without a value.
RunConfig symmetric_preset();
RunConfig asymmetric_preset();

// OD sweep default: 30..200 mm in 10 mm steps.
std::vector<double> default_od_list();

// Location grid for sweeps/heatmaps: the configured lo/hi/step when present,
// otherwise 31 interior points at k*D/32, k = 1..31.
std::vector<double> location_grid(const RunConfig& cfg);

// Builds the tuned five-element system; validates everything first.
SystemConfig build_system(const RunConfig& cfg);

}  // namespace wpt
