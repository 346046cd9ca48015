#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wpt/network.hpp"

namespace wpt {

// Returns a copy of sys with the IC replaced by `ic` (retuned to sys.f0)
// and/or moved to TXC-IC separation d.
SystemConfig with_ic(const SystemConfig& sys, const SpiralCoil& ic);
SystemConfig with_ic_location(const SystemConfig& sys, double d_txc_ic);

struct LocationPoint {
    double location = 0.0;  // m, TXC-IC separation
    std::optional<double> s21_mag;
    std::string error;  // set when this point failed
};

// |S21| at f0 for IC positions loc_lo, loc_lo+step, ..., <= loc_hi.
// Failed points are marked, not dropped.
std::vector<LocationPoint> location_sweep(const SystemConfig& sys, const SpiralCoil& ic,
                                          double loc_lo, double loc_hi, double step);

struct CellError {
    std::size_t row = 0;
    std::size_t col = 0;
    std::string message;
};

struct Heatmap {
    std::vector<double> od_axis;   // m, one row per IC outer diameter
    std::vector<double> loc_axis;  // m, one column per TXC-IC separation
    std::vector<double> values;    // row-major |S21| at f0; NaN marks a failed cell
    std::vector<CellError> errors;

    double at(std::size_t row, std::size_t col) const { return values[row * loc_axis.size() + col]; }
};

// Grid of |S21| at f0 over IC size x location. ic_template supplies turns,
// pitch and wire; only the outer diameter varies. Cells are independent;
// `threads` > 1 evaluates them concurrently with deterministic assembly.
Heatmap size_location_heatmap(const SystemConfig& sys, const SpiralCoil& ic_template,
                              std::span<const double> od_list, std::span<const double> locations,
                              int threads = 1);

// Root of k(TXC,IC at d) - k(RXC,IC at D-d) by bisection to 0.01 mm. The
// criterion uses the spiral-to-spiral couplings only. Throws NumericalError
// when there is no sign change on the search interval.
double find_equal_coupling_location(const SystemConfig& sys, const SpiralCoil& ic);

struct LocationOptimum {
    double location = 0.0;  // m
    double s21_mag = 0.0;
};

// Coarse scan at `coarse_step`, then golden-section refinement of the best
// bracket down to 0.01 mm.
LocationOptimum find_max_s21_location(const SystemConfig& sys, const SpiralCoil& ic,
                                      double coarse_step);

struct OptimumReport {
    double ic_od = 0.0;              // m
    double loc_equal_coupling = 0.0; // m
    double loc_max_s21 = 0.0;        // m
    double s21_at_max = 0.0;
    double k_txc_ic_at_eq = 0.0;
    double k_rxc_ic_at_eq = 0.0;
    double k_txc_ic_at_max = 0.0;
    double k_rxc_ic_at_max = 0.0;
};

struct SizeScan {
    double best_od = 0.0;  // m, the OD whose per-OD optimum has the largest |S21|
    std::vector<OptimumReport> reports;
};

// Per-OD optimum locations and values; requires at least three sizes so the
// profile can express an interior maximum.
SizeScan optimal_size_scan(const SystemConfig& sys, const SpiralCoil& ic_template,
                           std::span<const double> od_list, double coarse_step,
                           int threads = 1);

struct MeasurementSample {
    double ic_od = 0.0;    // m
    double location = 0.0; // m
    double s21_mag = 0.0;
};

struct MeasurementSeries {
    std::vector<MeasurementSample> samples;
};

struct ResidualRow {
    double ic_od = 0.0;
    double loc_sim = 0.0;
    double loc_meas = 0.0;
    double loc_delta = 0.0;          // sim - meas, m
    double loc_delta_pct_span = 0.0; // 100 * loc_delta / span
    double s21_sim = 0.0;
    double s21_meas = 0.0;
    double s21_delta = 0.0;
};

struct ResidualReport {
    std::vector<ResidualRow> rows;
    double mean_abs_loc_delta = 0.0;      // m
    double max_abs_loc_delta = 0.0;       // m
    double mean_abs_loc_delta_pct = 0.0;  // percent of span
};

// Per-OD comparison of simulated optima against a measured series: for each
// simulated OD, the measured optimum is the highest-|S21| sample among rows
// with a matching OD (nearest-grid match within od_tol). Throws
// std::invalid_argument when the overlap is empty.
ResidualReport compare_with_measurement(std::span<const OptimumReport> simulated,
                                        const MeasurementSeries& measured, double span,
                                        double od_tol = 1e-4);

}  // namespace wpt
