#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wpt/network.hpp"
#include "wpt/sweep.hpp"

namespace wpt {

// Numeric fields are serialized with 9 significant digits. Headers are
// fixed byte-for-byte:
//   heatmap / location sweep / measurement:  ic_od_mm,separation_mm,s21_mag
//   spectrum:                                freq_hz,s21_mag,s21_db
//   optimum report:  ic_od_mm,loc_equal_coupling_mm,loc_max_s21_mm,s21_at_max,
//                    k_txc_ic_at_eq,k_rxc_ic_at_eq,k_txc_ic_at_max,k_rxc_ic_at_max
//   residuals:       ic_od_mm,loc_sim_mm,loc_meas_mm,loc_delta_mm,
//                    loc_delta_pct_span,s21_sim,s21_meas,s21_delta

std::string format_sig9(double value);

void write_heatmap_csv(std::ostream& out, const Heatmap& map);

// Sidecar log for failed cells; returns the number of entries written.
std::size_t write_heatmap_error_log(std::ostream& out, const Heatmap& map);

void write_location_sweep_csv(std::ostream& out, double ic_od,
                              std::span<const LocationPoint> points);
std::size_t write_location_sweep_error_log(std::ostream& out, double ic_od,
                                           std::span<const LocationPoint> points);

// s21_db = 20 log10(s21_mag). Failed points serialize as empty fields.
void write_spectrum_csv(std::ostream& out, std::span<const FrequencyPoint> points);
std::size_t write_spectrum_error_log(std::ostream& out, std::span<const FrequencyPoint> points);

void write_optimum_csv(std::ostream& out, std::span<const OptimumReport> reports);
void write_residual_csv(std::ostream& out, const ResidualReport& report);

// Reads the heatmap schema back as measurement samples. Malformed rows are
// reported with their 1-based row number. Values outside plausible
// millimeter ranges produce warnings; s21_mag outside [0,1] is an error.
MeasurementSeries read_measurement_csv(std::istream& in,
                                       std::vector<std::string>* warnings = nullptr);

}  // namespace wpt
