#include "wpt/csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "wpt/errors.hpp"

namespace wpt {

namespace {

constexpr double kMToMm = 1e3;

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_field(const std::string& text, std::size_t row, const char* column) {
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(value)) {
        throw ConfigError("row " + std::to_string(row) + ": cannot parse " + column + " value '" +
                          text + "'");
    }
    return value;
}

}  // namespace

std::string format_sig9(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    return buffer;
}

void write_heatmap_csv(std::ostream& out, const Heatmap& map) {
    out << "ic_od_mm,separation_mm,s21_mag\n";
    for (std::size_t row = 0; row < map.od_axis.size(); ++row) {
        for (std::size_t col = 0; col < map.loc_axis.size(); ++col) {
            const double value = map.at(row, col);
            out << format_sig9(map.od_axis[row] * kMToMm) << ','
                << format_sig9(map.loc_axis[col] * kMToMm) << ',';
            if (!std::isnan(value)) out << format_sig9(value);
            out << '\n';
        }
    }
}

std::size_t write_heatmap_error_log(std::ostream& out, const Heatmap& map) {
    for (const CellError& error : map.errors) {
        out << "cell od=" << format_sig9(map.od_axis[error.row] * kMToMm)
            << "mm separation=" << format_sig9(map.loc_axis[error.col] * kMToMm)
            << "mm: " << error.message << '\n';
    }
    return map.errors.size();
}

void write_location_sweep_csv(std::ostream& out, double ic_od,
                              std::span<const LocationPoint> points) {
    out << "ic_od_mm,separation_mm,s21_mag\n";
    for (const LocationPoint& point : points) {
        out << format_sig9(ic_od * kMToMm) << ',' << format_sig9(point.location * kMToMm) << ',';
        if (point.s21_mag) out << format_sig9(*point.s21_mag);
        out << '\n';
    }
}

std::size_t write_location_sweep_error_log(std::ostream& out, double ic_od,
                                           std::span<const LocationPoint> points) {
    std::size_t count = 0;
    for (const LocationPoint& point : points) {
        if (point.error.empty()) continue;
        out << "point od=" << format_sig9(ic_od * kMToMm)
            << "mm separation=" << format_sig9(point.location * kMToMm) << "mm: " << point.error
            << '\n';
        ++count;
    }
    return count;
}

void write_spectrum_csv(std::ostream& out, std::span<const FrequencyPoint> points) {
    out << "freq_hz,s21_mag,s21_db\n";
    for (const FrequencyPoint& point : points) {
        out << format_sig9(point.f) << ',';
        if (point.response) {
            const double mag = std::abs(point.response->s21);
            out << format_sig9(mag) << ',' << format_sig9(20.0 * std::log10(mag));
        } else {
            out << ',';
        }
        out << '\n';
    }
}

std::size_t write_spectrum_error_log(std::ostream& out, std::span<const FrequencyPoint> points) {
    std::size_t count = 0;
    for (const FrequencyPoint& point : points) {
        if (point.error.empty()) continue;
        out << "point f=" << format_sig9(point.f) << "Hz: " << point.error << '\n';
        ++count;
    }
    return count;
}

void write_optimum_csv(std::ostream& out, std::span<const OptimumReport> reports) {
    out << "ic_od_mm,loc_equal_coupling_mm,loc_max_s21_mm,s21_at_max,"
           "k_txc_ic_at_eq,k_rxc_ic_at_eq,k_txc_ic_at_max,k_rxc_ic_at_max\n";
    for (const OptimumReport& report : reports) {
        out << format_sig9(report.ic_od * kMToMm) << ','
            << format_sig9(report.loc_equal_coupling * kMToMm) << ','
            << format_sig9(report.loc_max_s21 * kMToMm) << ','
            << format_sig9(report.s21_at_max) << ',' << format_sig9(report.k_txc_ic_at_eq) << ','
            << format_sig9(report.k_rxc_ic_at_eq) << ',' << format_sig9(report.k_txc_ic_at_max)
            << ',' << format_sig9(report.k_rxc_ic_at_max) << '\n';
    }
}

void write_residual_csv(std::ostream& out, const ResidualReport& report) {
    out << "ic_od_mm,loc_sim_mm,loc_meas_mm,loc_delta_mm,loc_delta_pct_span,"
           "s21_sim,s21_meas,s21_delta\n";
    for (const ResidualRow& row : report.rows) {
        out << format_sig9(row.ic_od * kMToMm) << ',' << format_sig9(row.loc_sim * kMToMm) << ','
            << format_sig9(row.loc_meas * kMToMm) << ',' << format_sig9(row.loc_delta * kMToMm)
            << ',' << format_sig9(row.loc_delta_pct_span) << ',' << format_sig9(row.s21_sim)
            << ',' << format_sig9(row.s21_meas) << ',' << format_sig9(row.s21_delta) << '\n';
    }
}

MeasurementSeries read_measurement_csv(std::istream& in, std::vector<std::string>* warnings) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("measurement csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "ic_od_mm,separation_mm,s21_mag") {
        throw ConfigError("measurement csv: expected header 'ic_od_mm,separation_mm,s21_mag'");
    }

    MeasurementSeries series;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 3) {
            throw ConfigError("row " + std::to_string(row_no) + ": expected 3 fields, got " +
                              std::to_string(fields.size()));
        }
        if (fields[2].empty()) continue;  // failed cell carried over from a heatmap
        MeasurementSample sample;
        const double od_mm = parse_field(fields[0], row_no, "ic_od_mm");
        const double sep_mm = parse_field(fields[1], row_no, "separation_mm");
        sample.s21_mag = parse_field(fields[2], row_no, "s21_mag");
        if (warnings != nullptr) {
            if (od_mm < 1.0 || od_mm > 5000.0) {
                warnings->push_back("row " + std::to_string(row_no) + ": ic_od_mm = " +
                                    fields[0] + " looks implausible; expected millimeters");
            }
            if (sep_mm < 0.5 || sep_mm > 10000.0) {
                warnings->push_back("row " + std::to_string(row_no) + ": separation_mm = " +
                                    fields[1] + " looks implausible; expected millimeters");
            }
        }
        if (sample.s21_mag < 0.0 || sample.s21_mag > 1.0) {
            throw ConfigError("row " + std::to_string(row_no) +
                              ": s21_mag must lie in [0, 1], got " + fields[2]);
        }
        sample.ic_od = od_mm / kMToMm;
        sample.location = sep_mm / kMToMm;
        series.samples.push_back(sample);
    }
    if (series.samples.empty()) throw ConfigError("measurement csv: no data rows");
    return series;
}

}  // namespace wpt
