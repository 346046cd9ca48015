#include "wpt/runner.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "wpt/csv.hpp"
#include "wpt/errors.hpp"

namespace wpt {

namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RunConfig load_config(const RunOptions& options) {
    if (options.config_path && options.preset) {
        throw ConfigError("give either --config or --preset, not both");
    }
    if (options.config_path) {
        std::ifstream in(*options.config_path);
        if (!in) throw IoError("cannot open config file '" + *options.config_path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        return parse_config(text.str());
    }
    if (options.preset) {
        if (*options.preset == "symmetric") return symmetric_preset();
        if (*options.preset == "asymmetric") return asymmetric_preset();
        throw ConfigError("unknown preset '" + *options.preset +
                          "' (expected symmetric or asymmetric)");
    }
    throw ConfigError("a configuration is required: --config <path> or --preset <name>");
}

fs::path prepare_out_path(const RunOptions& options, const std::string& name) {
    const fs::path dir(options.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir / name;
}

std::ofstream open_out_file(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file '" + path.string() + "'");
    return out;
}

void finish_out_file(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void print_element_row(std::ostream& out, const char* name, const ResonantElement& element) {
    const double od = std::visit([](const auto& c) { return c.od; }, element.coil);
    out << name << "  od_mm=" << format_sig9(od * 1e3) << "  L_H=" << format_sig9(element.self_l)
        << "  C_F=" << format_sig9(element.tuning_c)
        << "  R_p_ohm=" << format_sig9(element.r_parasitic) << '\n';
}

ExitCode run_simulate(const RunConfig& cfg, const RunOptions& options, std::ostream& out) {
    const SystemConfig sys = build_system(cfg);
    const CouplingSet couplings =
        options.zero_coupling ? CouplingSet{} : compute_couplings(sys);

    print_element_row(out, "txl", sys.txl);
    print_element_row(out, "txc", sys.txc);
    print_element_row(out, "ic ", sys.ic);
    print_element_row(out, "rxc", sys.rxc);
    print_element_row(out, "rxl", sys.rxl);
    out << "k_txl_txc=" << format_sig9(coupling_coefficient(couplings.m_txl_txc, sys.txl.self_l,
                                                            sys.txc.self_l))
        << "  k_txc_ic=" << format_sig9(coupling_coefficient(couplings.m_txc_ic, sys.txc.self_l,
                                                             sys.ic.self_l))
        << "  k_ic_rxc=" << format_sig9(coupling_coefficient(couplings.m_ic_rxc, sys.ic.self_l,
                                                             sys.rxc.self_l))
        << "  k_rxc_rxl=" << format_sig9(coupling_coefficient(couplings.m_rxc_rxl, sys.rxc.self_l,
                                                              sys.rxl.self_l))
        << '\n';
    const PortResponse response = s21_at(sys, couplings, sys.f0);
    out << "s21_mag_at_f0=" << format_sig9(std::abs(response.s21))
        << "  f0_hz=" << format_sig9(sys.f0) << '\n';
    return ExitCode::kOk;
}

ExitCode run_freq_sweep(const RunConfig& cfg, const RunOptions& options, std::ostream& out,
                        std::ostream& err) {
    SystemConfig sys = build_system(cfg);
    const double f_lo = cfg.f_lo > 0.0 ? cfg.f_lo : 0.7 * cfg.f0;
    const double f_hi = cfg.f_hi > 0.0 ? cfg.f_hi : 1.3 * cfg.f0;

    std::vector<FrequencyPoint> points;
    if (options.zero_coupling) {
        const CouplingSet zero{};
        points.resize(static_cast<std::size_t>(cfg.f_points));
        for (int i = 0; i < cfg.f_points; ++i) {
            const double t = static_cast<double>(i) / (cfg.f_points - 1);
            const double f = cfg.f_spacing == GridSpacing::kLinear
                                 ? f_lo + t * (f_hi - f_lo)
                                 : std::exp(std::log(f_lo) + t * (std::log(f_hi) - std::log(f_lo)));
            points[static_cast<std::size_t>(i)].f = f;
            points[static_cast<std::size_t>(i)].response = s21_at(sys, zero, f);
        }
    } else {
        points = frequency_sweep(sys, f_lo, f_hi, cfg.f_points, cfg.f_spacing);
    }

    const fs::path csv_path = prepare_out_path(options, cfg.spectrum_csv);
    std::ofstream csv = open_out_file(csv_path);
    write_spectrum_csv(csv, points);
    finish_out_file(csv, csv_path);
    out << "wrote " << csv_path.string() << " (" << points.size() << " points)\n";

    std::size_t failures = 0;
    for (const FrequencyPoint& p : points) failures += p.error.empty() ? 0 : 1;
    if (failures > 0) {
        const fs::path log_path = prepare_out_path(options, cfg.error_log);
        std::ofstream log = open_out_file(log_path);
        write_spectrum_error_log(log, points);
        finish_out_file(log, log_path);
        err << failures << " frequency points failed; see " << log_path.string() << '\n';
        return ExitCode::kNumericalError;
    }
    return ExitCode::kOk;
}

ExitCode run_location_sweep(const RunConfig& cfg, const RunOptions& options, std::ostream& out,
                            std::ostream& err) {
    const SystemConfig sys = build_system(cfg);
    const std::vector<double> grid = location_grid(cfg);
    Heatmap map = size_location_heatmap(sys, cfg.ic, std::span(&cfg.ic.od, 1), grid,
                                        options.threads);

    const fs::path csv_path = prepare_out_path(options, cfg.heatmap_csv);
    std::ofstream csv = open_out_file(csv_path);
    write_heatmap_csv(csv, map);
    finish_out_file(csv, csv_path);
    out << "wrote " << csv_path.string() << " (1 od x " << grid.size() << " locations)\n";

    if (!map.errors.empty()) {
        const fs::path log_path = prepare_out_path(options, cfg.error_log);
        std::ofstream log = open_out_file(log_path);
        write_heatmap_error_log(log, map);
        finish_out_file(log, log_path);
        err << map.errors.size() << " points failed; see " << log_path.string() << '\n';
        return ExitCode::kNumericalError;
    }
    return ExitCode::kOk;
}

ExitCode run_heatmap(const RunConfig& cfg, const RunOptions& options, std::ostream& out,
                     std::ostream& err) {
    const SystemConfig sys = build_system(cfg);
    const std::vector<double> grid = location_grid(cfg);
    Heatmap map = size_location_heatmap(sys, cfg.ic, cfg.od_list, grid, options.threads);

    const fs::path csv_path = prepare_out_path(options, cfg.heatmap_csv);
    std::ofstream csv = open_out_file(csv_path);
    write_heatmap_csv(csv, map);
    finish_out_file(csv, csv_path);
    out << "wrote " << csv_path.string() << " (" << cfg.od_list.size() << " ods x " << grid.size()
        << " locations)\n";

    if (!map.errors.empty()) {
        const fs::path log_path = prepare_out_path(options, cfg.error_log);
        std::ofstream log = open_out_file(log_path);
        write_heatmap_error_log(log, map);
        finish_out_file(log, log_path);
        err << map.errors.size() << " cells failed; see " << log_path.string() << '\n';
        return ExitCode::kNumericalError;
    }
    return ExitCode::kOk;
}

SizeScan scan_for(const RunConfig& cfg, const RunOptions& options) {
    const SystemConfig sys = build_system(cfg);
    return optimal_size_scan(sys, cfg.ic, cfg.od_list, cfg.coarse_step, options.threads);
}

void print_scan_summary(const RunConfig& cfg, const SizeScan& scan, std::ostream& out) {
    out << "best_od_mm=" << format_sig9(scan.best_od * 1e3);
    for (const OptimumReport& r : scan.reports) {
        if (r.ic_od == scan.best_od) {
            out << "  s21_at_best=" << format_sig9(r.s21_at_max)
                << "  loc_max_s21_mm=" << format_sig9(r.loc_max_s21 * 1e3);
            break;
        }
    }
    out << '\n';
    if (cfg.reference_optimum_od) {
        out << "reference_od_mm=" << format_sig9(*cfg.reference_optimum_od * 1e3)
            << "  delta_mm=" << format_sig9((scan.best_od - *cfg.reference_optimum_od) * 1e3)
            << "  (model neglects non-adjacent couplings; offsets of several percent"
               " against bench data are expected)\n";
    }
}

ExitCode run_optimize(const RunConfig& cfg, const RunOptions& options, std::ostream& out) {
    const SizeScan scan = scan_for(cfg, options);
    const fs::path csv_path = prepare_out_path(options, cfg.optimum_csv);
    std::ofstream csv = open_out_file(csv_path);
    write_optimum_csv(csv, scan.reports);
    finish_out_file(csv, csv_path);
    out << "wrote " << csv_path.string() << " (" << scan.reports.size() << " ods)\n";
    print_scan_summary(cfg, scan, out);
    return ExitCode::kOk;
}

ExitCode run_compare(const RunConfig& cfg, const RunOptions& options, std::ostream& out,
                     std::ostream& err) {
    if (!cfg.measured_csv) {
        throw ConfigError("compare needs measured_csv in the [compare] section");
    }
    std::ifstream measured_in(*cfg.measured_csv);
    if (!measured_in) throw IoError("cannot open measured data '" + *cfg.measured_csv + "'");
    std::vector<std::string> warnings;
    const MeasurementSeries measured = read_measurement_csv(measured_in, &warnings);
    for (const std::string& warning : warnings) err << "warning: " << warning << '\n';
    for (const MeasurementSample& sample : measured.samples) {
        if (sample.location < 0.0 || sample.location > cfg.d_txc_rxc) {
            throw ConfigError("measured location " + format_sig9(sample.location * 1e3) +
                              " mm lies outside the configured span");
        }
    }

    const SizeScan scan = scan_for(cfg, options);
    const ResidualReport report =
        compare_with_measurement(scan.reports, measured, cfg.d_txc_rxc);

    const fs::path csv_path = prepare_out_path(options, cfg.residual_csv);
    std::ofstream csv = open_out_file(csv_path);
    write_residual_csv(csv, report);
    finish_out_file(csv, csv_path);
    out << "wrote " << csv_path.string() << " (" << report.rows.size() << " ods)\n";
    out << "mean_abs_loc_delta_mm=" << format_sig9(report.mean_abs_loc_delta * 1e3)
        << "  max_abs_loc_delta_mm=" << format_sig9(report.max_abs_loc_delta * 1e3)
        << "  mean_abs_loc_delta_pct_span=" << format_sig9(report.mean_abs_loc_delta_pct) << '\n';
    return ExitCode::kOk;
}

}  // namespace

ExitCode run_subcommand(const RunOptions& options, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = load_config(options);
        if (options.zero_coupling && options.subcommand != "simulate" &&
            options.subcommand != "freq-sweep") {
            throw ConfigError("--zero-coupling applies to simulate and freq-sweep only");
        }
        if (options.threads < 1) throw ConfigError("--threads must be at least 1");

        if (options.subcommand == "simulate") return run_simulate(cfg, options, out);
        if (options.subcommand == "freq-sweep") return run_freq_sweep(cfg, options, out, err);
        if (options.subcommand == "sweep") return run_location_sweep(cfg, options, out, err);
        if (options.subcommand == "heatmap") return run_heatmap(cfg, options, out, err);
        if (options.subcommand == "optimize") return run_optimize(cfg, options, out);
        if (options.subcommand == "compare") return run_compare(cfg, options, out, err);
        throw ConfigError("unknown subcommand '" + options.subcommand + "'");
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return ExitCode::kConfigError;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return ExitCode::kConfigError;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return ExitCode::kNumericalError;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return ExitCode::kIoError;
    } catch (const std::ios_base::failure& e) {
        err << "io error: " << e.what() << '\n';
        return ExitCode::kIoError;
    }
}

}  // namespace wpt
