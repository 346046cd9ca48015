#include <doctest.h>

#include <fstream>
#include <sstream>

#include "wpt/config.hpp"
#include "wpt/csv.hpp"

using namespace wpt;

namespace {

std::string preset_file(const char* name) {
    return std::string(WPTSIM_SOURCE_DIR) + "/presets/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::string minimal_config(const std::string& drop_line = "", const std::string& extra = "") {
    std::string text = R"([system]
f0_hz = 13.56e6
d_txl_txc_mm = 2.5
d_txc_ic_mm = 75
d_txc_rxc_mm = 150
d_rxc_rxl_mm = 2.5

[wire]
diameter_mm = 0.8128
conductivity_s_per_m = 5.8e7

[txl]
od_mm = 38
[rxl]
od_mm = 38
[txc]
od_mm = 50
turns = 7
pitch_mm = 0.01
[ic]
od_mm = 100
turns = 7
pitch_mm = 0.01
[rxc]
od_mm = 50
turns = 7
pitch_mm = 0.01
)";
    if (!drop_line.empty()) {
        const auto at = text.find(drop_line);
        REQUIRE(at != std::string::npos);
        text.erase(at, drop_line.size());
    }
    return text + extra;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("shipped preset files parse to the built-in presets") {
    const RunConfig sym_file = parse_config(read_file(preset_file("symmetric.cfg")));
    const RunConfig sym = symmetric_preset();
    CHECK(sym_file.f0 == sym.f0);
    CHECK(sym_file.txc.od == sym.txc.od);
    CHECK(sym_file.txc.turns == sym.txc.turns);
    CHECK(sym_file.txc.pitch == sym.txc.pitch);
    CHECK(sym_file.ic.od == sym.ic.od);
    CHECK(sym_file.txl.od == sym.txl.od);
    CHECK(sym_file.d_txl_txc == sym.d_txl_txc);
    CHECK(sym_file.d_txc_rxc == sym.d_txc_rxc);
    CHECK(sym_file.r_source == 50.0);
    CHECK(sym_file.reference_optimum_od == sym.reference_optimum_od);
    CHECK(sym_file.od_list == sym.od_list);

    const RunConfig asym_file = parse_config(read_file(preset_file("asymmetric.cfg")));
    const RunConfig asym = asymmetric_preset();
    CHECK(asym_file.txc.od == asym.txc.od);
    CHECK(asym_file.rxc.od == asym.rxc.od);
    CHECK(asym_file.txl.od == asym.txl.od);
    CHECK(asym_file.rxl.od == asym.rxl.od);
    CHECK(asym_file.d_txl_txc == asym.d_txl_txc);
    CHECK(asym_file.d_rxc_rxl == asym.d_rxc_rxl);
    CHECK(asym_file.reference_optimum_od == asym.reference_optimum_od);
}

TEST_CASE("lengths are converted from millimeters once at parse time") {
    const RunConfig cfg = parse_config(minimal_config());
    CHECK(cfg.f0 == 13.56e6);
    CHECK(cfg.txc.od == doctest::Approx(0.050).epsilon(1e-15));
    CHECK(cfg.d_txc_rxc == doctest::Approx(0.150).epsilon(1e-15));
    CHECK(cfg.wire.diameter == doctest::Approx(0.8128e-3).epsilon(1e-15));
    CHECK(cfg.r_source == 50.0);  // default
    CHECK(cfg.od_list.size() == 18);
}

TEST_CASE("unknown keys and sections are rejected") {
    CHECK_THROWS_WITH_AS(parse_config(minimal_config("", "typo_key = 1\n")),
                         doctest::Contains("unknown key 'typo_key'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(minimal_config("", "[mystery]\nx = 1\n")),
                         doctest::Contains("unknown section [mystery]"), ConfigError);
}

TEST_CASE("missing required keys are named") {
    CHECK_THROWS_WITH_AS(parse_config(minimal_config("pitch_mm = 0.01\n")),
                         doctest::Contains("pitch_mm"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(minimal_config("f0_hz = 13.56e6\n")),
                         doctest::Contains("f0_hz"), ConfigError);
}

TEST_CASE("syntax errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_config("[system\n"), doctest::Contains("line 1"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[system]\nf0_hz 13.56e6\n"), doctest::Contains("line 2"),
                         ConfigError);
    std::string bogus = minimal_config();
    const auto at = bogus.find("f0_hz = 13.56e6");
    bogus.replace(at, sizeof("f0_hz = 13.56e6") - 1, "f0_hz = bogus");
    CHECK_THROWS_WITH_AS(parse_config(bogus), doctest::Contains("cannot parse number"),
                         ConfigError);
}

TEST_CASE("validation failures name the violated invariant") {
    std::string bad = minimal_config();
    const auto at = bad.find("d_txc_ic_mm = 75");
    bad.replace(at, sizeof("d_txc_ic_mm = 75") - 1, "d_txc_ic_mm = 160");
    CHECK_THROWS_WITH_AS(parse_config(bad), doctest::Contains("0 < d_txc_ic < d_txc_rxc"),
                         std::invalid_argument);
}

TEST_CASE("od range and od list are mutually exclusive") {
    CHECK_THROWS_AS(
        parse_config(minimal_config(
            "", "[sweep]\nod_list_mm = 30,40\nod_lo_mm = 30\nod_hi_mm = 50\nod_step_mm = 10\n")),
        ConfigError);
    const RunConfig ranged = parse_config(
        minimal_config("", "[sweep]\nod_lo_mm = 30\nod_hi_mm = 60\nod_step_mm = 15\n"));
    REQUIRE(ranged.od_list.size() == 3);
    CHECK(ranged.od_list[1] == doctest::Approx(0.045).epsilon(1e-12));
    const RunConfig listed = parse_config(minimal_config("", "[sweep]\nod_list_mm = 50, 120\n"));
    REQUIRE(listed.od_list.size() == 2);
    CHECK(listed.od_list[1] == doctest::Approx(0.120).epsilon(1e-12));
}

TEST_CASE("default location grid has 31 interior points about the midpoint") {
    const RunConfig cfg = symmetric_preset();
    const auto grid = location_grid(cfg);
    REQUIRE(grid.size() == 31);
    CHECK(grid.front() == doctest::Approx(0.150 / 32.0).epsilon(1e-12));
    CHECK(grid[15] == doctest::Approx(0.075).epsilon(1e-12));
    CHECK(grid.back() == doctest::Approx(0.150 * 31.0 / 32.0).epsilon(1e-12));
    // symmetric about the midpoint
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(grid[i] + grid[grid.size() - 1 - i] == doctest::Approx(0.150).epsilon(1e-12));
    }
}

TEST_CASE("explicit location grid must be complete") {
    CHECK_THROWS_WITH_AS(parse_config(minimal_config("", "[sweep]\nloc_lo_mm = 10\n")),
                         doctest::Contains("loc_lo_mm, loc_hi_mm, loc_step_mm"), ConfigError);
    const RunConfig cfg = parse_config(
        minimal_config("", "[sweep]\nloc_lo_mm = 10\nloc_hi_mm = 20\nloc_step_mm = 5\n"));
    const auto grid = location_grid(cfg);
    REQUIRE(grid.size() == 3);
    CHECK(grid[2] == doctest::Approx(0.020).epsilon(1e-12));
}

}  // TEST_SUITE

TEST_SUITE("csv") {

TEST_CASE("heatmap csv is bit-exact and deterministic") {
    Heatmap map;
    map.od_axis = {0.050};
    map.loc_axis = {0.075};
    map.values = {0.123456789123};
    std::ostringstream first;
    write_heatmap_csv(first, map);
    CHECK(first.str() == "ic_od_mm,separation_mm,s21_mag\n50,75,0.123456789\n");
    std::ostringstream second;
    write_heatmap_csv(second, map);
    CHECK(first.str() == second.str());
}

TEST_CASE("failed cells serialize as empty fields plus a sidecar log") {
    Heatmap map;
    map.od_axis = {0.050};
    map.loc_axis = {0.030, 0.075};
    map.values = {std::numeric_limits<double>::quiet_NaN(), 0.5};
    map.errors = {{0, 0, "quadrature blew up"}};
    std::ostringstream csv;
    write_heatmap_csv(csv, map);
    CHECK(csv.str() == "ic_od_mm,separation_mm,s21_mag\n50,30,\n50,75,0.5\n");
    std::ostringstream log;
    CHECK(write_heatmap_error_log(log, map) == 1);
    CHECK(log.str().find("quadrature blew up") != std::string::npos);
}

TEST_CASE("spectrum csv converts to decibels") {
    std::vector<FrequencyPoint> points(2);
    points[0].f = 13.56e6;
    points[0].response = PortResponse{13.56e6, {0.5, 0.0}, {1.0, 0.0}, {}};
    points[1].f = 14e6;
    points[1].response = PortResponse{14e6, {0.05, 0.0}, {0.1, 0.0}, {}};
    std::ostringstream out;
    write_spectrum_csv(out, points);
    CHECK(out.str() == "freq_hz,s21_mag,s21_db\n13560000,1,0\n14000000,0.1,-20\n");
}

TEST_CASE("nine significant digits round-trip through write and read") {
    Heatmap map;
    map.od_axis = {0.050};
    map.loc_axis = {0.0123456789, 0.075};
    map.values = {0.987654321987, 0.123456789123};
    std::ostringstream out;
    write_heatmap_csv(out, map);
    std::istringstream in(out.str());
    const MeasurementSeries series = read_measurement_csv(in);
    REQUIRE(series.samples.size() == 2);
    CHECK(series.samples[0].ic_od == doctest::Approx(0.050).epsilon(1e-9));
    CHECK(series.samples[0].location == doctest::Approx(0.0123456789).epsilon(1e-9));
    CHECK(series.samples[0].s21_mag == doctest::Approx(0.987654322).epsilon(1e-9));
}

TEST_CASE("malformed measurement rows are reported with their row number") {
    std::istringstream missing_field("ic_od_mm,separation_mm,s21_mag\n50,75\n");
    CHECK_THROWS_WITH_AS(read_measurement_csv(missing_field), doctest::Contains("row 2"),
                         ConfigError);
    std::istringstream bad_number("ic_od_mm,separation_mm,s21_mag\n50,75,zap\n");
    CHECK_THROWS_WITH_AS(read_measurement_csv(bad_number), doctest::Contains("row 2"), ConfigError);
    std::istringstream bad_header("od,sep,s21\n50,75,0.5\n");
    CHECK_THROWS_AS(read_measurement_csv(bad_header), ConfigError);
    std::istringstream out_of_range("ic_od_mm,separation_mm,s21_mag\n50,75,1.5\n");
    CHECK_THROWS_WITH_AS(read_measurement_csv(out_of_range), doctest::Contains("[0, 1]"),
                         ConfigError);
}

TEST_CASE("implausible units trigger warnings, not errors") {
    std::istringstream in("ic_od_mm,separation_mm,s21_mag\n0.05,0.075,0.5\n");
    std::vector<std::string> warnings;
    const MeasurementSeries series = read_measurement_csv(in, &warnings);
    CHECK(series.samples.size() == 1);
    REQUIRE(warnings.size() == 2);
    CHECK(warnings[0].find("millimeters") != std::string::npos);
}

TEST_CASE("optimum and residual csv headers are pinned") {
    std::ostringstream optimum;
    write_optimum_csv(optimum, std::vector<OptimumReport>{});
    CHECK(optimum.str() ==
          "ic_od_mm,loc_equal_coupling_mm,loc_max_s21_mm,s21_at_max,"
          "k_txc_ic_at_eq,k_rxc_ic_at_eq,k_txc_ic_at_max,k_rxc_ic_at_max\n");
    std::ostringstream residual;
    write_residual_csv(residual, ResidualReport{});
    CHECK(residual.str() ==
          "ic_od_mm,loc_sim_mm,loc_meas_mm,loc_delta_mm,loc_delta_pct_span,"
          "s21_sim,s21_meas,s21_delta\n");
}

}  // TEST_SUITE
