#include "wpt/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace wpt {

namespace {

constexpr double kMmToM = 1e-3;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

struct Entry {
    std::string value;
    int line = 0;
};

// section -> key -> value, flat key/value with '#' comments.
using Sections = std::map<std::string, std::map<std::string, Entry>>;

Sections tokenize(const std::string& text) {
    Sections sections;
    std::istringstream stream(text);
    std::string line;
    std::string current;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty()) throw ConfigError("empty section name", line_no);
            sections.try_emplace(current);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", line_no);
        if (current.empty()) throw ConfigError("key outside any [section]", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (value.empty()) throw ConfigError("empty value for key '" + key + "'", line_no);
        auto [it, inserted] = sections[current].try_emplace(key, Entry{value, line_no});
        if (!inserted) throw ConfigError("duplicate key '" + key + "'", line_no);
    }
    return sections;
}

// Tracks which keys were consumed so leftovers can be reported as unknown.
class Reader {
public:
    explicit Reader(Sections sections) : sections_(std::move(sections)) {}

    bool has(const std::string& section, const std::string& key) const {
        const auto s = sections_.find(section);
        return s != sections_.end() && s->second.count(key) > 0;
    }

    std::string take_string(const std::string& section, const std::string& key) {
        const auto s = sections_.find(section);
        if (s == sections_.end() || s->second.count(key) == 0) {
            throw ConfigError("missing required key '" + key + "' in section [" + section + "]");
        }
        used_.insert(section + "." + key);
        return s->second.at(key).value;
    }

    double take_double(const std::string& section, const std::string& key) {
        const Entry entry = entry_for(section, key);
        used_.insert(section + "." + key);
        return parse_double(entry.value, entry.line);
    }

    double take_double_or(const std::string& section, const std::string& key, double fallback) {
        if (!has(section, key)) return fallback;
        return take_double(section, key);
    }

    int take_int(const std::string& section, const std::string& key, int fallback) {
        if (!has(section, key)) return fallback;
        const Entry entry = entry_for(section, key);
        used_.insert(section + "." + key);
        const double value = parse_double(entry.value, entry.line);
        if (value != std::floor(value)) {
            throw ConfigError("key '" + key + "' must be an integer", entry.line);
        }
        return static_cast<int>(value);
    }

    std::vector<double> take_double_list(const std::string& section, const std::string& key) {
        const Entry entry = entry_for(section, key);
        used_.insert(section + "." + key);
        std::vector<double> values;
        std::istringstream stream(entry.value);
        std::string item;
        while (std::getline(stream, item, ',')) {
            item = trim(item);
            if (item.empty()) throw ConfigError("empty element in list '" + key + "'", entry.line);
            values.push_back(parse_double(item, entry.line));
        }
        if (values.empty()) throw ConfigError("empty list for key '" + key + "'", entry.line);
        return values;
    }

    void reject_unknown() const {
        for (const auto& [section, keys] : sections_) {
            if (!known_sections_.count(section)) {
                throw ConfigError("unknown section [" + section + "]");
            }
            for (const auto& [key, entry] : keys) {
                if (!used_.count(section + "." + key)) {
                    throw ConfigError("unknown key '" + key + "' in section [" + section + "]",
                                      entry.line);
                }
            }
        }
    }

    void declare_section(const std::string& section) { known_sections_.insert(section); }

private:
    Entry entry_for(const std::string& section, const std::string& key) const {
        const auto s = sections_.find(section);
        if (s == sections_.end() || s->second.count(key) == 0) {
            throw ConfigError("missing required key '" + key + "' in section [" + section + "]");
        }
        return s->second.at(key);
    }

    static double parse_double(const std::string& text, int line) {
        char* end = nullptr;
        const double value = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0' || !std::isfinite(value)) {
            throw ConfigError("cannot parse number '" + text + "'", line);
        }
        return value;
    }

    Sections sections_;
    std::set<std::string> used_;
    std::set<std::string> known_sections_;
};

SpiralCoil read_spiral(Reader& reader, const std::string& section, const WireSpec& wire) {
    SpiralCoil coil;
    coil.od = reader.take_double(section, "od_mm") * kMmToM;
    coil.turns = reader.take_int(section, "turns", -1);
    if (coil.turns < 0) {
        throw ConfigError("missing required key 'turns' in section [" + section + "]");
    }
    coil.pitch = reader.take_double(section, "pitch_mm") * kMmToM;
    coil.wire = wire;
    return coil;
}

}  // namespace

std::vector<double> default_od_list() {
    std::vector<double> list;
    for (int od_mm = 30; od_mm <= 200; od_mm += 10) list.push_back(od_mm * kMmToM);
    return list;
}

std::vector<double> location_grid(const RunConfig& cfg) {
    std::vector<double> grid;
    if (cfg.loc_lo && cfg.loc_hi && cfg.loc_step) {
        for (double d = *cfg.loc_lo; d <= *cfg.loc_hi + 0.5 * *cfg.loc_step; d += *cfg.loc_step) {
            grid.push_back(std::min(d, *cfg.loc_hi));
            if (grid.back() == *cfg.loc_hi) break;
        }
        return grid;
    }
    // Default: 31 interior points, symmetric about the midpoint, containing
    // the midpoint exactly.
    const double span = cfg.d_txc_rxc;
    for (int k = 1; k <= 31; ++k) grid.push_back(span * k / 32.0);
    return grid;
}

RunConfig parse_config(const std::string& text) {
    Reader reader(tokenize(text));
    for (const char* section :
         {"system", "wire", "txl", "txc", "ic", "rxc", "rxl", "sweep", "frequency", "output",
          "compare"}) {
        reader.declare_section(section);
    }

    RunConfig cfg;
    cfg.wire.diameter = reader.take_double("wire", "diameter_mm") * kMmToM;
    cfg.wire.conductivity = reader.take_double("wire", "conductivity_s_per_m");

    cfg.txl.od = reader.take_double("txl", "od_mm") * kMmToM;
    cfg.txl.wire = cfg.wire;
    cfg.rxl.od = reader.take_double("rxl", "od_mm") * kMmToM;
    cfg.rxl.wire = cfg.wire;
    cfg.txc = read_spiral(reader, "txc", cfg.wire);
    cfg.ic = read_spiral(reader, "ic", cfg.wire);
    cfg.rxc = read_spiral(reader, "rxc", cfg.wire);

    cfg.f0 = reader.take_double("system", "f0_hz");
    cfg.d_txl_txc = reader.take_double("system", "d_txl_txc_mm") * kMmToM;
    cfg.d_txc_ic = reader.take_double("system", "d_txc_ic_mm") * kMmToM;
    cfg.d_txc_rxc = reader.take_double("system", "d_txc_rxc_mm") * kMmToM;
    cfg.d_rxc_rxl = reader.take_double("system", "d_rxc_rxl_mm") * kMmToM;
    cfg.r_source = reader.take_double_or("system", "r_source_ohm", 50.0);
    cfg.r_load = reader.take_double_or("system", "r_load_ohm", 50.0);

    const bool has_list = reader.has("sweep", "od_list_mm");
    const bool has_range = reader.has("sweep", "od_lo_mm") || reader.has("sweep", "od_hi_mm") ||
                           reader.has("sweep", "od_step_mm");
    if (has_list && has_range) {
        throw ConfigError("give either od_list_mm or od_lo_mm/od_hi_mm/od_step_mm, not both");
    }
    if (has_list) {
        for (double od_mm : reader.take_double_list("sweep", "od_list_mm")) {
            cfg.od_list.push_back(od_mm * kMmToM);
        }
    } else if (has_range) {
        const double lo = reader.take_double("sweep", "od_lo_mm");
        const double hi = reader.take_double("sweep", "od_hi_mm");
        const double step = reader.take_double("sweep", "od_step_mm");
        if (!(step > 0.0) || !(lo <= hi)) {
            throw ConfigError("od range requires od_lo_mm <= od_hi_mm and od_step_mm > 0");
        }
        for (double od = lo; od <= hi + 0.5 * step; od += step) {
            cfg.od_list.push_back(std::min(od, hi) * kMmToM);
            if (cfg.od_list.back() == hi * kMmToM) break;
        }
    } else {
        cfg.od_list = default_od_list();
    }
    if (reader.has("sweep", "loc_lo_mm")) {
        cfg.loc_lo = reader.take_double("sweep", "loc_lo_mm") * kMmToM;
    }
    if (reader.has("sweep", "loc_hi_mm")) {
        cfg.loc_hi = reader.take_double("sweep", "loc_hi_mm") * kMmToM;
    }
    if (reader.has("sweep", "loc_step_mm")) {
        cfg.loc_step = reader.take_double("sweep", "loc_step_mm") * kMmToM;
    }
    const bool partial_grid = cfg.loc_lo.has_value() || cfg.loc_hi.has_value() ||
                              cfg.loc_step.has_value();
    if (partial_grid && !(cfg.loc_lo && cfg.loc_hi && cfg.loc_step)) {
        throw ConfigError("location grid needs all of loc_lo_mm, loc_hi_mm, loc_step_mm");
    }
    cfg.coarse_step = reader.take_double_or("sweep", "coarse_step_mm", 5.0) * kMmToM;
    if (reader.has("sweep", "reference_od_mm")) {
        cfg.reference_optimum_od = reader.take_double("sweep", "reference_od_mm") * kMmToM;
    }

    cfg.f_lo = reader.take_double_or("frequency", "f_lo_hz", 0.0);
    cfg.f_hi = reader.take_double_or("frequency", "f_hi_hz", 0.0);
    cfg.f_points = reader.take_int("frequency", "n_points", 2001);
    if (reader.has("frequency", "spacing")) {
        const std::string spacing = reader.take_string("frequency", "spacing");
        if (spacing == "linear") {
            cfg.f_spacing = GridSpacing::kLinear;
        } else if (spacing == "log") {
            cfg.f_spacing = GridSpacing::kLog;
        } else {
            throw ConfigError("frequency spacing must be 'linear' or 'log', got '" + spacing +
                              "'");
        }
    }

    for (auto [key, member] : std::initializer_list<std::pair<const char*, std::string RunConfig::*>>{
             {"heatmap_csv", &RunConfig::heatmap_csv},
             {"spectrum_csv", &RunConfig::spectrum_csv},
             {"optimum_csv", &RunConfig::optimum_csv},
             {"residual_csv", &RunConfig::residual_csv},
             {"error_log", &RunConfig::error_log}}) {
        if (reader.has("output", key)) cfg.*member = reader.take_string("output", key);
    }
    if (reader.has("compare", "measured_csv")) {
        cfg.measured_csv = reader.take_string("compare", "measured_csv");
    }

    reader.reject_unknown();

    // Fail on invalid geometry or system layout now, before any computation.
    build_system(cfg);
    return cfg;
}

SystemConfig build_system(const RunConfig& cfg) {
    validate(cfg.wire);
    validate(cfg.txl);
    validate(cfg.txc);
    validate(cfg.ic);
    validate(cfg.rxc);
    validate(cfg.rxl);

    SystemConfig sys;
    sys.f0 = cfg.f0;
    sys.r_source = cfg.r_source;
    sys.r_load = cfg.r_load;
    sys.d_txl_txc = cfg.d_txl_txc;
    sys.d_txc_ic = cfg.d_txc_ic;
    sys.d_txc_rxc = cfg.d_txc_rxc;
    sys.d_rxc_rxl = cfg.d_rxc_rxl;
    sys.txl = make_resonant_element(Coil(cfg.txl), cfg.f0, sys.constants);
    sys.txc = make_resonant_element(Coil(cfg.txc), cfg.f0, sys.constants);
    sys.ic = make_resonant_element(Coil(cfg.ic), cfg.f0, sys.constants);
    sys.rxc = make_resonant_element(Coil(cfg.rxc), cfg.f0, sys.constants);
    sys.rxl = make_resonant_element(Coil(cfg.rxl), cfg.f0, sys.constants);
    validate(sys);
    return sys;
}

namespace {

RunConfig preset_base() {
    RunConfig cfg;
    cfg.wire = {kAwg20WireDiameter, kCopperConductivity};
    cfg.f0 = 13.56e6;
    cfg.r_source = 50.0;
    cfg.r_load = 50.0;
    cfg.d_txc_rxc = 150.0 * kMmToM;
    cfg.d_txc_ic = 75.0 * kMmToM;
    cfg.od_list = default_od_list();
    return cfg;
}

SpiralCoil preset_spiral(double od_mm, const WireSpec& wire) {
    // Pitch 0.01 mm: close-wound assumption; the arrangement this mirrors
    // specifies equal turn spacing but not its value.
    return {od_mm * kMmToM, 7, 0.01 * kMmToM, wire};
}

}  // namespace

RunConfig symmetric_preset() {
    RunConfig cfg = preset_base();
    cfg.txl = {38.0 * kMmToM, cfg.wire};
    cfg.rxl = {38.0 * kMmToM, cfg.wire};
    cfg.txc = preset_spiral(50.0, cfg.wire);
    cfg.ic = preset_spiral(100.0, cfg.wire);
    cfg.rxc = preset_spiral(50.0, cfg.wire);
    cfg.d_txl_txc = 2.5 * kMmToM;
    cfg.d_rxc_rxl = 2.5 * kMmToM;
    cfg.reference_optimum_od = 150.0 * kMmToM;
    return cfg;
}

RunConfig asymmetric_preset() {
    RunConfig cfg = preset_base();
    cfg.txl = {67.5 * kMmToM, cfg.wire};
    cfg.rxl = {10.44 * kMmToM, cfg.wire};
    cfg.txc = preset_spiral(90.0, cfg.wire);
    cfg.ic = preset_spiral(100.0, cfg.wire);
    cfg.rxc = preset_spiral(30.0, cfg.wire);
    cfg.d_txl_txc = 10.0 * kMmToM;
    cfg.d_rxc_rxl = 2.0 * kMmToM;
    cfg.reference_optimum_od = 140.0 * kMmToM;
    return cfg;
}

}  // namespace wpt
