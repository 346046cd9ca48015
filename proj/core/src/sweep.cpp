#include "wpt/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "wpt/errors.hpp"

namespace wpt {

namespace {

constexpr double kLocationTolerance = 1e-5;  // 0.01 mm

struct IcContext {
    SystemConfig sys;                // sys with the IC element installed
    std::vector<double> txc_radii;
    std::vector<double> ic_radii;
    std::vector<double> rxc_radii;
    double m_txl_txc = 0.0;          // fixed couplings, independent of IC location
    double m_rxc_rxl = 0.0;
};

IcContext make_context(const SystemConfig& base, const SpiralCoil& ic) {
    IcContext ctx;
    ctx.sys = with_ic(base, ic);
    ctx.txc_radii = turn_radii(ctx.sys.txc.coil);
    ctx.ic_radii = turn_radii(ctx.sys.ic.coil);
    ctx.rxc_radii = turn_radii(ctx.sys.rxc.coil);
    ctx.m_txl_txc = mutual_inductance(turn_radii(ctx.sys.txl.coil), ctx.txc_radii,
                                      ctx.sys.d_txl_txc, ctx.sys.constants);
    ctx.m_rxc_rxl = mutual_inductance(ctx.rxc_radii, turn_radii(ctx.sys.rxl.coil),
                                      ctx.sys.d_rxc_rxl, ctx.sys.constants);
    return ctx;
}

double s21_mag_at_location(const IcContext& ctx, double d) {
    CouplingSet couplings;
    couplings.m_txl_txc = ctx.m_txl_txc;
    couplings.m_rxc_rxl = ctx.m_rxc_rxl;
    couplings.m_txc_ic = mutual_inductance(ctx.txc_radii, ctx.ic_radii, d, ctx.sys.constants);
    couplings.m_ic_rxc = mutual_inductance(ctx.ic_radii, ctx.rxc_radii,
                                           ctx.sys.d_txc_rxc - d, ctx.sys.constants);
    SystemConfig sys = ctx.sys;
    sys.d_txc_ic = d;
    return std::abs(s21_at(sys, couplings, sys.f0).s21);
}

int clamp_threads(int threads, std::size_t jobs) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int limit = static_cast<int>(std::min<std::size_t>(jobs, hw));
    return std::clamp(threads, 1, std::max(1, limit));
}

// Runs fn(i) for i in [0, jobs) across `threads` workers. Output ordering is
// the caller's business; indices are disjoint so no locking is needed.
template <typename Fn>
void parallel_for(std::size_t jobs, int threads, Fn&& fn) {
    threads = clamp_threads(threads, jobs);
    if (threads <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = static_cast<std::size_t>(t); i < jobs;
                 i += static_cast<std::size_t>(threads)) {
                fn(i);
            }
        });
    }
    for (auto& worker : pool) worker.join();
}

}  // namespace

SystemConfig with_ic(const SystemConfig& sys, const SpiralCoil& ic) {
    SystemConfig out = sys;
    out.ic = make_resonant_element(Coil(ic), sys.f0, sys.constants);
    return out;
}

SystemConfig with_ic_location(const SystemConfig& sys, double d_txc_ic) {
    SystemConfig out = sys;
    out.d_txc_ic = d_txc_ic;
    return out;
}

std::vector<LocationPoint> location_sweep(const SystemConfig& sys, const SpiralCoil& ic,
                                          double loc_lo, double loc_hi, double step) {
    if (!(loc_lo > 0.0) || !(loc_lo <= loc_hi) || !(loc_hi < sys.d_txc_rxc)) {
        throw std::invalid_argument("location sweep: requires 0 < loc_lo <= loc_hi < d_txc_rxc");
    }
    if (!(step > 0.0)) throw std::invalid_argument("location sweep: step must be positive");

    const IcContext ctx = make_context(sys, ic);
    std::vector<LocationPoint> points;
    // Half-step slack so accumulated rounding cannot drop the last point.
    for (double d = loc_lo; d <= loc_hi + 0.5 * step; d += step) {
        const double loc = std::min(d, loc_hi);
        LocationPoint point;
        point.location = loc;
        try {
            point.s21_mag = s21_mag_at_location(ctx, loc);
        } catch (const std::exception& e) {
            point.error = e.what();
        }
        points.push_back(std::move(point));
        if (loc == loc_hi) break;
    }
    if (points.empty()) throw std::invalid_argument("location sweep: empty grid");
    if (std::all_of(points.begin(), points.end(),
                    [](const LocationPoint& p) { return !p.s21_mag.has_value(); })) {
        throw NumericalError("location sweep: every grid point failed");
    }
    return points;
}

Heatmap size_location_heatmap(const SystemConfig& sys, const SpiralCoil& ic_template,
                              std::span<const double> od_list, std::span<const double> locations,
                              int threads) {
    if (od_list.empty()) throw std::invalid_argument("heatmap: od list is empty");
    if (locations.empty()) throw std::invalid_argument("heatmap: location grid is empty");
    for (double loc : locations) {
        if (!(loc > 0.0) || !(loc < sys.d_txc_rxc)) {
            throw std::invalid_argument("heatmap: locations must lie strictly inside (0, span)");
        }
    }

    Heatmap map;
    map.od_axis.assign(od_list.begin(), od_list.end());
    map.loc_axis.assign(locations.begin(), locations.end());
    map.values.assign(od_list.size() * locations.size(),
                      std::numeric_limits<double>::quiet_NaN());

    // Row contexts up front: the per-OD element build can itself fail, which
    // marks the whole row.
    std::vector<std::optional<IcContext>> contexts(od_list.size());
    std::vector<std::string> row_errors(od_list.size());
    for (std::size_t row = 0; row < od_list.size(); ++row) {
        SpiralCoil ic = ic_template;
        ic.od = od_list[row];
        try {
            contexts[row].emplace(make_context(sys, ic));
        } catch (const std::exception& e) {
            row_errors[row] = e.what();
        }
    }

    const std::size_t n_cols = locations.size();
    std::vector<std::string> cell_errors(map.values.size());
    parallel_for(map.values.size(), threads, [&](std::size_t index) {
        const std::size_t row = index / n_cols;
        const std::size_t col = index % n_cols;
        if (!contexts[row]) {
            cell_errors[index] = row_errors[row];
            return;
        }
        try {
            map.values[index] = s21_mag_at_location(*contexts[row], locations[col]);
        } catch (const std::exception& e) {
            cell_errors[index] = e.what();
        }
    });

    for (std::size_t index = 0; index < cell_errors.size(); ++index) {
        if (!cell_errors[index].empty()) {
            map.errors.push_back({index / n_cols, index % n_cols, cell_errors[index]});
        }
    }
    return map;
}

double find_equal_coupling_location(const SystemConfig& sys, const SpiralCoil& ic) {
    const SystemConfig with = with_ic(sys, ic);
    const auto txc_radii = turn_radii(with.txc.coil);
    const auto ic_radii = turn_radii(with.ic.coil);
    const auto rxc_radii = turn_radii(with.rxc.coil);
    const double span = with.d_txc_rxc;
    const double l_txc = with.txc.self_l;
    const double l_ic = with.ic.self_l;
    const double l_rxc = with.rxc.self_l;

    auto imbalance = [&](double d) {
        const double k_tx = coupling_coefficient(
            mutual_inductance(txc_radii, ic_radii, d, with.constants), l_txc, l_ic);
        const double k_rx = coupling_coefficient(
            mutual_inductance(ic_radii, rxc_radii, span - d, with.constants), l_ic, l_rxc);
        return k_tx - k_rx;
    };

    double lo = span / 1000.0;
    double hi = span - span / 1000.0;
    double f_lo = imbalance(lo);
    double f_hi = imbalance(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw NumericalError("equal-coupling search: no sign change on the interval");
    }
    while (hi - lo > kLocationTolerance) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = imbalance(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

LocationOptimum find_max_s21_location(const SystemConfig& sys, const SpiralCoil& ic,
                                      double coarse_step) {
    if (!(coarse_step > 0.0) || !(coarse_step < 0.5 * sys.d_txc_rxc)) {
        throw std::invalid_argument("max-S21 search: coarse step must be in (0, span/2)");
    }
    const IcContext ctx = make_context(sys, ic);
    const double span = sys.d_txc_rxc;

    double best_loc = 0.0;
    double best_val = -1.0;
    for (double d = coarse_step; d < span - 0.5 * coarse_step; d += coarse_step) {
        const double value = s21_mag_at_location(ctx, d);
        if (value > best_val) {
            best_val = value;
            best_loc = d;
        }
    }
    if (best_val < 0.0) throw NumericalError("max-S21 search: empty coarse grid");

    double a = std::max(best_loc - coarse_step, span / 1000.0);
    double b = std::min(best_loc + coarse_step, span - span / 1000.0);

    // Golden-section refinement; the best evaluated sample is tracked so the
    // refined result can never fall below the coarse one.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = s21_mag_at_location(ctx, x1);
    double f2 = s21_mag_at_location(ctx, x2);
    auto consider = [&](double loc, double val) {
        if (val > best_val) {
            best_val = val;
            best_loc = loc;
        }
    };
    consider(x1, f1);
    consider(x2, f2);
    while (b - a > kLocationTolerance) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = s21_mag_at_location(ctx, x2);
            consider(x2, f2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = s21_mag_at_location(ctx, x1);
            consider(x1, f1);
        }
    }
    return {best_loc, best_val};
}

SizeScan optimal_size_scan(const SystemConfig& sys, const SpiralCoil& ic_template,
                           std::span<const double> od_list, double coarse_step, int threads) {
    if (od_list.size() < 3) {
        throw std::invalid_argument("size scan: need at least three IC sizes");
    }
    SizeScan scan;
    scan.reports.resize(od_list.size());
    std::vector<std::string> errors(od_list.size());

    parallel_for(od_list.size(), threads, [&](std::size_t i) {
        try {
            SpiralCoil ic = ic_template;
            ic.od = od_list[i];
            const SystemConfig with = with_ic(sys, ic);
            const auto txc_radii = turn_radii(with.txc.coil);
            const auto ic_radii = turn_radii(with.ic.coil);
            const auto rxc_radii = turn_radii(with.rxc.coil);

            OptimumReport report;
            report.ic_od = od_list[i];
            report.loc_equal_coupling = find_equal_coupling_location(sys, ic);
            const LocationOptimum optimum = find_max_s21_location(sys, ic, coarse_step);
            report.loc_max_s21 = optimum.location;
            report.s21_at_max = optimum.s21_mag;

            auto k_pair = [&](double d) {
                const double k_tx = coupling_coefficient(
                    mutual_inductance(txc_radii, ic_radii, d, with.constants), with.txc.self_l,
                    with.ic.self_l);
                const double k_rx = coupling_coefficient(
                    mutual_inductance(ic_radii, rxc_radii, with.d_txc_rxc - d, with.constants),
                    with.ic.self_l, with.rxc.self_l);
                return std::pair<double, double>(k_tx, k_rx);
            };
            std::tie(report.k_txc_ic_at_eq, report.k_rxc_ic_at_eq) =
                k_pair(report.loc_equal_coupling);
            std::tie(report.k_txc_ic_at_max, report.k_rxc_ic_at_max) =
                k_pair(report.loc_max_s21);
            scan.reports[i] = report;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });

    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i].empty()) {
            throw NumericalError("size scan failed at od = " + std::to_string(od_list[i] * 1e3) +
                                 " mm: " + errors[i]);
        }
    }
    const auto best = std::max_element(
        scan.reports.begin(), scan.reports.end(),
        [](const OptimumReport& a, const OptimumReport& b) { return a.s21_at_max < b.s21_at_max; });
    scan.best_od = best->ic_od;
    return scan;
}

ResidualReport compare_with_measurement(std::span<const OptimumReport> simulated,
                                        const MeasurementSeries& measured, double span,
                                        double od_tol) {
    if (!(span > 0.0)) throw std::invalid_argument("comparison: span must be positive");
    ResidualReport report;
    for (const OptimumReport& sim : simulated) {
        const MeasurementSample* best = nullptr;
        for (const MeasurementSample& sample : measured.samples) {
            if (std::abs(sample.ic_od - sim.ic_od) > od_tol) continue;
            if (best == nullptr || sample.s21_mag > best->s21_mag) best = &sample;
        }
        if (best == nullptr) continue;
        ResidualRow row;
        row.ic_od = sim.ic_od;
        row.loc_sim = sim.loc_max_s21;
        row.loc_meas = best->location;
        row.loc_delta = sim.loc_max_s21 - best->location;
        row.loc_delta_pct_span = 100.0 * row.loc_delta / span;
        row.s21_sim = sim.s21_at_max;
        row.s21_meas = best->s21_mag;
        row.s21_delta = sim.s21_at_max - best->s21_mag;
        report.rows.push_back(row);
    }
    if (report.rows.empty()) {
        throw std::invalid_argument("comparison: no overlap between simulated and measured ODs");
    }
    double sum_abs = 0.0;
    double sum_abs_pct = 0.0;
    for (const ResidualRow& row : report.rows) {
        sum_abs += std::abs(row.loc_delta);
        sum_abs_pct += std::abs(row.loc_delta_pct_span);
        report.max_abs_loc_delta = std::max(report.max_abs_loc_delta, std::abs(row.loc_delta));
    }
    report.mean_abs_loc_delta = sum_abs / static_cast<double>(report.rows.size());
    report.mean_abs_loc_delta_pct = sum_abs_pct / static_cast<double>(report.rows.size());
    return report;
}

}  // namespace wpt
