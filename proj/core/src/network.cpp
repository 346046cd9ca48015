#include "wpt/network.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wpt/errors.hpp"

namespace wpt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kConditionLimit = 1e14;
constexpr double kResidualLimit = 1e-10;

using Complex = std::complex<double>;
using Matrix5 = Eigen::Matrix<Complex, 5, 5>;
using Vector5 = Eigen::Matrix<Complex, 5, 1>;

void check_resonance(const ResonantElement& element, double f0, const char* name) {
    if (!(element.self_l > 0.0) || !(element.tuning_c > 0.0) || !(element.r_parasitic > 0.0)) {
        throw std::invalid_argument(std::string("system: element ") + name +
                                    " must have positive L, C and parasitic R");
    }
    const double omega0 = 2.0 * kPi * f0;
    const double product = omega0 * omega0 * element.self_l * element.tuning_c;
    if (std::abs(product - 1.0) > 1e-12) {
        throw std::invalid_argument(std::string("system: element ") + name +
                                    " is not tuned to f0 (|w0^2 L C - 1| > 1e-12)");
    }
}

Matrix5 to_eigen(const ImpedanceMatrix& z) {
    Matrix5 m;
    for (int r = 0; r < 5; ++r) {
        for (int c = 0; c < 5; ++c) {
            m(r, c) = z.z[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
    }
    return m;
}

}  // namespace

void validate(const SystemConfig& sys) {
    if (!(sys.f0 > 0.0)) throw std::invalid_argument("system: f0 must be positive");
    if (!(sys.r_source > 0.0) || !(sys.r_load > 0.0)) {
        throw std::invalid_argument("system: port resistances must be positive");
    }
    if (!(sys.d_txc_rxc > 0.0)) {
        throw std::invalid_argument("system: TXC-RXC span must be positive");
    }
    if (!(sys.d_txc_ic > 0.0) || !(sys.d_txc_ic < sys.d_txc_rxc)) {
        throw std::invalid_argument(
            "system: IC location must satisfy 0 < d_txc_ic < d_txc_rxc");
    }
    if (!(sys.d_txl_txc >= 0.0) || !(sys.d_rxc_rxl >= 0.0)) {
        throw std::invalid_argument("system: loop separations must be non-negative");
    }
    check_resonance(sys.txl, sys.f0, "txl");
    check_resonance(sys.txc, sys.f0, "txc");
    check_resonance(sys.ic, sys.f0, "ic");
    check_resonance(sys.rxc, sys.f0, "rxc");
    check_resonance(sys.rxl, sys.f0, "rxl");
}

CouplingSet compute_couplings(const SystemConfig& sys) {
    validate(sys);
    const auto txl = turn_radii(sys.txl.coil);
    const auto txc = turn_radii(sys.txc.coil);
    const auto ic = turn_radii(sys.ic.coil);
    const auto rxc = turn_radii(sys.rxc.coil);
    const auto rxl = turn_radii(sys.rxl.coil);
    CouplingSet couplings;
    couplings.m_txl_txc = mutual_inductance(txl, txc, sys.d_txl_txc, sys.constants);
    couplings.m_txc_ic = mutual_inductance(txc, ic, sys.d_txc_ic, sys.constants);
    couplings.m_ic_rxc = mutual_inductance(ic, rxc, sys.d_txc_rxc - sys.d_txc_ic, sys.constants);
    couplings.m_rxc_rxl = mutual_inductance(rxc, rxl, sys.d_rxc_rxl, sys.constants);
    return couplings;
}

ImpedanceMatrix build_impedance_matrix(const SystemConfig& sys, const CouplingSet& couplings,
                                       double f) {
    if (!(f > 0.0)) throw std::invalid_argument("impedance matrix: frequency must be positive");
    const double omega = 2.0 * kPi * f;
    const ResonantElement* elements[5] = {&sys.txl, &sys.txc, &sys.ic, &sys.rxc, &sys.rxl};

    ImpedanceMatrix out;
    out.f = f;
    for (std::size_t i = 0; i < 5; ++i) {
        const ResonantElement& e = *elements[i];
        // R_p + j w L + 1/(j w C); the parasitic value is the fixed component
        // computed at f0.
        out.z[i][i] = Complex(e.r_parasitic, omega * e.self_l - 1.0 / (omega * e.tuning_c));
    }
    out.z[0][0] += sys.r_source;
    out.z[4][4] += sys.r_load;

    const double mutuals[4] = {couplings.m_txl_txc, couplings.m_txc_ic, couplings.m_ic_rxc,
                               couplings.m_rxc_rxl};
    for (std::size_t i = 0; i < 4; ++i) {
        const Complex zm(0.0, omega * mutuals[i]);
        out.z[i][i + 1] = zm;
        out.z[i + 1][i] = zm;
    }
    return out;
}

ImpedanceMatrix build_impedance_matrix(const SystemConfig& sys, double f) {
    return build_impedance_matrix(sys, compute_couplings(sys), f);
}

std::array<Complex, 5> solve_mesh_currents(const ImpedanceMatrix& z, double v_source) {
    const Matrix5 m = to_eigen(z);

    const Eigen::JacobiSVD<Matrix5> svd(m);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(4);
    if (!(smin > 0.0) || smax / smin > kConditionLimit) {
        throw NumericalError("mesh solve: impedance matrix is singular or ill-conditioned");
    }

    Vector5 rhs = Vector5::Zero();
    rhs(0) = Complex(v_source, 0.0);

    const Eigen::PartialPivLU<Matrix5> lu(m);
    Vector5 solution = lu.solve(rhs);

    // One step of iterative refinement if the residual is not already small.
    double residual = (m * solution - rhs).norm() / rhs.norm();
    if (residual > kResidualLimit) {
        solution += lu.solve(rhs - m * solution);
        residual = (m * solution - rhs).norm() / rhs.norm();
        if (residual > kResidualLimit) {
            throw NumericalError("mesh solve: residual exceeds 1e-10");
        }
    }

    std::array<Complex, 5> currents;
    for (int i = 0; i < 5; ++i) currents[static_cast<std::size_t>(i)] = solution(i);
    return currents;
}

std::complex<double> voltage_gain_closed_form(const ImpedanceMatrix& zm, double r_load) {
    const auto& z = zm.z;
    const Complex z11 = z[0][0], z22 = z[1][1], zii = z[2][2], z33 = z[3][3], z44 = z[4][4];
    const Complex z12 = z[0][1], z2i = z[1][2], z3i = z[2][3], z34 = z[3][4];

    const Complex z12_sq = z12 * z12;
    const Complex z2i_sq = z2i * z2i;
    const Complex z3i_sq = z3i * z3i;
    const Complex z34_sq = z34 * z34;

    const Complex denominator = z11 * z22 * zii * z33 * z44 + z11 * z2i_sq * z34_sq +
                                zii * z12_sq * z34_sq + z44 * z12_sq * z3i_sq -
                                z12_sq * zii * z33 * z44 - z2i_sq * z11 * z33 * z44 -
                                z3i_sq * z11 * z22 * z44 - z34_sq * z11 * z22 * zii;
    if (denominator == Complex(0.0, 0.0)) {
        throw NumericalError("closed-form gain: denominator vanished");
    }
    return z12 * z2i * z3i * z34 * r_load / denominator;
}

PortResponse s21_at(const SystemConfig& sys, const CouplingSet& couplings, double f) {
    const ImpedanceMatrix z = build_impedance_matrix(sys, couplings, f);
    PortResponse response;
    response.f = f;
    response.mesh_currents = solve_mesh_currents(z, 1.0);
    response.v_gain = response.mesh_currents[4] * sys.r_load;
    response.s21 = 2.0 * response.v_gain * std::sqrt(sys.r_source / sys.r_load);
    return response;
}

PortResponse s21(const SystemConfig& sys, double f) {
    return s21_at(sys, compute_couplings(sys), f);
}

PortResponse s21(const SystemConfig& sys) { return s21(sys, sys.f0); }

std::vector<FrequencyPoint> frequency_sweep(const SystemConfig& sys, double f_lo, double f_hi,
                                            int n_points, GridSpacing spacing) {
    if (!(f_lo > 0.0) || !(f_lo < f_hi)) {
        throw std::invalid_argument("frequency sweep: requires 0 < f_lo < f_hi");
    }
    if (n_points < 2) throw std::invalid_argument("frequency sweep: requires at least 2 points");

    const CouplingSet couplings = compute_couplings(sys);
    std::vector<FrequencyPoint> points(static_cast<std::size_t>(n_points));
    const double log_lo = std::log(f_lo);
    const double log_hi = std::log(f_hi);
    for (int i = 0; i < n_points; ++i) {
        const double t = static_cast<double>(i) / (n_points - 1);
        const double f = spacing == GridSpacing::kLinear ? f_lo + t * (f_hi - f_lo)
                                                         : std::exp(log_lo + t * (log_hi - log_lo));
        FrequencyPoint& point = points[static_cast<std::size_t>(i)];
        point.f = f;
        try {
            point.response = s21_at(sys, couplings, f);
        } catch (const std::exception& e) {
            point.error = e.what();
        }
    }
    return points;
}

}  // namespace wpt
