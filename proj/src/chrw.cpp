// chrw.cpp: xi fixed point and transformed-frame quantities

#include "bsl/chrw.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bsl {

void ModelParams::validate() const {
    if (!std::isfinite(omega0) || !std::isfinite(amplitude_A) || !std::isfinite(omega) ||
        !std::isfinite(kappa)) {
        throw std::invalid_argument("ModelParams: non-finite field");
    }
    if (omega0 <= 0.0) throw std::invalid_argument("ModelParams: omega0 must be positive");
    if (omega <= 0.0) throw std::invalid_argument("ModelParams: omega must be positive");
    if (amplitude_A < 0.0) throw std::invalid_argument("ModelParams: A must be non-negative");
    if (kappa < 0.0) throw std::invalid_argument("ModelParams: kappa must be non-negative");
}

const char* frame_mode_name(FrameMode mode) {
    return mode == FrameMode::Chrw ? "chrw" : "rwa";
}

double xi_residual(const ModelParams& p, double xi) {
    return p.omega0 * bessel_j(1, p.amplitude_A * xi / p.omega) - 0.5 * p.amplitude_A * (1.0 - xi);
}

double solve_xi(const ModelParams& params, const Tolerance& tol) {
    params.validate();
    if (params.amplitude_A == 0.0) {
        throw DomainError("solve_xi: A = 0 is degenerate, use xi = omega/(omega + omega0)");
    }
    auto g = [&params](double xi) { return xi_residual(params, xi); };

    // Grid fine enough that J1(A xi/omega) cannot change sign twice inside a cell.
    const int cells = std::max(64, static_cast<int>(std::ceil(4.0 * params.amplitude_A / params.omega)));
    double lo = 0.0;
    double g_lo = g(lo);
    for (int i = 1; i <= cells; ++i) {
        const double hi = static_cast<double>(i) / cells;
        const double g_hi = g(hi);
        if (g_hi == 0.0) return hi;
        if ((g_lo < 0.0) != (g_hi < 0.0)) return find_root_bracketed(g, lo, hi, tol);
        lo = hi;
        g_lo = g_hi;
    }
    std::ostringstream os;
    os << "solve_xi: no root in [0,1] for A = " << params.amplitude_A << ", omega = " << params.omega
       << ", omega0 = " << params.omega0;
    throw BracketError(os.str());
}

double dxi_domega0(const ModelParams& p, double xi) {
    const double z = p.amplitude_A * xi / p.omega;
    const double j0 = bessel_j(0, z);
    const double j1 = bessel_j(1, z);
    const double j2 = bessel_j(2, z);
    return -2.0 * p.omega * j1 / (p.amplitude_A * (p.omega + p.omega0 * (j0 - j2)));
}

double mixing_angle(double a_tilde, double delta_tilde) {
    const double half = 0.5 * a_tilde;
    if (half == 0.0 && delta_tilde == 0.0) return 0.25 * std::numbers::pi;
    const double rabi = std::hypot(delta_tilde, half);
    // Both branches evaluate tan(theta) = (rabi - delta)/(a/2) without cancellation.
    if (delta_tilde >= 0.0) return std::atan2(half, rabi + delta_tilde);
    return std::atan2(rabi - delta_tilde, half);
}

ChrwFrame build_frame(const ModelParams& params, FrameMode mode, const Tolerance& tol) {
    params.validate();
    ChrwFrame f;
    f.mode = mode;
    if (mode == FrameMode::Rwa) {
        f.xi = 0.0;
        f.a_tilde = params.amplitude_A;
        f.delta_tilde = params.omega0 - params.omega;
    } else if (params.amplitude_A == 0.0) {
        f.xi = params.omega / (params.omega + params.omega0);
        f.a_tilde = 0.0;
        f.delta_tilde = params.omega0 - params.omega;
    } else {
        f.xi = solve_xi(params, tol);
        f.bessel_arg = params.amplitude_A * f.xi / params.omega;
        f.a_tilde = 2.0 * params.amplitude_A * (1.0 - f.xi);
        f.delta_tilde = params.omega0 * bessel_j(0, f.bessel_arg) - params.omega;
    }
    f.rabi_tilde = std::hypot(f.delta_tilde, 0.5 * f.a_tilde);
    f.theta = mixing_angle(f.a_tilde, f.delta_tilde);
    return f;
}

LabPopulationMap lab_population_map(const ChrwFrame& frame, const ModelParams& params, double t) {
    const double s = std::sin(params.omega * t);
    const double phase = frame.bessel_arg * s;
    LabPopulationMap m;
    m.cos_term = std::cos(2.0 * frame.theta) * std::cos(phase);
    m.sin_term = std::sin(2.0 * frame.theta) * s * std::sin(phase);
    return m;
}

} // namespace bsl
