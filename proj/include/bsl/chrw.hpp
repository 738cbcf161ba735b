// chrw.hpp: counter-rotating hybridized rotating-wave frame of the Rabi model

#pragma once

#include "bsl/numerics.hpp"

namespace bsl {

// H(t) = omega0 sz/2 + (A/2) cos(omega t) sx, hbar = 1.
struct ModelParams {
    double omega0 = 1.0;
    double amplitude_A = 0.0;
    double omega = 1.0;
    double kappa = 0.0;

    // Throws std::invalid_argument on omega0 <= 0, omega <= 0, A < 0, kappa < 0 or non-finite fields.
    void validate() const;
};

enum class FrameMode { Chrw, Rwa };

const char* frame_mode_name(FrameMode mode);

struct ChrwFrame {
    double xi = 0.0;
    double a_tilde = 0.0;
    double delta_tilde = 0.0;
    double rabi_tilde = 0.0;
    double theta = 0.0;
    FrameMode mode = FrameMode::Chrw;
    double bessel_arg = 0.0; // A xi / omega, zero in RWA mode
};

// omega0 J1(A xi/omega) - (A/2)(1 - xi)
double xi_residual(const ModelParams& params, double xi);

/// Smallest root of xi_residual in [0, 1]. Throws DomainError for A = 0 and
/// BracketError when the residual has no sign change on [0, 1].
double solve_xi(const ModelParams& params, const Tolerance& tol = {});

/// d xi / d omega0 at a solution xi of the fixed-point equation.
double dxi_domega0(const ModelParams& params, double xi);

// Mixing angle with the conventions 0 (a_tilde = 0, delta > 0), pi/2 (a_tilde = 0, delta < 0)
// and pi/4 when both vanish.
double mixing_angle(double a_tilde, double delta_tilde);

ChrwFrame build_frame(const ModelParams& params, FrameMode mode, const Tolerance& tol = {});

// rho_{++}(t) = constant + 0.5 * <s_z> * (cos_term + sin_term)
struct LabPopulationMap {
    double constant = 0.5;
    double cos_term = 0.0; // cos 2theta cos(z sin wt)
    double sin_term = 0.0; // sin 2theta sin wt sin(z sin wt)

    double factor() const { return cos_term + sin_term; }
};

LabPopulationMap lab_population_map(const ChrwFrame& frame, const ModelParams& params, double t);

} // namespace bsl
