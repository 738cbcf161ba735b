// spectrum.hpp: probe-pump absorption spectrum from Laplace-transformed Bloch solutions

#pragma once

#include <string>
#include <vector>

#include "bsl/dissipative.hpp"

namespace bsl {

enum class Normalization { Raw, PeakUnit };

struct SpectrumTrace {
    std::vector<double> nu_grid;
    std::vector<double> values;
    ModelParams params;
    FrameMode mode = FrameMode::Chrw;
    int n_max = 1;
    Normalization normalization = Normalization::PeakUnit;
    double rabi_tilde = 0.0;
};

// (f+_{+,n}, f+_{-,n}, f+_{z,n}) of the n-th sideband operator C_n.
FCoefficients chat_coefficients(const ChrwFrame& frame, int n);

struct InitialConditions {
    cplx x0;
    cplx y0;
    cplx z0;
};

// Expectations of [s_+, C_n], [s_-, C_n], [s_z, C_n] in the steady state.
InitialConditions initial_conditions(const ChrwFrame& frame, const SteadyState& steady, int n);

struct LaplaceG {
    cplx g_plus;
    cplx g_minus;
    cplx g_z;
};

// Cubic denominator F(p).
cplx laplace_denominator(const RateSet& r, double rabi_tilde, cplx p);

/// Closed-form Laplace transforms of the homogeneous Bloch solution started at
/// (x0, y0, z0) = (<s_+>, <s_->, <s_z>). Throws NumericalError on |F(p)| below
/// 1e-14 of its leading scale.
LaplaceG laplace_g(const RateSet& r, double rabi_tilde, const InitialConditions& init, cplx p);

// Smallest odd n with n >= max(nu)/omega + 1, bounded by the sideband truncation order.
int default_sideband_order(const ChrwFrame& frame, const ModelParams& params, const std::vector<double>& nu_grid);

/// S(nu) = 1/4 Re sum_{n odd} [f+ g_- + f- g_+ + fz g_z] at p = -i(nu - n omega).
/// n_max = 0 selects default_sideband_order. Requires kappa > 0 and nu > 0.
SpectrumTrace spectrum(const ModelParams& params, FrameMode mode, const std::vector<double>& nu_grid,
                       int n_max = 0, Normalization normalization = Normalization::PeakUnit,
                       std::vector<std::string>* warnings = nullptr);

/// int |S(c+d) - S(c-d)| / int (|S(c+d)| + |S(c-d)|) over d in [rabi/2, 3 rabi/2].
/// Requires a uniform grid symmetric about center covering the window.
double asymmetry_metric(const SpectrumTrace& trace, double center);

// Uniform grid center + k h, |k| <= K, with K h >= half_width.
std::vector<double> symmetric_grid(double center, double half_width, int points_per_side);

} // namespace bsl
