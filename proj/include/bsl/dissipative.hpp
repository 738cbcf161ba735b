// dissipative.hpp: transformed-frame master equation, Bloch equations and lab-frame oracle

#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bsl/chrw.hpp"

namespace bsl {

using cplx = std::complex<double>;

// Coefficients of s_+, s_- and s_z in the l-th sideband operator, for sign = +1 or -1.
struct FCoefficients {
    double plus = 0.0;
    double minus = 0.0;
    double z = 0.0;
};

FCoefficients fourier_f(const ChrwFrame& frame, int l, int sign);

// Smallest odd L with max(|J_{L-1}|, |J_L|, |J_{L+1}|) < 1e-14 at A xi/omega, capped at 61.
int truncation_order(const ChrwFrame& frame);

struct FourierCoefficients {
    int max_order = 1;
    std::vector<FCoefficients> plus_sign;   // entry k holds l = 2k + 1
    std::vector<FCoefficients> minus_sign;
};

FourierCoefficients fourier_coefficients(const ChrwFrame& frame);

// X^+_{ab,n} in the dressed basis, index 0 = |+~>, 1 = |-~>.
Eigen::Matrix2cd x_plus(const ChrwFrame& frame, int n);
// X^-_{ab,n} = conj(X^+_{ba,-n})
Eigen::Matrix2cd x_minus(const ChrwFrame& frame, int n);

struct LindbladTensor {
    std::array<cplx, 16> data{};

    cplx& operator()(int a, int b, int m, int n) { return data[((a * 2 + b) * 2 + m) * 2 + n]; }
    const cplx& operator()(int a, int b, int m, int n) const { return data[((a * 2 + b) * 2 + m) * 2 + n]; }
};

LindbladTensor lindblad_tensor(const ChrwFrame& frame, const ModelParams& params);

struct RateSet {
    cplx gamma_z;
    cplx gamma_0;
    cplx gamma_1;
    cplx gamma_2;
    cplx gamma_minus;
    cplx gamma_plus;
};

RateSet rates_from_tensor(const LindbladTensor& L);
RateSet rates(const ChrwFrame& frame, const ModelParams& params);

struct SteadyState {
    double sz = 0.0;
    cplx splus;
};

// Throws NumericalError when the denominator vanishes.
SteadyState steady_state(const RateSet& r, double rabi_tilde);

struct BlochState {
    cplx sz;
    cplx splus;
    cplx sminus;
};

// Generator of the transformed Bloch equations on (s_z, s_+, s_-): d/dt v = M v + b.
Eigen::Matrix3cd bloch_matrix(const RateSet& r, double rabi_tilde);
Eigen::Vector3cd bloch_drive(const RateSet& r);

/// Exact propagation of the linear Bloch equations to each time in t_grid.
/// Warns when rabi_tilde < 10 |gamma_z| or a grid step exceeds 0.1/|gamma_z|.
std::vector<BlochState> bloch_evolve(const RateSet& r, double rabi_tilde, const BlochState& initial,
                                     const std::vector<double>& t_grid,
                                     std::vector<std::string>* warnings = nullptr);

// 1/2 {1 + sz [cos 2theta J0(z) + sin 2theta J1(z)]}
double population_avg(const ChrwFrame& frame, const SteadyState& steady);
// 1/2 - gamma_0^2 / (2 kappa gamma_z)
double population_avg_approx(const RateSet& r, double kappa);

double population_time(const ChrwFrame& frame, const ModelParams& params, const SteadyState& steady, double t);

struct PopulationPoint {
    double omega = 0.0;
    double population = 0.0;
    double population_approx = 0.0;
};

// Time-averaged excited population for one drive frequency; exactly 0 without drive.
PopulationPoint population_point(const ModelParams& params, FrameMode mode);

/// Lab-frame master equation drho/dt = -i[H(t), rho] + kappa D[s_-] rho, adaptive
/// Dormand-Prince with local error tol and Hermitian re-symmetrization per step.
/// Index 0 is the excited state. Throws NumericalError if the trace drifts past 1e-10.
std::vector<Eigen::Matrix2cd> oracle_lindblad(const ModelParams& params, const Eigen::Matrix2cd& rho0,
                                              const std::vector<double>& t_grid, double tol = 1e-10);

// Average of rho_{++} over [t_start, t_start + periods * 2pi/omega], starting in the ground state.
double oracle_population_average(const ModelParams& params, double t_start, int periods,
                                 int samples_per_period = 64, double tol = 1e-10);

} // namespace bsl
