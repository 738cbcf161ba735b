// validation.hpp: oracle cross-checks shared by the CLI validate command and the tests

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bsl/dissipative.hpp"
#include "bsl/spectrum.hpp"

namespace bsl {

struct ReferenceShiftRow {
    double a_over_omega0;
    double numerical;
    double chrw;
    double shirley;
    double asymptotic;  // NaN where the asymptote is not tabulated
};

// Published shift values for omega0 = 1.
const std::vector<ReferenceShiftRow>& reference_shift_table();

// Largest distance (mod omega) between any well-converged eigenvalue of the
// truncated Floquet matrix and the nearest monodromy quasienergy.
double monodromy_discrepancy(const ModelParams& params, int N = 0, int steps_per_period = 2000);

// |sum a_gamma |c|^2 - centered difference of the branch energy in omega0|, step h omega0.
double hellmann_feynman_discrepancy(const ModelParams& params, double h = 1e-6, int N = 0);

// |E(N + 10) - E(N)| for the tracked branch energy.
double truncation_change(const ModelParams& params, int N);

struct LindbladComparison {
    double oracle = 0.0;
    double closed_form = 0.0;
    double relative_deviation = 0.0;
};

// Long-time average of rho_{++} from the lab-frame oracle against the closed form,
// averaged over `periods` drive periods after 50/kappa.
LindbladComparison lindblad_vs_closed_form(const ModelParams& params, int periods = 200);

/// Composite Simpson quadrature of int_0^inf e^{-p tau} v(tau) dtau for the
/// homogeneous Bloch solution v, cut at 40 decay times.
LaplaceG laplace_quadrature(const RateSet& r, double rabi_tilde, const InitialConditions& init, cplx p);

// Max relative difference between laplace_g and laplace_quadrature at `points`
// pseudo-random p = -i(nu - omega), nu in omega +- 2 rabi_tilde.
double laplace_discrepancy(const ModelParams& params, int points, std::uint64_t seed = 12345);

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct ValidationOptions {
    bool quick = false;
    int truncation = 0;  // 0 selects the automatic Floquet truncation
};

std::vector<CheckResult> run_validation(const ValidationOptions& options);

} // namespace bsl
