// resonance.hpp: Bloch-Siegert shift by five methods

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsl/numerics.hpp"

namespace bsl {

enum class ShiftMethod { Chrw, FloquetNumeric, ShirleyIterative, Perturbative6, Asymptotic };

const char* method_name(ShiftMethod m);
std::optional<ShiftMethod> parse_method(const std::string& name);

struct ShiftResult {
    ShiftMethod method = ShiftMethod::Chrw;
    double a_over_omega0 = 0.0;
    double omega_res = 0.0;
    double shift = 0.0;      // omega_res - omega0
    double residual = 0.0;   // method-specific closure residual
    int iterations = 0;
};

// First zero of J0, checked against 2.404826 to 5e-7 (throws NumericalError otherwise).
double checked_j0_zero();

// Resonance search window for the shift delta = omega - omega0:
// [max(0, 0.9 A/j01 - omega0), A].
struct ShiftBracket {
    double lo;
    double hi;
};
ShiftBracket shift_bracket(double omega0, double A);

// Left-hand side of the CHRW resonance condition d(Omega_R^2)/d omega0 = 0 at omega = omega0 + delta.
double chrw_resonance_function(double omega0, double A, double delta);

// Right-hand side of the implicit series minus omega0, at omega = omega0 + delta.
double shirley_rhs_shift(double omega0, double A, double delta);

/// Resonance methods. Tolerance abs_tol is relative to the weak-drive shift
/// scale (A/4)^2/omega0; rel_tol applies to the shift itself.
ShiftResult bs_chrw(double omega0, double A, const Tolerance& tol = {});
ShiftResult bs_floquet_numeric(double omega0, double A, const Tolerance& tol = {});
ShiftResult bs_shirley_iterative(double omega0, double A, const Tolerance& tol = {});
ShiftResult bs_perturbative6(double omega0, double A);
ShiftResult bs_asymptotic(double omega0, double A);

ShiftResult compute_shift(ShiftMethod m, double omega0, double A, const Tolerance& tol = {});

struct DeviationRow {
    double a_over_omega0 = 0.0;
    double numeric = 0.0;
    double chrw = 0.0;
    double shirley = 0.0;
    double asymptotic = 0.0;
    double dev_chrw = 0.0;
    double dev_shirley = 0.0;
    double dev_asymptotic = 0.0;
};

// |delta_i - delta_num| / delta_num for CHRW, Shirley and the asymptote. Rows in input order.
std::vector<DeviationRow> deviation_table(double omega0, const std::vector<double>& A_grid);

} // namespace bsl
