// resonance.cpp: Bloch-Siegert shift solvers

#include "bsl/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bsl/chrw.hpp"
#include "bsl/floquet.hpp"
#include "bsl/parallel.hpp"

namespace bsl {

namespace {

constexpr int kScanCells = 48;

void require_drive(const char* who, double omega0, double A) {
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
        throw std::invalid_argument(std::string(who) + ": omega0 must be positive");
    }
    if (!(A > 0.0) || !std::isfinite(A)) {
        throw std::invalid_argument(std::string(who) + ": A must be positive");
    }
}

double shift_scale(double omega0, double A) {
    const double a = 0.25 * A;
    return a * a / omega0;
}

Tolerance shift_tolerance(const Tolerance& tol, double omega0, double A) {
    tol.validate();
    Tolerance t = tol;
    t.abs_tol = tol.abs_tol * shift_scale(omega0, A);
    return t;
}

ShiftResult make_result(ShiftMethod m, double omega0, double A, double shift) {
    ShiftResult r;
    r.method = m;
    r.a_over_omega0 = A / omega0;
    r.shift = shift;
    r.omega_res = omega0 + shift;
    return r;
}

// First sign change of f on a uniform grid over [lo, hi]; returns false when none is seen.
bool scan_sign_change(const ScalarFunction& f, double lo, double hi, int cells, double& a, double& b,
                      std::string* trace) {
    std::ostringstream os;
    double x0 = lo;
    double f0 = f(x0);
    os << x0 << ":" << (f0 < 0 ? '-' : '+');
    for (int i = 1; i <= cells; ++i) {
        const double x1 = lo + (hi - lo) * i / cells;
        const double f1 = f(x1);
        os << " " << x1 << ":" << (f1 < 0 ? '-' : '+');
        if ((f0 < 0.0) != (f1 < 0.0) || f0 == 0.0) {
            a = x0;
            b = x1;
            return true;
        }
        x0 = x1;
        f0 = f1;
    }
    if (trace) *trace = os.str();
    return false;
}

} // namespace

const char* method_name(ShiftMethod m) {
    switch (m) {
        case ShiftMethod::Chrw: return "chrw";
        case ShiftMethod::FloquetNumeric: return "floquet";
        case ShiftMethod::ShirleyIterative: return "shirley";
        case ShiftMethod::Perturbative6: return "pert6";
        case ShiftMethod::Asymptotic: return "asymptotic";
    }
    return "unknown";
}

std::optional<ShiftMethod> parse_method(const std::string& name) {
    for (ShiftMethod m : {ShiftMethod::Chrw, ShiftMethod::FloquetNumeric, ShiftMethod::ShirleyIterative,
                          ShiftMethod::Perturbative6, ShiftMethod::Asymptotic}) {
        if (name == method_name(m)) return m;
    }
    return std::nullopt;
}

double checked_j0_zero() {
    const double z = first_j0_zero();
    if (std::fabs(z - 2.404826) > 5e-7) {
        std::ostringstream os;
        os << "first J0 zero evaluated as " << z << ", expected 2.404826";
        throw NumericalError(os.str());
    }
    return z;
}

ShiftBracket shift_bracket(double omega0, double A) {
    return {std::max(0.0, 0.9 * A / checked_j0_zero() - omega0), A};
}

double chrw_resonance_function(double omega0, double A, double delta) {
    const double omega = omega0 + delta;
    const ModelParams p{omega0, A, omega, 0.0};
    const double xi = solve_xi(p, machine_tolerance());
    const double z = A * xi / omega;
    const double j0m1 = bessel_j0_minus_one(z);
    const double j0 = 1.0 + j0m1;
    const double j1 = bessel_j(1, z);
    const double dxi = dxi_domega0(p, xi);
    return 2.0 * (omega0 * j0m1 - delta) * (j0 - omega0 * (A / omega) * j1 * dxi) -
           2.0 * A * A * (1.0 - xi) * dxi;
}

double shirley_rhs_shift(double omega0, double A, double delta) {
    const double w = omega0 + delta;
    const double s = w + omega0;
    const double a2 = A * A;
    const double s2 = s * s;
    const double w0 = omega0;
    const double poly = 9.0 * std::pow(w, 5) - 126.0 * std::pow(w, 4) * w0 + 82.0 * std::pow(w, 3) * w0 * w0 +
                        42.0 * w * w * std::pow(w0, 3) - 23.0 * w * std::pow(w0, 4) - 8.0 * std::pow(w0, 5);
    const double sub = 9.0 * w * w - w0 * w0;
    const double t1 = w * a2 / (4.0 * s2);
    const double t2 = (2.0 * w0 - w) * a2 * a2 / (64.0 * s2 * s2);
    const double t3 = poly * a2 * a2 * a2 / (256.0 * s2 * s2 * s2 * sub * sub);
    return t1 + t2 + t3;
}

ShiftResult bs_chrw(double omega0, double A, const Tolerance& tol) {
    require_drive("bs_chrw", omega0, A);
    const Tolerance t = shift_tolerance(tol, omega0, A);
    int evals = 0;
    ScalarFunction f = [&](double d) {
        ++evals;
        return chrw_resonance_function(omega0, A, d);
    };
    ShiftBracket br = shift_bracket(omega0, A);
    double lo = br.lo;
    double hi = br.hi;
    const double flo = f(lo);
    const double fhi = f(hi);
    if ((flo < 0.0) == (fhi < 0.0)) {
        std::string trace;
        if (!scan_sign_change(f, br.lo, br.hi, kScanCells, lo, hi, &trace)) {
            throw BracketError("bs_chrw: resonance condition has no sign change on the bracket; sweep " + trace);
        }
    }
    const double shift = find_root_bracketed(f, lo, hi, t);
    ShiftResult r = make_result(ShiftMethod::Chrw, omega0, A, shift);
    r.residual = std::fabs(chrw_resonance_function(omega0, A, shift));
    r.iterations = evals;
    return r;
}

ShiftResult bs_floquet_numeric(double omega0, double A, const Tolerance& tol) {
    require_drive("bs_floquet_numeric", omega0, A);
    const Tolerance t = shift_tolerance(tol, omega0, A);
    const ShiftBracket br = shift_bracket(omega0, A);
    const int N = default_truncation(ModelParams{omega0, A, omega0 + br.lo, 0.0});
    int evals = 0;
    ScalarFunction dq = [&](double d) {
        ++evals;
        return parity_branch(ModelParams{omega0, A, omega0 + d, 0.0}, N).dq_domega0;
    };

    double lo = 0.0;
    double hi = 0.0;
    double shift = 0.0;
    if (scan_sign_change(dq, br.lo, br.hi, kScanCells, lo, hi, nullptr)) {
        shift = find_root_bracketed(dq, lo, hi, t);
    } else {
        ScalarFunction sq = [&](double d) {
            const double v = dq(d);
            return v * v;
        };
        shift = minimize_scalar_bracketed(sq, br.lo, br.hi, t).x;
    }
    ShiftResult r = make_result(ShiftMethod::FloquetNumeric, omega0, A, shift);
    r.residual = std::fabs(parity_branch(ModelParams{omega0, A, omega0 + shift, 0.0}, N).dq_domega0);
    r.iterations = evals;
    return r;
}

ShiftResult bs_shirley_iterative(double omega0, double A, const Tolerance& tol) {
    require_drive("bs_shirley_iterative", omega0, A);
    const Tolerance t = shift_tolerance(tol, omega0, A);
    double delta = shift_bracket(omega0, A).lo;
    double relax = 1.0;
    double last_defect = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= t.max_iter; ++k) {
        const double rhs = shirley_rhs_shift(omega0, A, delta);
        const double defect = rhs - delta;
        if (!std::isfinite(defect)) break;
        if (std::fabs(defect) <= t.abs_tol + t.rel_tol * std::fabs(rhs)) {
            ShiftResult r = make_result(ShiftMethod::ShirleyIterative, omega0, A, rhs);
            r.residual = std::fabs(defect);
            r.iterations = k;
            return r;
        }
        if (std::fabs(defect) > std::fabs(last_defect)) relax = 0.5;
        last_defect = defect;
        delta += relax * defect;
    }
    std::ostringstream os;
    os << "bs_shirley_iterative: no convergence for A = " << A << "; last shift " << delta << ", defect "
       << last_defect;
    throw ConvergenceError(os.str());
}

ShiftResult bs_perturbative6(double omega0, double A) {
    if (!(omega0 > 0.0)) throw std::invalid_argument("bs_perturbative6: omega0 must be positive");
    if (!(A >= 0.0)) throw std::invalid_argument("bs_perturbative6: A must be non-negative");
    const double a = 0.25 * A;
    const double a2 = a * a;
    const double shift = a2 / omega0 + a2 * a2 / (4.0 * std::pow(omega0, 3)) -
                         35.0 * a2 * a2 * a2 / (32.0 * std::pow(omega0, 5));
    return make_result(ShiftMethod::Perturbative6, omega0, A, shift);
}

ShiftResult bs_asymptotic(double omega0, double A) {
    require_drive("bs_asymptotic", omega0, A);
    return make_result(ShiftMethod::Asymptotic, omega0, A, A / checked_j0_zero() - omega0);
}

ShiftResult compute_shift(ShiftMethod m, double omega0, double A, const Tolerance& tol) {
    switch (m) {
        case ShiftMethod::Chrw: return bs_chrw(omega0, A, tol);
        case ShiftMethod::FloquetNumeric: return bs_floquet_numeric(omega0, A, tol);
        case ShiftMethod::ShirleyIterative: return bs_shirley_iterative(omega0, A, tol);
        case ShiftMethod::Perturbative6: return bs_perturbative6(omega0, A);
        case ShiftMethod::Asymptotic: return bs_asymptotic(omega0, A);
    }
    throw std::invalid_argument("compute_shift: unknown method");
}

std::vector<DeviationRow> deviation_table(double omega0, const std::vector<double>& A_grid) {
    for (double A : A_grid) {
        if (!(A > 0.0)) throw std::invalid_argument("deviation_table: A values must be positive");
    }
    return parallel_map(A_grid.size(), [&](std::size_t i) {
        const double A = A_grid[i];
        DeviationRow row;
        row.a_over_omega0 = A / omega0;
        row.numeric = bs_floquet_numeric(omega0, A).shift;
        row.chrw = bs_chrw(omega0, A).shift;
        row.shirley = bs_shirley_iterative(omega0, A).shift;
        row.asymptotic = bs_asymptotic(omega0, A).shift;
        row.dev_chrw = std::fabs(row.chrw - row.numeric) / row.numeric;
        row.dev_shirley = std::fabs(row.shirley - row.numeric) / row.numeric;
        row.dev_asymptotic = std::fabs(row.asymptotic - row.numeric) / row.numeric;
        return row;
    });
}

} // namespace bsl
