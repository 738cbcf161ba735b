// numerics.hpp: Bessel functions of the first kind and bracketed scalar solvers

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsl {

// Every numerical failure derives from NumericalError so front ends can map
// the whole family onto a single exit code.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// f(lo) and f(hi) do not bracket a root, or no bracket could be located.
class BracketError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

struct Tolerance {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_iter = 200;

    // Throws std::invalid_argument unless abs_tol > 0, rel_tol >= 0, max_iter >= 1.
    void validate() const;
};

// Tolerance that drives Brent-type iterations down to adjacent doubles.
Tolerance machine_tolerance();

/// J_n(x), first kind. Power series for |x| < 8, Miller's downward recurrence
/// normalized by J_0 + 2 sum J_2k = 1 otherwise. Negative n and x are handled
/// through the reflection formulas. Throws DomainError for non-finite x.
double bessel_j(int n, double x);

/// J_0(x), ..., J_{n_max}(x) in one pass.
std::vector<double> bessel_j_sequence(int n_max, double x);

/// J_0(x) - 1 without cancellation for small |x|.
double bessel_j0_minus_one(double x);

/// First positive zero of J_0, computed once with the root finder below.
double first_j0_zero();

using ScalarFunction = std::function<double(double)>;

/// Brent's method (inverse quadratic interpolation guarded by bisection).
/// Terminates once the bracket is narrower than rel_tol*|x| + abs_tol or an
/// exact zero is hit.
double find_root_bracketed(const ScalarFunction& f, double lo, double hi,
                           const Tolerance& tol = {});

struct ScalarMinimum {
    double x;
    double f;
};

/// Brent's minimizer (golden section with parabolic steps). f is assumed
/// unimodal on [lo, hi].
ScalarMinimum minimize_scalar_bracketed(const ScalarFunction& f, double lo, double hi,
                                        const Tolerance& tol = {});

} // namespace bsl
