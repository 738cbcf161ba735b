// numerics.cpp: Bessel functions and Brent-type scalar solvers

#include "bsl/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bsl {

namespace {

constexpr double kSeriesCutoff = 8.0;

// Power series sum_k (-1)^k (x/2)^(2k+n) / (k! (n+k)!) in extended precision.
long double bessel_series(int n, long double x) {
    const long double h = x / 2.0L;
    long double term = 1.0L;
    for (int k = 1; k <= n; ++k) {
        term *= h / static_cast<long double>(k);
    }
    if (term == 0.0L) return 0.0L;
    const long double h2 = h * h;
    long double sum = 0.0L;
    for (int k = 0; k < 500; ++k) {
        sum += term;
        term *= -h2 / (static_cast<long double>(k + 1) * static_cast<long double>(n + k + 1));
        if (std::fabs(term) <= std::numeric_limits<long double>::epsilon() * std::fabs(sum)) break;
    }
    return sum;
}

// Miller's algorithm; x > 0.
std::vector<double> bessel_miller(int n_max, double x) {
    const int scale = std::max(n_max, static_cast<int>(x));
    int m = scale + 30 + static_cast<int>(std::sqrt(60.0 * scale));
    if (m % 2 != 0) ++m;

    std::vector<long double> j(static_cast<std::size_t>(m) + 2, 0.0L);
    j[static_cast<std::size_t>(m) + 1] = 0.0L;
    j[static_cast<std::size_t>(m)] = 1e-30L;
    const long double lx = x;
    for (int k = m; k >= 1; --k) {
        const auto uk = static_cast<std::size_t>(k);
        j[uk - 1] = (2.0L * k / lx) * j[uk] - j[uk + 1];
        if (std::fabs(j[uk - 1]) > 1e300L) {
            for (std::size_t i = uk - 1; i < j.size(); ++i) j[i] *= 1e-300L;
        }
    }
    long double norm = j[0];
    for (int k = 2; k <= m; k += 2) norm += 2.0L * j[static_cast<std::size_t>(k)];

    std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
    for (int k = 0; k <= n_max; ++k) {
        out[static_cast<std::size_t>(k)] = static_cast<double>(j[static_cast<std::size_t>(k)] / norm);
    }
    return out;
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(what) + ": argument is not finite");
    }
}

} // namespace

void Tolerance::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol >= 0.0) || max_iter < 1) {
        throw std::invalid_argument("Tolerance requires abs_tol > 0, rel_tol >= 0, max_iter >= 1");
    }
}

Tolerance machine_tolerance() {
    return Tolerance{std::numeric_limits<double>::min(), 2.0 * std::numeric_limits<double>::epsilon(), 400};
}

double bessel_j(int n, double x) {
    require_finite(x, "bessel_j");
    double sign = 1.0;
    if (n < 0) {
        n = -n;
        if (n % 2 != 0) sign = -sign;
    }
    if (x < 0.0) {
        x = -x;
        if (n % 2 != 0) sign = -sign;
    }
    if (x == 0.0) return n == 0 ? sign : 0.0;
    if (x < kSeriesCutoff) return sign * static_cast<double>(bessel_series(n, x));
    return sign * bessel_miller(n, x)[static_cast<std::size_t>(n)];
}

std::vector<double> bessel_j_sequence(int n_max, double x) {
    require_finite(x, "bessel_j_sequence");
    if (n_max < 0) throw std::invalid_argument("bessel_j_sequence: n_max must be non-negative");
    const double ax = std::fabs(x);
    std::vector<double> out;
    if (ax == 0.0) {
        out.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
        out[0] = 1.0;
        return out;
    }
    if (ax < kSeriesCutoff) {
        out.resize(static_cast<std::size_t>(n_max) + 1);
        for (int k = 0; k <= n_max; ++k) out[static_cast<std::size_t>(k)] = static_cast<double>(bessel_series(k, ax));
    } else {
        out = bessel_miller(n_max, ax);
    }
    if (x < 0.0) {
        for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
    }
    return out;
}

double bessel_j0_minus_one(double x) {
    require_finite(x, "bessel_j0_minus_one");
    if (std::fabs(x) >= 2.0) return bessel_j(0, x) - 1.0;
    const long double h2 = static_cast<long double>(x) * x / 4.0L;
    long double term = -h2;
    long double sum = 0.0L;
    for (int k = 1; k < 100 && term != 0.0L; ++k) {
        sum += term;
        term *= -h2 / (static_cast<long double>(k + 1) * static_cast<long double>(k + 1));
        if (std::fabs(term) <= std::numeric_limits<long double>::epsilon() * std::fabs(sum)) break;
    }
    return static_cast<double>(sum);
}

double first_j0_zero() {
    static const double zero =
        find_root_bracketed([](double x) { return bessel_j(0, x); }, 2.0, 3.0, machine_tolerance());
    return zero;
}

double find_root_bracketed(const ScalarFunction& f, double lo, double hi, const Tolerance& tol) {
    tol.validate();
    constexpr double eps = std::numeric_limits<double>::epsilon();

    auto eval = [&f](double x) {
        const double y = f(x);
        if (!std::isfinite(y)) {
            std::ostringstream os;
            os << "find_root_bracketed: non-finite function value at x = " << x;
            throw DomainError(os.str());
        }
        return y;
    };

    double a = lo;
    double b = hi;
    double fa = eval(a);
    double fb = eval(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream os;
        os << "find_root_bracketed: no sign change on [" << lo << ", " << hi << "] (f = " << fa
           << ", " << fb << ")";
        throw BracketError(os.str());
    }

    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 0; iter < tol.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * (tol.rel_tol * std::fabs(b) + tol.abs_tol);
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;

        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = eval(b);
    }
    std::ostringstream os;
    os << "find_root_bracketed: no convergence after " << tol.max_iter << " iterations (x = " << b
       << ", f = " << fb << ")";
    throw ConvergenceError(os.str());
}

ScalarMinimum minimize_scalar_bracketed(const ScalarFunction& f, double lo, double hi, const Tolerance& tol) {
    tol.validate();
    if (!(lo < hi)) std::swap(lo, hi);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double golden = 0.5 * (3.0 - std::sqrt(5.0));

    double a = lo;
    double b = hi;
    double x = a + golden * (b - a);
    double w = x;
    double v = x;
    double fx = f(x);
    double fw = fx;
    double fv = fx;
    double d = 0.0;
    double e = 0.0;

    for (int iter = 0; iter < tol.max_iter; ++iter) {
        const double xm = 0.5 * (a + b);
        const double tol1 = tol.rel_tol * std::fabs(x) + tol.abs_tol / 3.0 + eps * std::fabs(x);
        const double tol2 = 2.0 * tol1;
        if (std::fabs(x - xm) <= tol2 - 0.5 * (b - a)) return {x, fx};

        bool golden_step = true;
        if (std::fabs(e) > tol1) {
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::fabs(q);
            const double etemp = e;
            e = d;
            if (std::fabs(p) < std::fabs(0.5 * q * etemp) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
                golden_step = false;
            }
        }
        if (golden_step) {
            e = (x >= xm) ? a - x : b - x;
            d = golden * e;
        }
        const double u = std::fabs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
        const double fu = f(u);
        if (fu <= fx) {
            if (u >= x) a = x; else b = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    std::ostringstream os;
    os << "minimize_scalar_bracketed: no convergence after " << tol.max_iter << " iterations";
    throw ConvergenceError(os.str());
}

} // namespace bsl
