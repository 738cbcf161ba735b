// dissipative.cpp: sideband coefficients, rate tensor, Bloch equations, lab-frame oracle

#include "bsl/dissipative.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace bsl {

namespace {

constexpr int kMaxOrder = 61;

Eigen::Matrix2cd block(double fz, double upper, double lower) {
    Eigen::Matrix2cd x;
    x << 0.5 * fz, 0.5 * upper, 0.5 * lower, -0.5 * fz;
    return x;
}

} // namespace

FCoefficients fourier_f(const ChrwFrame& frame, int l, int sign) {
    if (l < 1 || l % 2 == 0) throw std::invalid_argument("fourier_f: l must be a positive odd integer");
    if (sign != 1 && sign != -1) throw std::invalid_argument("fourier_f: sign must be +1 or -1");
    const double z = frame.bessel_arg;
    const double s = sign;
    const double d = l == 1 ? 1.0 : 0.0;
    const double jm = bessel_j(l - 1, z);
    const double j = bessel_j(l, z);
    const double jp = bessel_j(l + 1, z);
    const double c2 = std::cos(frame.theta) * std::cos(frame.theta);
    const double s2 = std::sin(frame.theta) * std::sin(frame.theta);
    const double sin2 = std::sin(2.0 * frame.theta);
    const double cos2 = std::cos(2.0 * frame.theta);

    FCoefficients f;
    f.plus = -(d + s * jm) * c2 - s * jp * s2 - s * j * sin2;
    f.minus = (d + s * jm) * s2 + s * jp * c2 - s * j * sin2;
    f.z = 0.5 * (d + s * jm - s * jp) * sin2 - s * j * cos2;
    return f;
}

int truncation_order(const ChrwFrame& frame) {
    const std::vector<double> j = bessel_j_sequence(kMaxOrder + 1, frame.bessel_arg);
    for (int L = 1; L <= kMaxOrder; L += 2) {
        const double m = std::max({std::fabs(j[L - 1]), std::fabs(j[L]), std::fabs(j[L + 1])});
        if (m < 1e-14) return L;
    }
    return kMaxOrder;
}

FourierCoefficients fourier_coefficients(const ChrwFrame& frame) {
    FourierCoefficients c;
    c.max_order = truncation_order(frame);
    for (int l = 1; l <= c.max_order; l += 2) {
        c.plus_sign.push_back(fourier_f(frame, l, +1));
        c.minus_sign.push_back(fourier_f(frame, l, -1));
    }
    return c;
}

Eigen::Matrix2cd x_plus(const ChrwFrame& frame, int n) {
    if (n % 2 == 0) return Eigen::Matrix2cd::Zero();
    if (n > 0) {
        const FCoefficients f = fourier_f(frame, n, +1);
        return block(f.z, f.plus, f.minus);
    }
    const FCoefficients f = fourier_f(frame, -n, -1);
    return block(f.z, f.minus, f.plus);
}

Eigen::Matrix2cd x_minus(const ChrwFrame& frame, int n) {
    return x_plus(frame, -n).adjoint();
}

LindbladTensor lindblad_tensor(const ChrwFrame& frame, const ModelParams& params) {
    const int L = truncation_order(frame);
    const int nmax = L + 1;
    std::vector<Eigen::Matrix2cd> xp(2 * nmax + 1);
    std::vector<Eigen::Matrix2cd> xm(2 * nmax + 1);
    for (int n = -nmax; n <= nmax; ++n) {
        xp[n + nmax] = x_plus(frame, n);
        xm[n + nmax] = x_minus(frame, n);
    }
    auto XP = [&](int n) -> const Eigen::Matrix2cd& { return xp[n + nmax]; };
    auto XM = [&](int n) -> const Eigen::Matrix2cd& { return xm[n + nmax]; };

    LindbladTensor t;
    for (int n = -L; n <= L; n += 2) {
        const Eigen::Matrix2cd pm = XP(n) * XM(-n);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int m = 0; m < 2; ++m)
                    for (int v = 0; v < 2; ++v) {
                        cplx acc = -2.0 * XM(n)(a, m) * XP(-n)(v, b);
                        if (v == b) acc += pm(a, m);
                        if (m == a) acc += pm(v, b);
                        t(a, b, m, v) += acc;
                    }
    }
    for (cplx& x : t.data) x *= 0.5 * params.kappa;
    return t;
}

RateSet rates_from_tensor(const LindbladTensor& L) {
    RateSet r;
    r.gamma_z = L(0, 0, 0, 0) - L(0, 0, 1, 1);
    r.gamma_0 = L(0, 0, 0, 0) + L(0, 0, 1, 1);
    r.gamma_1 = L(0, 0, 0, 1);
    r.gamma_2 = 0.5 * (L(1, 0, 0, 0) + L(1, 0, 1, 1));
    r.gamma_minus = L(1, 0, 0, 1);
    r.gamma_plus = L(1, 0, 1, 0);
    return r;
}

RateSet rates(const ChrwFrame& frame, const ModelParams& params) {
    return rates_from_tensor(lindblad_tensor(frame, params));
}

SteadyState steady_state(const RateSet& r, double rabi) {
    const cplx dm = r.gamma_minus - r.gamma_plus;
    const cplx den = 4.0 * r.gamma_1 * r.gamma_1 * dm +
                     (rabi * rabi - r.gamma_minus * r.gamma_minus + r.gamma_plus * r.gamma_plus) * r.gamma_z;
    const double scale = std::abs(r.gamma_z) * (rabi * rabi + std::norm(r.gamma_z)) + std::abs(r.gamma_1 * r.gamma_1 * dm);
    if (!(std::abs(den) > 1e-14 * scale) || scale == 0.0) {
        throw NumericalError("steady_state: singular denominator");
    }
    const cplx num = -rabi * rabi * r.gamma_0 - 4.0 * r.gamma_1 * r.gamma_2 * dm +
                     r.gamma_0 * (r.gamma_minus * r.gamma_minus - r.gamma_plus * r.gamma_plus);
    SteadyState s;
    s.sz = (num / den).real();
    s.splus = (cplx(0.0, rabi) - r.gamma_minus + r.gamma_plus) * (r.gamma_0 * r.gamma_1 - r.gamma_2 * r.gamma_z) / den;
    return s;
}

Eigen::Matrix3cd bloch_matrix(const RateSet& r, double rabi) {
    const cplx i(0.0, 1.0);
    Eigen::Matrix3cd m;
    m << -r.gamma_z, -2.0 * r.gamma_1, -2.0 * r.gamma_1,
         -r.gamma_1, i * rabi - r.gamma_plus, -r.gamma_minus,
         -std::conj(r.gamma_1), -std::conj(r.gamma_minus), -i * rabi - std::conj(r.gamma_plus);
    return m;
}

Eigen::Vector3cd bloch_drive(const RateSet& r) {
    return Eigen::Vector3cd(-r.gamma_0, -r.gamma_2, -std::conj(r.gamma_2));
}

std::vector<BlochState> bloch_evolve(const RateSet& r, double rabi, const BlochState& initial,
                                     const std::vector<double>& t_grid, std::vector<std::string>* warnings) {
    const double gz = std::abs(r.gamma_z);
    if (warnings && rabi < 10.0 * gz) {
        std::ostringstream os;
        os << "effective Rabi frequency " << rabi << " is not large against the decay scale " << gz
           << "; the partial secular approximation is questionable";
        warnings->push_back(os.str());
    }
    Eigen::Matrix4cd aug = Eigen::Matrix4cd::Zero();
    aug.topLeftCorner<3, 3>() = bloch_matrix(r, rabi);
    aug.topRightCorner<3, 1>() = bloch_drive(r);

    Eigen::Vector4cd v(initial.sz, initial.splus, initial.sminus, 1.0);
    std::vector<BlochState> out;
    out.reserve(t_grid.size());
    double t_prev = 0.0;
    bool stiff_warned = false;
    for (double t : t_grid) {
        const double dt = t - t_prev;
        if (dt < 0.0) throw std::invalid_argument("bloch_evolve: t_grid must be non-decreasing and start at t >= 0");
        if (warnings && !stiff_warned && gz * dt > 0.1) {
            warnings->push_back("time step exceeds 0.1 / gamma_z; samples are exact but sparse against the decay");
            stiff_warned = true;
        }
        if (dt > 0.0) {
            const Eigen::Matrix4cd step = (aug * dt).exp();
            v = step * v;
        }
        out.push_back({v(0), v(1), v(2)});
        t_prev = t;
    }
    return out;
}

double population_avg(const ChrwFrame& frame, const SteadyState& steady) {
    const double z = frame.bessel_arg;
    return 0.5 * (1.0 + steady.sz * (std::cos(2.0 * frame.theta) * bessel_j(0, z) +
                                     std::sin(2.0 * frame.theta) * bessel_j(1, z)));
}

double population_avg_approx(const RateSet& r, double kappa) {
    return 0.5 - (r.gamma_0 * r.gamma_0 / (2.0 * kappa * r.gamma_z)).real();
}

double population_time(const ChrwFrame& frame, const ModelParams& params, const SteadyState& steady, double t) {
    const LabPopulationMap m = lab_population_map(frame, params, t);
    return m.constant + 0.5 * steady.sz * m.factor();
}

PopulationPoint population_point(const ModelParams& params, FrameMode mode) {
    params.validate();
    if (!(params.kappa > 0.0)) throw std::invalid_argument("population_point: kappa must be positive");
    if (params.amplitude_A == 0.0) return {params.omega, 0.0, 0.0};
    const ChrwFrame frame = build_frame(params, mode);
    const RateSet r = rates(frame, params);
    const SteadyState s = steady_state(r, frame.rabi_tilde);
    return {params.omega, population_avg(frame, s), population_avg_approx(r, params.kappa)};
}

namespace {

using OdeState = std::array<double, 8>;

Eigen::Matrix2cd unpack(const OdeState& x) {
    Eigen::Matrix2cd m;
    m << cplx(x[0], x[1]), cplx(x[2], x[3]), cplx(x[4], x[5]), cplx(x[6], x[7]);
    return m;
}

OdeState pack(const Eigen::Matrix2cd& m) {
    return {m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag(),
            m(1, 0).real(), m(1, 0).imag(), m(1, 1).real(), m(1, 1).imag()};
}

Eigen::Matrix2cd hermitize(const Eigen::Matrix2cd& m) {
    return 0.5 * (m + m.adjoint());
}

} // namespace

std::vector<Eigen::Matrix2cd> oracle_lindblad(const ModelParams& params, const Eigen::Matrix2cd& rho0,
                                              const std::vector<double>& t_grid, double tol) {
    namespace ode = boost::numeric::odeint;
    params.validate();
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-12 || std::abs(rho0.trace() - 1.0) > 1e-12) {
        throw std::invalid_argument("oracle_lindblad: rho0 must be Hermitian with unit trace");
    }
    const cplx i(0.0, 1.0);
    const double kappa = params.kappa;
    auto rhs = [&](const OdeState& x, OdeState& dxdt, double t) {
        const Eigen::Matrix2cd rho = unpack(x);
        const double a = 0.5 * params.amplitude_A * std::cos(params.omega * t);
        Eigen::Matrix2cd h;
        h << 0.5 * params.omega0, a, a, -0.5 * params.omega0;
        Eigen::Matrix2cd d = -i * (h * rho - rho * h);
        d(0, 0) -= kappa * rho(0, 0);
        d(1, 1) += kappa * rho(0, 0);
        d(0, 1) -= 0.5 * kappa * rho(0, 1);
        d(1, 0) -= 0.5 * kappa * rho(1, 0);
        dxdt = pack(d);
    };

    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<OdeState>());
    const double period = 2.0 * std::numbers::pi / params.omega;
    double dt = period / 200.0;
    double t = 0.0;
    OdeState x = pack(rho0);

    std::vector<Eigen::Matrix2cd> out;
    out.reserve(t_grid.size());
    for (double target : t_grid) {
        if (target < t) throw std::invalid_argument("oracle_lindblad: t_grid must be non-decreasing from 0");
        int rejected = 0;
        while (t < target) {
            const bool last = dt >= target - t;
            double h = last ? target - t : dt;
            if (stepper.try_step(rhs, x, t, h) == ode::success) {
                x = pack(hermitize(unpack(x)));
                if (last) t = target;
                // h now holds the proposed next step; keep it unless this was a clipped final step
                if (!last || h > dt) dt = h;
                rejected = 0;
            } else {
                dt = h;
                if (++rejected > 200) throw ConvergenceError("oracle_lindblad: step size underflow");
            }
        }
        const Eigen::Matrix2cd rho = hermitize(unpack(x));
        if (std::abs(rho.trace() - 1.0) > 1e-10) {
            std::ostringstream os;
            os << "oracle_lindblad: trace drift " << std::abs(rho.trace() - 1.0) << " at t = " << target;
            throw NumericalError(os.str());
        }
        out.push_back(rho);
        t = target;
    }
    return out;
}

double oracle_population_average(const ModelParams& params, double t_start, int periods, int samples_per_period,
                                 double tol) {
    if (periods < 1 || samples_per_period < 1) throw std::invalid_argument("oracle_population_average: empty window");
    const double period = 2.0 * std::numbers::pi / params.omega;
    const std::size_t count = static_cast<std::size_t>(periods) * static_cast<std::size_t>(samples_per_period);
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) grid[k] = t_start + period * static_cast<double>(k) / samples_per_period;
    Eigen::Matrix2cd rho0 = Eigen::Matrix2cd::Zero();
    rho0(1, 1) = 1.0;
    const std::vector<Eigen::Matrix2cd> traj = oracle_lindblad(params, rho0, grid, tol);
    double sum = 0.0;
    for (const auto& rho : traj) sum += rho(0, 0).real();
    return sum / static_cast<double>(count);
}

} // namespace bsl
