// spectrum.cpp: probe-pump spectrum

#include "bsl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bsl/parallel.hpp"

namespace bsl {

FCoefficients chat_coefficients(const ChrwFrame& frame, int n) {
    return fourier_f(frame, n, +1);
}

InitialConditions initial_conditions(const ChrwFrame& frame, const SteadyState& steady, int n) {
    const FCoefficients f = chat_coefficients(frame, n);
    const cplx sz = steady.sz;
    const cplx sp = steady.splus;
    const cplx sm = std::conj(steady.splus);
    InitialConditions c;
    c.x0 = f.minus * sz - 2.0 * f.z * sp;
    c.y0 = -f.plus * sz + 2.0 * f.z * sm;
    c.z0 = 2.0 * f.plus * sp - 2.0 * f.minus * sm;
    return c;
}

cplx laplace_denominator(const RateSet& r, double rabi, cplx p) {
    const cplx g1sq = r.gamma_1 * r.gamma_1;
    const cplx gm = r.gamma_minus;
    const cplx gp = r.gamma_plus;
    const cplx gz = r.gamma_z;
    const double w2 = rabi * rabi;
    return p * p * p + 4.0 * g1sq * (gm - gp) + (w2 - gm * gm + gp * gp) * gz + p * p * (gz + 2.0 * gp) +
           p * (w2 - 4.0 * g1sq - gm * gm + gp * gp + 2.0 * gp * gz);
}

LaplaceG laplace_g(const RateSet& r, double rabi, const InitialConditions& c, cplx p) {
    const cplx i(0.0, 1.0);
    const cplx g1 = r.gamma_1;
    const cplx g1sq = g1 * g1;
    const cplx gm = r.gamma_minus;
    const cplx gp = r.gamma_plus;
    const cplx gz = r.gamma_z;
    const double w2 = rabi * rabi;

    const cplx f = laplace_denominator(r, rabi, p);
    const double ap = std::abs(p);
    const double scale = ap * ap * ap + ap * ap * std::abs(gz + 2.0 * gp) +
                         ap * (w2 + std::abs(4.0 * g1sq) + std::norm(gm) + std::norm(gp) + std::abs(2.0 * gp * gz)) +
                         std::abs(4.0 * g1sq * (gm - gp)) + (w2 + std::norm(gm) + std::norm(gp)) * std::abs(gz);
    if (!(std::abs(f) > 1e-14 * scale)) {
        std::ostringstream os;
        os << "laplace_g: p = " << p << " sits on a pole of the Bloch propagator";
        throw NumericalError(os.str());
    }
    const cplx pz = p + gz;
    LaplaceG g;
    g.g_plus = (c.x0 * ((p + gp + i * rabi) * pz - 2.0 * g1sq) + c.y0 * (2.0 * g1sq - gm * pz) -
                g1 * c.z0 * (p + i * rabi - gm + gp)) / f;
    g.g_minus = (c.y0 * ((p + gp - i * rabi) * pz - 2.0 * g1sq) + c.x0 * (2.0 * g1sq - gm * pz) -
                 g1 * c.z0 * (p - i * rabi - gm + gp)) / f;
    g.g_z = (c.z0 * ((p + gp) * (p + gp) + w2 - gm * gm) - 2.0 * g1 * c.x0 * (p + i * rabi - gm + gp) -
             2.0 * g1 * c.y0 * (p - i * rabi - gm + gp)) / f;
    return g;
}

int default_sideband_order(const ChrwFrame& frame, const ModelParams& params, const std::vector<double>& nu_grid) {
    double nu_max = 0.0;
    for (double nu : nu_grid) nu_max = std::max(nu_max, nu);
    int n = static_cast<int>(std::ceil(nu_max / params.omega + 1.0));
    if (n % 2 == 0) ++n;
    return std::max(1, std::min(n, truncation_order(frame)));
}

SpectrumTrace spectrum(const ModelParams& params, FrameMode mode, const std::vector<double>& nu_grid, int n_max,
                       Normalization normalization, std::vector<std::string>* warnings) {
    params.validate();
    if (!(params.kappa > 0.0)) throw std::invalid_argument("spectrum: kappa must be positive");
    for (double nu : nu_grid) {
        if (!(nu > 0.0) || !std::isfinite(nu)) throw std::invalid_argument("spectrum: probe frequencies must be positive");
    }
    if (n_max < 0 || (n_max > 0 && n_max % 2 == 0)) throw std::invalid_argument("spectrum: n_max must be odd");

    const ChrwFrame frame = build_frame(params, mode);
    if (warnings && frame.rabi_tilde < 10.0 * params.kappa) {
        std::ostringstream os;
        os << "effective Rabi frequency " << frame.rabi_tilde << " is below 10 kappa; the partial secular approximation is questionable";
        warnings->push_back(os.str());
    }
    const RateSet r = rates(frame, params);
    const SteadyState steady = steady_state(r, frame.rabi_tilde);

    SpectrumTrace trace;
    trace.nu_grid = nu_grid;
    trace.params = params;
    trace.mode = mode;
    trace.normalization = normalization;
    trace.rabi_tilde = frame.rabi_tilde;
    trace.n_max = n_max > 0 ? n_max : default_sideband_order(frame, params, nu_grid);

    std::vector<FCoefficients> coeff;
    std::vector<InitialConditions> init;
    for (int n = 1; n <= trace.n_max; n += 2) {
        coeff.push_back(chat_coefficients(frame, n));
        init.push_back(initial_conditions(frame, steady, n));
    }

    trace.values = parallel_map(nu_grid.size(), [&](std::size_t k) {
        cplx sum = 0.0;
        for (std::size_t j = 0; j < coeff.size(); ++j) {
            const int n = 2 * static_cast<int>(j) + 1;
            const cplx p(0.0, -(nu_grid[k] - n * params.omega));
            const LaplaceG g = laplace_g(r, frame.rabi_tilde, init[j], p);
            sum += coeff[j].plus * g.g_minus + coeff[j].minus * g.g_plus + coeff[j].z * g.g_z;
        }
        return 0.25 * sum.real();
    });

    if (normalization == Normalization::PeakUnit) {
        double peak = 0.0;
        for (double v : trace.values) peak = std::max(peak, std::fabs(v));
        if (peak > 0.0) {
            for (double& v : trace.values) v /= peak;
        }
    }
    return trace;
}

double asymmetry_metric(const SpectrumTrace& trace, double center) {
    const auto& nu = trace.nu_grid;
    if (nu.size() != trace.values.size() || nu.size() < 3) {
        throw std::invalid_argument("asymmetry_metric: trace needs at least three samples");
    }
    if (!(trace.rabi_tilde > 0.0)) throw std::invalid_argument("asymmetry_metric: trace has no sideband scale");
    const double h = (nu.back() - nu.front()) / static_cast<double>(nu.size() - 1);
    for (std::size_t k = 1; k < nu.size(); ++k) {
        if (std::fabs(nu[k] - nu[k - 1] - h) > 1e-6 * h) throw std::invalid_argument("asymmetry_metric: grid is not uniform");
    }
    const double pos = (center - nu.front()) / h;
    const long k0 = std::lround(pos);
    if (std::fabs(pos - static_cast<double>(k0)) > 1e-6 || k0 < 0 || k0 >= static_cast<long>(nu.size())) {
        throw std::invalid_argument("asymmetry_metric: center is not a grid point");
    }
    const long j_lo = static_cast<long>(std::ceil(0.5 * trace.rabi_tilde / h - 1e-9));
    const long j_hi = static_cast<long>(std::floor(1.5 * trace.rabi_tilde / h + 1e-9));
    if (j_hi - j_lo < 1 || k0 - j_hi < 0 || k0 + j_hi >= static_cast<long>(nu.size())) {
        throw std::invalid_argument("asymmetry_metric: grid is not symmetric about the center over the sideband window");
    }
    double num = 0.0;
    double den = 0.0;
    for (long j = j_lo; j <= j_hi; ++j) {
        const double w = (j == j_lo || j == j_hi) ? 0.5 : 1.0;
        const double up = trace.values[static_cast<std::size_t>(k0 + j)];
        const double dn = trace.values[static_cast<std::size_t>(k0 - j)];
        num += w * std::fabs(up - dn);
        den += w * (std::fabs(up) + std::fabs(dn));
    }
    return den > 0.0 ? num / den : 0.0;
}

std::vector<double> symmetric_grid(double center, double half_width, int points_per_side) {
    if (points_per_side < 1 || !(half_width > 0.0)) throw std::invalid_argument("symmetric_grid: empty grid");
    const double h = half_width / points_per_side;
    std::vector<double> g;
    g.reserve(2 * static_cast<std::size_t>(points_per_side) + 1);
    for (int k = -points_per_side; k <= points_per_side; ++k) g.push_back(center + k * h);
    return g;
}

} // namespace bsl
