// floquet.cpp: Floquet matrix, parity-sector branch, monodromy propagator

#include "bsl/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace bsl {

namespace {

bool is_even(int l) { return ((l % 2) + 2) % 2 == 0; }

constexpr int kMaxTruncation = 4096;

} // namespace

int default_truncation(const ModelParams& p) {
    return std::max(static_cast<int>(std::ceil(p.amplitude_A / p.omega)) + 20, 25);
}

int minimum_truncation(const ModelParams& p) {
    return static_cast<int>(std::ceil(p.amplitude_A / p.omega)) + 10;
}

double fold_quasienergy(double q, double omega) {
    double r = q - omega * std::floor(q / omega + 0.5);
    if (r <= -0.5 * omega) r += omega;
    if (r > 0.5 * omega) r -= omega;
    return r;
}

Eigen::MatrixXd build_floquet_matrix(const ModelParams& params, int N, std::vector<std::string>* warnings) {
    params.validate();
    if (N < 0) throw std::invalid_argument("build_floquet_matrix: N must be non-negative");
    if (warnings && N < minimum_truncation(params)) {
        std::ostringstream os;
        os << "Floquet truncation N = " << N << " is below ceil(A/omega) + 10 = " << minimum_truncation(params);
        warnings->push_back(os.str());
    }
    const int dim = 2 * (2 * N + 1);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    const double c = 0.25 * params.amplitude_A;
    for (int l = -N; l <= N; ++l) {
        const int p = floquet_index(+1, l, N);
        const int m = floquet_index(-1, l, N);
        h(p, p) = 0.5 * params.omega0 + l * params.omega;
        h(m, m) = -0.5 * params.omega0 + l * params.omega;
        if (l < N) {
            const int p1 = floquet_index(+1, l + 1, N);
            const int m1 = floquet_index(-1, l + 1, N);
            h(p, m1) = h(m1, p) = c;
            h(m, p1) = h(p1, m) = c;
        }
    }
    return h;
}

ParityBranch parity_branch(const ModelParams& params, int N) {
    params.validate();
    if (N < 1) throw std::invalid_argument("parity_branch: N must be at least 1");
    const int dim = 2 * N + 1;
    Eigen::VectorXd diag(dim);
    Eigen::VectorXd sub = Eigen::VectorXd::Constant(dim - 1, 0.25 * params.amplitude_A);
    for (int k = 0; k < dim; ++k) {
        const int l = k - N;
        diag(k) = l * params.omega + (is_even(l) ? 0.5 : -0.5) * params.omega0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw ConvergenceError("parity_branch: tridiagonal eigensolver failed");

    const Eigen::VectorXd& ev = es.eigenvalues();
    const double lo = -0.5 * params.omega;
    const double hi = 1.5 * params.omega;
    int first = -1;
    int second = -1;
    for (int k = 0; k < dim; ++k) {
        if (ev(k) > lo && ev(k) <= hi) {
            if (first < 0) {
                first = k;
            } else {
                second = k;
                break;
            }
        }
    }
    if (first < 0) throw ConvergenceError("parity_branch: no sector eigenvalue in the branch window");
    if (second >= 0 && std::fabs(ev(second) - ev(first)) <= 1e-12 * std::max(1.0, std::fabs(ev(first)))) {
        throw BranchAmbiguityError("parity_branch: degenerate branch candidates");
    }

    ParityBranch b;
    b.energy = ev(first);
    b.vector = es.eigenvectors().col(first);
    b.truncation_N = N;
    double dq = 0.0;
    for (int k = 0; k < dim; ++k) {
        const double w = b.vector(k) * b.vector(k);
        dq += is_even(k - N) ? 0.5 * w : -0.5 * w;
    }
    b.dq_domega0 = dq;
    return b;
}

FloquetSolution solve_floquet(const ModelParams& params, int N, std::vector<std::string>* warnings) {
    params.validate();
    ParityBranch branch;
    if (N > 0) {
        if (warnings && N < minimum_truncation(params)) {
            std::ostringstream os;
            os << "Floquet truncation N = " << N << " is below ceil(A/omega) + 10 = " << minimum_truncation(params);
            warnings->push_back(os.str());
        }
        branch = parity_branch(params, N);
    } else {
        N = default_truncation(params);
        branch = parity_branch(params, N);
        for (;;) {
            if (2 * N > kMaxTruncation) throw ConvergenceError("solve_floquet: truncation did not converge");
            const ParityBranch wider = parity_branch(params, 2 * N);
            const bool converged = std::fabs(wider.energy - branch.energy) <= 1e-10 * std::max(1.0, std::fabs(branch.energy)) &&
                                   std::fabs(wider.dq_domega0 - branch.dq_domega0) <= 1e-10;
            if (converged) break;
            N *= 2;
            branch = wider;
        }
    }

    FloquetSolution sol;
    sol.truncation_N = N;
    sol.dq_domega0 = branch.dq_domega0;
    sol.pbar = 0.5 * (1.0 - 4.0 * branch.dq_domega0 * branch.dq_domega0);
    const double qa = fold_quasienergy(branch.energy, params.omega);
    const double qb = fold_quasienergy(-branch.energy, params.omega);
    sol.quasienergies = {std::min(qa, qb), std::max(qa, qb)};

    const Eigen::MatrixXd h = build_floquet_matrix(params, N);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) throw ConvergenceError("solve_floquet: eigensolver failed");
    sol.ladder.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    sol.eigenvectors = es.eigenvectors();

    sol.branch_vector = Eigen::VectorXd::Zero(h.rows());
    for (int k = 0; k < 2 * N + 1; ++k) {
        const int l = k - N;
        sol.branch_vector(floquet_index(is_even(l) ? +1 : -1, l, N)) = branch.vector(k);
    }
    return sol;
}

double dq_domega0(const ModelParams& params, int N) {
    return solve_floquet(params, N).dq_domega0;
}

double pbar(const ModelParams& params, int N) {
    return solve_floquet(params, N).pbar;
}

Eigen::Matrix2cd monodromy(const ModelParams& params, int steps_per_period) {
    params.validate();
    if (steps_per_period < 1) throw std::invalid_argument("monodromy: steps_per_period must be positive");
    const double period = 2.0 * std::numbers::pi / params.omega;
    const double h = period / steps_per_period;
    const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
    const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
    const double hz = 0.5 * params.omega0;
    const std::complex<double> I(0.0, 1.0);

    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    for (int s = 0; s < steps_per_period; ++s) {
        const double t = s * h;
        const double x1 = 0.5 * params.amplitude_A * std::cos(params.omega * (t + c1 * h));
        const double x2 = 0.5 * params.amplitude_A * std::cos(params.omega * (t + c2 * h));
        // Magnus exponent -i K with K = k.sigma
        const double kx = 0.5 * h * (x1 + x2);
        const double ky = std::sqrt(3.0) / 6.0 * h * h * hz * (x1 - x2);
        const double kz = h * hz;
        const double norm = std::sqrt(kx * kx + ky * ky + kz * kz);
        const double c = std::cos(norm);
        const double sn = norm > 0.0 ? std::sin(norm) / norm : 1.0;
        Eigen::Matrix2cd e;
        e(0, 0) = c - I * sn * kz;
        e(1, 1) = c + I * sn * kz;
        e(0, 1) = -I * sn * std::complex<double>(kx, -ky);
        e(1, 0) = -I * sn * std::complex<double>(kx, ky);
        u = e * u;
    }
    const double defect = (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (defect > 1e-10) {
        std::ostringstream os;
        os << "monodromy: propagator not unitary, defect " << defect;
        throw ConvergenceError(os.str());
    }
    return u;
}

std::pair<double, double> monodromy_quasienergies(const ModelParams& params, int steps_per_period) {
    const Eigen::Matrix2cd u = monodromy(params, steps_per_period);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(u);
    const double period = 2.0 * std::numbers::pi / params.omega;
    double q0 = fold_quasienergy(-std::arg(es.eigenvalues()(0)) / period, params.omega);
    double q1 = fold_quasienergy(-std::arg(es.eigenvalues()(1)) / period, params.omega);
    if (q1 < q0) std::swap(q0, q1);
    return {q0, q1};
}

} // namespace bsl
