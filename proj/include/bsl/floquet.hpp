// floquet.hpp: truncated Floquet Hamiltonian, resonant branch and monodromy oracle

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bsl/chrw.hpp"

namespace bsl {

// The two candidate branch eigenvalues coincide (only possible for A = 0 at omega = omega0).
class BranchAmbiguityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Basis index of |gamma, l> in the full matrix, gamma = +1 (excited) or -1, l in [-N, N].
inline int floquet_index(int gamma, int l, int N) { return 2 * (l + N) + (gamma > 0 ? 0 : 1); }

// max(ceil(A/omega) + 20, 25)
int default_truncation(const ModelParams& params);

// Smallest N accepted without a warning: ceil(A/omega) + 10.
int minimum_truncation(const ModelParams& params);

// Fold q into (-omega/2, omega/2].
double fold_quasienergy(double q, double omega);

/// Real-symmetric Floquet matrix of size 2(2N+1): diagonal (omega0/2) sz + l omega,
/// (A/4) sx between neighbouring Fourier blocks.
Eigen::MatrixXd build_floquet_matrix(const ModelParams& params, int N,
                                     std::vector<std::string>* warnings = nullptr);

// Tracked resonant branch, computed in the even sector of the generalized parity
// sz x (t -> t + T/2), which holds |+, even l> and |-, odd l>. The branch is the
// lower of the two sector eigenvalues in (-omega/2, 3omega/2].
struct ParityBranch {
    double energy = 0.0;      // unfolded sector eigenvalue
    double dq_domega0 = 0.0;  // sum_l a_gamma |c|^2, a = +1/2 excited, -1/2 ground
    Eigen::VectorXd vector;   // sector amplitudes, entry k belongs to l = k - N
    int truncation_N = 0;
};

ParityBranch parity_branch(const ModelParams& params, int N);

struct FloquetSolution {
    std::vector<double> quasienergies;  // folded pair {q, -q mod omega}, ascending
    std::vector<double> ladder;         // all eigenvalues of the truncated matrix, ascending
    Eigen::MatrixXd eigenvectors;       // columns match ladder, rows follow floquet_index
    Eigen::VectorXd branch_vector;      // tracked eigenvector embedded in the full basis
    double dq_domega0 = 0.0;
    double pbar = 0.0;
    int truncation_N = 0;
};

/// Full Floquet solution. N = 0 selects default_truncation with a doubling
/// convergence check on the branch energy (ConvergenceError past N = 4096).
FloquetSolution solve_floquet(const ModelParams& params, int N = 0,
                              std::vector<std::string>* warnings = nullptr);

double dq_domega0(const ModelParams& params, int N = 0);

double pbar(const ModelParams& params, int N = 0);

/// Quasienergies from the one-period propagator, fourth-order Magnus with exact
/// 2x2 exponentials. Ascending, folded into (-omega/2, omega/2].
std::pair<double, double> monodromy_quasienergies(const ModelParams& params, int steps_per_period = 2000);

// One-period propagator used by monodromy_quasienergies.
Eigen::Matrix2cd monodromy(const ModelParams& params, int steps_per_period);

} // namespace bsl
