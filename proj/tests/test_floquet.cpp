#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bsl/floquet.hpp"
#include "bsl/resonance.hpp"
#include "bsl/validation.hpp"
#include "oracles.hpp"

using namespace bsl;

TEST_CASE("Floquet matrix structure") {
    const Eigen::MatrixXd m0 = build_floquet_matrix(ModelParams{1.0, 1.0, 1.0, 0.0}, 0);
    REQUIRE(m0.rows() == 2);
    CHECK(m0(0, 0) == 0.5);
    CHECK(m0(1, 1) == -0.5);
    CHECK(m0(0, 1) == 0.0);

    const ModelParams p{1.0, 3.0, 1.7, 0.0};
    const int N = 12;
    const Eigen::MatrixXd m = build_floquet_matrix(p, N);
    REQUIRE(m.rows() == 2 * (2 * N + 1));
    CHECK((m - m.transpose()).norm() == 0.0);
    for (int l = -N; l < N; ++l) {
        CHECK(m(floquet_index(1, l, N), floquet_index(-1, l + 1, N)) == 0.75);
        CHECK(m(floquet_index(-1, l, N), floquet_index(1, l + 1, N)) == 0.75);
        CHECK(m(floquet_index(1, l, N), floquet_index(1, l + 1, N)) == 0.0);
    }
    CHECK(m(floquet_index(1, 2, N), floquet_index(1, 2, N)) == doctest::Approx(0.5 + 2 * 1.7));
}

TEST_CASE("undriven ladder") {
    const ModelParams p{1.0, 0.0, 0.8, 0.0};
    const FloquetSolution s = solve_floquet(p, 5);
    std::vector<double> expect;
    for (int l = -5; l <= 5; ++l) {
        expect.push_back(0.5 + l * 0.8);
        expect.push_back(-0.5 + l * 0.8);
    }
    std::sort(expect.begin(), expect.end());
    REQUIRE(s.ladder.size() == expect.size());
    for (std::size_t k = 0; k < expect.size(); ++k) CHECK(s.ladder[k] == doctest::Approx(expect[k]).scale(1.0));
    CHECK(std::fabs(dq_domega0(ModelParams{1.0, 0.0, 2.0, 0.0})) == doctest::Approx(0.5));
    CHECK(pbar(ModelParams{1.0, 0.0, 2.0, 0.0}) == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS_AS(solve_floquet(ModelParams{1.0, 0.0, 1.0, 0.0}), BranchAmbiguityError);
}

TEST_CASE("branch derivative vanishes at tabulated resonances") {
    CHECK(std::fabs(dq_domega0(ModelParams{1.0, 1.0, 1.063224, 0.0}, 40)) < 1e-6);
    CHECK(std::fabs(dq_domega0(ModelParams{1.0, 6.0, 1.0 + 1.641809, 0.0}, 60)) < 1e-5);
}

TEST_CASE("pbar at resonance and off resonance") {
    CHECK(std::fabs(pbar(ModelParams{1.0, 1.0, 1.063224, 0.0}) - 0.5) < 1e-10);
    const ModelParams p{1.0, 1.0, 1.2, 0.0};
    const double v = pbar(p);
    CHECK(v > 0.0);
    CHECK(v < 0.5);
    const double ref = oracle::schrodinger_pbar(p);
    INFO("Floquet " << v << ", direct integration " << ref);
    CHECK(std::fabs(v - ref) <= 1e-3);
}

TEST_CASE("pbar peaks at the numerical resonance") {
    const double w = 1.0 + bs_floquet_numeric(1.0, 2.0).shift;
    const double top = pbar(ModelParams{1.0, 2.0, w, 0.0});
    CHECK(top >= pbar(ModelParams{1.0, 2.0, w - 1e-3, 0.0}));
    CHECK(top >= pbar(ModelParams{1.0, 2.0, w + 1e-3, 0.0}));
}

TEST_CASE("solution fields") {
    const ModelParams p{1.0, 2.0, 1.3, 0.0};
    const FloquetSolution s = solve_floquet(p);
    REQUIRE(s.quasienergies.size() == 2);
    for (double q : s.quasienergies) {
        CHECK(q > -0.65);
        CHECK(q <= 0.65);
    }
    CHECK(fold_quasienergy(s.quasienergies[0] + s.quasienergies[1], 1.3) == doctest::Approx(0.0).scale(1.0));
    CHECK(s.branch_vector.norm() == doctest::Approx(1.0));
    CHECK(s.pbar == doctest::Approx(0.5 * (1.0 - 4.0 * s.dq_domega0 * s.dq_domega0)));
    CHECK(s.truncation_N >= default_truncation(p));
    for (int k = 0; k < s.eigenvectors.cols(); k += 7) CHECK(s.eigenvectors.col(k).norm() == doctest::Approx(1.0));
}

TEST_CASE("fold_quasienergy range") {
    CHECK(fold_quasienergy(0.5, 1.0) == 0.5);
    CHECK(fold_quasienergy(-0.5, 1.0) == doctest::Approx(0.5));
    CHECK(fold_quasienergy(2.3, 1.0) == doctest::Approx(0.3));
    CHECK(default_truncation(ModelParams{1.0, 1.0, 1.0, 0.0}) == 25);
    CHECK(default_truncation(ModelParams{1.0, 50.0, 1.0, 0.0}) == 70);
}

TEST_CASE("truncation below the minimum warns") {
    std::vector<std::string> warnings;
    build_floquet_matrix(ModelParams{1.0, 10.0, 1.0, 0.0}, 5, &warnings);
    CHECK(!warnings.empty());
}

TEST_CASE("Brillouin-zone shift invariance of interior eigenvalues") {
    const ModelParams p{1.0, 4.0, 1.4, 0.0};
    const FloquetSolution s = solve_floquet(p, 40);
    const double w = p.omega;
    for (double e : s.ladder) {
        if (std::fabs(e) > 15 * w) continue;
        double best = 1e9;
        for (double f : s.ladder) best = std::min(best, std::fabs(f - (e + w)));
        CHECK(best <= 1e-9);
    }
}

TEST_CASE("truncation convergence N to N + 10") {
    for (double A : {0.5, 5.0, 12.0, 25.0}) {
        for (double w : {0.9, 2.0}) {
            const ModelParams p{1.0, A, w, 0.0};
            const int N = static_cast<int>(std::ceil(A / w)) + 20;
            CHECK(truncation_change(p, N) <= 1e-10);
        }
    }
}

TEST_CASE("Hellmann-Feynman derivative") {
    for (double A : {0.3, 2.0, 7.0}) {
        for (double w : {0.8, 1.1, 2.4}) CHECK(hellmann_feynman_discrepancy(ModelParams{1.0, A, w, 0.0}) <= 1e-6);
    }
}

TEST_CASE("monodromy examples") {
    const auto [a, b] = monodromy_quasienergies(ModelParams{1.0, 0.0, 0.7, 0.0});
    CHECK(std::min(std::fabs(fold_quasienergy(a - 0.5, 0.7)), std::fabs(fold_quasienergy(a + 0.5, 0.7))) < 1e-12);
    CHECK(std::min(std::fabs(fold_quasienergy(b - 0.5, 0.7)), std::fabs(fold_quasienergy(b + 0.5, 0.7))) < 1e-12);

    const ModelParams p{1.0, 1.0, 1.0, 0.0};
    const Eigen::Matrix2cd U = monodromy(p, 2000);
    CHECK((U.adjoint() * U - Eigen::Matrix2cd::Identity()).norm() <= 1e-10);
    CHECK(monodromy_discrepancy(p) <= 1e-8);
}

TEST_CASE("monodromy agrees with the Floquet matrix on a grid") {
    for (double A : {0.5, 2.5, 5.0, 7.5, 10.0}) {
        for (double w : {0.6, 1.0, 1.7, 2.5, 4.0}) CHECK(monodromy_discrepancy(ModelParams{1.0, A, w, 0.0}, 0, 4000) <= 1e-8);
    }
}

TEST_CASE("quasienergy gap closes at A/omega = first J0 zero for fast driving") {
    // at omega = omega0 the gap is strongly reduced; it closes as omega / omega0 grows
    const auto undriven = monodromy_quasienergies(ModelParams{1.0, 0.0, 1.0, 0.0}, 4000);
    const auto cdt = monodromy_quasienergies(ModelParams{1.0, 2.404826, 1.0, 0.0}, 4000);
    const double g_undriven = std::fabs(undriven.second - undriven.first);
    const double g1 = std::fabs(cdt.second - cdt.first);
    INFO("gap at omega = omega0: " << g1);
    CHECK(g1 < 0.15 * g_undriven);
    double previous = g1;
    for (double w : {5.0, 20.0}) {
        const auto q = monodromy_quasienergies(ModelParams{1.0, 2.404826 * w, w, 0.0}, 4000);
        const double g = std::fabs(q.second - q.first);
        INFO("omega = " << w << " gap " << g);
        CHECK(g < previous);
        CHECK(g < 0.1 / w);
        previous = g;
    }
}
