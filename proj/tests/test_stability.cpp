#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"

#include <Eigen/Eigenvalues>

using namespace dacs;

namespace {

Eigen::MatrixXd fig2_J() {
    const Laplacian lap = laplacian(build_network(6, tt::fig2_edges()));
    return build_transform(lap, left_null_vector(lap)).J;
}

double min_eig_sym(const Eigen::MatrixXd& S) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S, Eigen::EigenvaluesOnly)
        .eigenvalues()
        .minCoeff();
}

double max_eig_sym(const Eigen::MatrixXd& S) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S, Eigen::EigenvaluesOnly)
        .eigenvalues()
        .maxCoeff();
}

} // namespace

TEST_CASE("solve_lyapunov closed-form cases") {
    SUBCASE("A = -I2, RHS = -I2 gives P = I/2") {
        const Eigen::MatrixXd P =
            solve_lyapunov(-Eigen::MatrixXd::Identity(2, 2), -Eigen::MatrixXd::Identity(2, 2));
        CHECK(tt::max_abs(P - 0.5 * Eigen::MatrixXd::Identity(2, 2)) <= 1e-12);
    }
    SUBCASE("scalar A = -2, RHS = -1 gives P = 1/4") {
        Eigen::MatrixXd A(1, 1), RHS(1, 1);
        A << -2.0;
        RHS << -1.0;
        CHECK(solve_lyapunov(A, RHS)(0, 0) == doctest::Approx(0.25).epsilon(1e-14));
    }
}

TEST_CASE("solve_lyapunov on the fig2 A_bar meets its residual contract") {
    const Eigen::MatrixXd A = assemble_a_bar(fig2_J(), -1.0, 0.0, 15.0, 1.7);
    const Eigen::MatrixXd RHS = -Eigen::MatrixXd::Identity(10, 10);
    const Eigen::MatrixXd P = solve_lyapunov(A, RHS);
    CHECK(tt::max_abs(P - P.transpose()) == 0.0);
    CHECK(tt::max_abs(P * A + A.transpose() * P - RHS) <= 1e-8 * (1.0 + tt::max_abs(RHS)));
    CHECK(min_eig_sym(P) > 0.0);
}

TEST_CASE("solve_lyapunov rejects mirrored spectra") {
    SUBCASE("double integrator (eigenvalues 0,0)") {
        Eigen::MatrixXd A(2, 2);
        A << 0, 1, 0, 0;
        CHECK_THROWS_WITH_AS(solve_lyapunov(A, -Eigen::MatrixXd::Identity(2, 2)),
                             doctest::Contains("spectrum violates solvability"), AssumptionError);
    }
    SUBCASE("mirrored pair +1/-1") {
        Eigen::MatrixXd A(2, 2);
        A << 1, 0, 0, -1;
        CHECK_THROWS_AS(solve_lyapunov(A, -Eigen::MatrixXd::Identity(2, 2)), AssumptionError);
    }
}

TEST_CASE("is_hurwitz basic and paper gains") {
    {
        const auto [ok, abs] = is_hurwitz(-Eigen::MatrixXd::Identity(3, 3));
        CHECK(ok);
        CHECK(abs == doctest::Approx(-1.0).epsilon(1e-12));
    }
    {
        Eigen::MatrixXd A(2, 2);
        A << 0, 1, 0, 0;
        const auto [ok, abs] = is_hurwitz(A);
        CHECK_FALSE(ok);
        CHECK(std::abs(abs) <= 1e-12);
    }
    {
        const auto [ok, abs] = is_hurwitz(assemble_a_bar(fig2_J(), -1.0, 0.0, 15.0, 1.7));
        CHECK(ok);
        CHECK(abs < -1e-10);
    }
}

TEST_CASE("select_gains on scalar J follows the constructive algorithm") {
    Eigen::MatrixXd J(1, 1);
    J << 1.0;
    const auto [cert, scratch] = select_gains(J, 0.0, 0.0);
    CHECK(scratch.P_J(0, 0) == doctest::Approx(0.5).epsilon(1e-12)); // P_J J + J P_J = I
    CHECK(scratch.c == doctest::Approx(1.1 * 0.5 / 2.0).epsilon(1e-12));
    CHECK(scratch.c > 0.25); // P_J < 2cI
    CHECK(cert.gamma2 == doctest::Approx(scratch.c * cert.gamma1).epsilon(1e-12));
    CHECK(cert.gamma1 * scratch.c > 1.0);
    const auto [ok, abs] = is_hurwitz(cert.A_bar);
    CHECK(ok);
    CHECK(abs == doctest::Approx(cert.abscissa).epsilon(1e-12));
}

TEST_CASE("select_gains on the fig2 J satisfies every certificate invariant") {
    const Eigen::MatrixXd J = fig2_J();
    const auto [cert, scratch] = select_gains(J, -1.0, 0.0);

    CHECK(tt::max_abs(scratch.P_J * J + J.transpose() * scratch.P_J -
                      Eigen::MatrixXd::Identity(5, 5)) <= 1e-8);
    CHECK(max_eig_sym(scratch.P_J) < 2.0 * scratch.c);
    CHECK(max_eig_sym(scratch.Q) < 0.0);
    CHECK(cert.gamma2 == doctest::Approx(scratch.c * cert.gamma1).epsilon(1e-12));

    CHECK(cert.abscissa < -1e-10);
    CHECK(tt::max_abs(cert.P - cert.P.transpose()) == 0.0);
    CHECK(cert.lyap_residual <= 1e-8);
    CHECK(cert.P_min > 0.0);
    CHECK(cert.P_max >= cert.P_min);
    CHECK(min_eig_sym(cert.P) == doctest::Approx(cert.P_min).epsilon(1e-10));

    // The gain-search block identity P_blk A_bar + A_bar^T P_blk = gamma1 Q + Q_c
    // holds for the block matrix P_blk = [[g1 P_J, P_J], [P_J, c P_J]].
    Eigen::MatrixXd Pblk(10, 10);
    Pblk << cert.gamma1 * scratch.P_J, scratch.P_J, scratch.P_J, scratch.c * scratch.P_J;
    const Eigen::MatrixXd lhs = Pblk * cert.A_bar + cert.A_bar.transpose() * Pblk;
    const Eigen::MatrixXd rhs = cert.gamma1 * scratch.Q + scratch.Q_c;
    CHECK(tt::max_abs(lhs - rhs) <= 1e-8 * (1.0 + tt::max_abs(rhs)));
    CHECK(max_eig_sym(rhs) < 0.0); // the predicate that accepted gamma1
}

TEST_CASE("select_gains certifies 100 random spanning-tree networks") {
    SeededRng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const Laplacian lap = laplacian(tt::random_network(rng));
        const ConsensusTransform tf = build_transform(lap, left_null_vector(lap));
        const auto [cert, scratch] = select_gains(tf.J, -1.0, 0.0);
        CHECK(cert.abscissa < -1e-10);
        CHECK(cert.lyap_residual <= 1e-8);
        CHECK(cert.P_min > 0.0);
        CHECK(max_eig_sym(scratch.Q) < 0.0);
    }
}

TEST_CASE("assumption1_sigma bound") {
    SUBCASE("identity data") {
        Eigen::MatrixXd R(1, 2);
        R << 1.0, 0.0; // spectral norm 1
        CHECK(assumption1_sigma(Eigen::MatrixXd::Identity(1, 1), R) ==
              doctest::Approx(4.0).epsilon(1e-14));
    }
    SUBCASE("zero R degenerates to zero") {
        CHECK(assumption1_sigma(Eigen::MatrixXd::Identity(3, 3),
                                Eigen::MatrixXd::Zero(3, 6)) == 0.0);
    }
    SUBCASE("Monte-Carlo ratio check on the fig2 certificate") {
        const ScenarioSpec spec = tt::load_preset("paper_fig2");
        SeededRng rng(31);
        for (int s = 0; s < 10000; ++s) {
            Eigen::VectorXd x(12);
            for (int i = 0; i < 12; ++i) x(i) = rng.uniform(-10.0, 10.0);
            const double grad_sq =
                (2.0 * x.transpose() * spec.tf.R.transpose() * spec.cert.P * spec.tf.R)
                    .squaredNorm();
            const double xr_sq = (spec.tf.R * x).squaredNorm();
            CHECK(grad_sq <= spec.cert.sigma * xr_sq * (1.0 + 1e-12) + 1e-12);
        }
    }
}

TEST_CASE("quadratic sandwich: P_min ||x||_R^2 <= V <= P_max ||x||_R^2") {
    const ScenarioSpec spec = tt::load_preset("paper_fig2");
    SeededRng rng(77);
    for (int s = 0; s < 1000; ++s) {
        Eigen::VectorXd x(12);
        for (int i = 0; i < 12; ++i) x(i) = rng.uniform(-5.0, 5.0);
        const Eigen::VectorXd Rx = spec.tf.R * x;
        const double V = Rx.dot(spec.cert.P * Rx);
        const double nr = Rx.squaredNorm();
        CHECK(V >= spec.cert.P_min * nr * (1.0 - 1e-10) - 1e-12);
        CHECK(V <= spec.cert.P_max * nr * (1.0 + 1e-10) + 1e-12);
    }
}
