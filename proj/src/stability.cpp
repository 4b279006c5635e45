#include "dacs/stability.hpp"

#include "dacs/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <string>

namespace dacs {

namespace {

double max_sym_eig(const Eigen::MatrixXd& S) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

} // namespace

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& RHS) {
    const int m = static_cast<int>(A.rows());
    if (A.cols() != m || RHS.rows() != m || RHS.cols() != m)
        throw SchemaError("solve_lyapunov: dimension mismatch");
    if ((RHS - RHS.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + RHS.cwiseAbs().maxCoeff()))
        throw SchemaError("solve_lyapunov: RHS is not symmetric");

    // vec(P A) = (A^T kron I) vec(P), vec(A^T P) = (I kron A^T) vec(P),
    // column-major vec.
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m * m, m * m);
    // (A^T kron I): block (r, c) of m x m blocks is A^T(r, c) * I = A(c, r) * I.
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < m; ++r)
            for (int k = 0; k < m; ++k) K(r * m + k, c * m + k) += A(c, r);
    // (I kron A^T): diagonal blocks equal A^T.
    for (int b = 0; b < m; ++b) K.block(b * m, b * m, m, m) += A.transpose();

    Eigen::Map<const Eigen::VectorXd> rhs_vec(RHS.data(), m * m);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
    if (!lu.isInvertible())
        throw AssumptionError("solve_lyapunov: spectrum violates solvability (singular "
                              "Kronecker system)");
    Eigen::VectorXd p_vec = lu.solve(rhs_vec);
    Eigen::MatrixXd P = Eigen::Map<Eigen::MatrixXd>(p_vec.data(), m, m);
    P = 0.5 * (P + P.transpose()).eval();

    const double resid = (P * A + A.transpose() * P - RHS).cwiseAbs().maxCoeff();
    if (resid > 1e-8 * (1.0 + RHS.cwiseAbs().maxCoeff()))
        throw AssumptionError("solve_lyapunov: residual " + std::to_string(resid) +
                              " exceeds tolerance; system is too ill-conditioned");
    return P;
}

std::pair<bool, double> is_hurwitz(const Eigen::MatrixXd& A) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
    const double abscissa = es.eigenvalues().real().maxCoeff();
    return {abscissa < -1e-10, abscissa};
}

Eigen::MatrixXd assemble_a_bar(const Eigen::MatrixXd& J, double alpha1, double alpha2,
                               double gamma1, double gamma2) {
    const int m = static_cast<int>(J.rows());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    A.topRightCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
    A.bottomLeftCorner(m, m) = alpha1 * Eigen::MatrixXd::Identity(m, m) - gamma1 * J;
    A.bottomRightCorner(m, m) = alpha2 * Eigen::MatrixXd::Identity(m, m) - gamma2 * J;
    return A;
}

namespace {

GainCertificate finish_certificate(const Eigen::MatrixXd& J, double alpha1, double alpha2,
                                   double gamma1, double gamma2) {
    GainCertificate cert;
    cert.gamma1 = gamma1;
    cert.gamma2 = gamma2;
    cert.A_bar = assemble_a_bar(J, alpha1, alpha2, gamma1, gamma2);
    auto [hurwitz, abscissa] = is_hurwitz(cert.A_bar);
    cert.abscissa = abscissa;
    if (!hurwitz)
        throw AssumptionError("A_bar(gamma1=" + std::to_string(gamma1) +
                              ", gamma2=" + std::to_string(gamma2) +
                              ") is not Hurwitz: spectral abscissa " + std::to_string(abscissa));
    const int d = static_cast<int>(cert.A_bar.rows());
    cert.P = solve_lyapunov(cert.A_bar, -Eigen::MatrixXd::Identity(d, d));
    cert.lyap_residual = (cert.P * cert.A_bar + cert.A_bar.transpose() * cert.P +
                          Eigen::MatrixXd::Identity(d, d))
                             .cwiseAbs()
                             .maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cert.P, Eigen::EigenvaluesOnly);
    cert.P_min = es.eigenvalues().minCoeff();
    cert.P_max = es.eigenvalues().maxCoeff();
    if (cert.P_min <= 0.0)
        throw AssumptionError("Lyapunov solution P is not positive definite");
    return cert;
}

} // namespace

std::pair<GainCertificate, AppendixScratch> select_gains(const Eigen::MatrixXd& J,
                                                         double alpha1, double alpha2) {
    const int m = static_cast<int>(J.rows());
    AppendixScratch scratch;

    scratch.P_J = solve_lyapunov(J, Eigen::MatrixXd::Identity(m, m));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scratch.P_J);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw AssumptionError("P_J is not positive definite; J has eigenvalues with "
                              "nonpositive real part");
    const double pj_max = es.eigenvalues().maxCoeff();
    scratch.c = 1.1 * pj_max / 2.0;
    const double c = scratch.c;

    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
    scratch.Q = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    scratch.Q.topLeftCorner(m, m) = -I;
    scratch.Q.topRightCorner(m, m) = scratch.P_J - c * I;
    scratch.Q.bottomLeftCorner(m, m) = scratch.P_J - c * I;
    scratch.Q.bottomRightCorner(m, m) = -c * c * I;

    scratch.Q_c = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    scratch.Q_c.topLeftCorner(m, m) = 2.0 * alpha1 * scratch.P_J;
    scratch.Q_c.topRightCorner(m, m) = (alpha2 + alpha1 * c) * scratch.P_J;
    scratch.Q_c.bottomLeftCorner(m, m) = (alpha2 + alpha1 * c) * scratch.P_J;
    scratch.Q_c.bottomRightCorner(m, m) = 2.0 * (1.0 + alpha2 * c) * scratch.P_J;

    if (max_sym_eig(scratch.Q) >= 0.0)
        throw AssumptionError("gain-search matrix Q is not negative definite; c selection failed");

    double gamma1 = 1.0;
    while (true) {
        if (max_sym_eig(gamma1 * scratch.Q + scratch.Q_c) < 0.0 && c * gamma1 > 1.0) break;
        gamma1 *= 2.0;
        if (gamma1 > 0x1.0p60)
            throw AssumptionError("gain search exceeded gamma1 = 2^60; J is unsuitable");
    }

    GainCertificate cert = finish_certificate(J, alpha1, alpha2, gamma1, c * gamma1);
    return {cert, scratch};
}

GainCertificate certify_gains(const Eigen::MatrixXd& J, double alpha1, double alpha2,
                              double gamma1, double gamma2) {
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0))
        throw SchemaError("gains must be positive");
    return finish_certificate(J, alpha1, alpha2, gamma1, gamma2);
}

double assumption1_sigma(const Eigen::MatrixXd& P, const Eigen::MatrixXd& R) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(P * R);
    const double s = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    return 4.0 * s * s;
}

} // namespace dacs
