#pragma once

#include <Eigen/Dense>

namespace dacs {

/// Certificate that the nominal closed loop contracts in the disagreement
/// norm: P solves P A_bar + A_bar^T P = -I with A_bar Hurwitz, and sigma
/// bounds the gradient ratio ||2 x^T R^T P R||^2 <= sigma ||R x||^2.
struct GainCertificate {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    Eigen::MatrixXd A_bar;
    Eigen::MatrixXd P;
    double sigma = 0.0;
    double P_min = 0.0;
    double P_max = 0.0;
    double abscissa = 0.0;       // max Re eig(A_bar)
    double lyap_residual = 0.0;  // ||P A_bar + A_bar^T P + I||_inf
};

/// Intermediate objects of the constructive gain search.
struct AppendixScratch {
    Eigen::MatrixXd P_J; // P_J J + J^T P_J = I
    double c = 0.0;      // gamma2 / gamma1, chosen so P_J < 2cI
    Eigen::MatrixXd Q;   // negative definite for any valid c
    Eigen::MatrixXd Q_c; // gain-independent remainder
};

/// Solve P A + A^T P = RHS by dense Kronecker vectorization.
/// Requires RHS symmetric and the spectrum of A free of mirrored pairs
/// (lambda_i + conj(lambda_j) != 0). Residual <= 1e-8 * (1 + ||RHS||_inf).
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& RHS);

/// Spectral abscissa test: true iff max Re eig(A) < -1e-10.
std::pair<bool, double> is_hurwitz(const Eigen::MatrixXd& A);

/// Assemble A_bar = [[0, I], [a1 I - g1 J, a2 I - g2 J]].
Eigen::MatrixXd assemble_a_bar(const Eigen::MatrixXd& J, double alpha1, double alpha2,
                               double gamma1, double gamma2);

/// Constructive gain selection:
///   1. solve P_J J + J^T P_J = I
///   2. c = 1.1 * lambda_max(P_J) / 2
///   3. gamma2 = c * gamma1; double gamma1 from 1 until
///      gamma1 Q + Q_c < 0 and c * gamma1 > 1
///   4. assemble A_bar and certify Hurwitz
///   5. solve P A_bar + A_bar^T P = -I
/// sigma is left 0 in the returned certificate; callers complete it with
/// assumption1_sigma once R is known. Rejects if gamma1 exceeds 2^60.
std::pair<GainCertificate, AppendixScratch> select_gains(const Eigen::MatrixXd& J,
                                                         double alpha1, double alpha2);

/// Certify user-supplied gains: assemble A_bar, require Hurwitz, solve for P.
/// sigma is left 0 as in select_gains.
GainCertificate certify_gains(const Eigen::MatrixXd& J, double alpha1, double alpha2,
                              double gamma1, double gamma2);

/// sigma = 4 * (largest singular value of P R)^2, the Assumption-1 ratio
/// bound: for all x, ||2 x^T R^T P R||^2 <= sigma ||R x||^2.
double assumption1_sigma(const Eigen::MatrixXd& P, const Eigen::MatrixXd& R);

} // namespace dacs
