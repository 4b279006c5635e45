#include "dacs/transform.hpp"

#include "dacs/errors.hpp"

#include <cmath>

namespace dacs {

ConsensusTransform build_transform(const Laplacian& lap, const Eigen::VectorXd& r) {
    const int n = lap.n();
    if (r.size() != n) throw SchemaError("left null vector length does not match Laplacian");

    // Householder reflector H = I - 2uu^T/u^Tu with u = (1/sqrt(n))1 + e1.
    // H is orthogonal and maps (1/sqrt(n))1 to -e1, so its rows 2..n form an
    // orthonormal basis of the complement of span{1}. This sign choice gives
    // W = [-1, 1]/sqrt(2) at n = 2.
    Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    u(0) += 1.0;
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n) - (2.0 / u.squaredNorm()) * u * u.transpose();

    ConsensusTransform tf;
    tf.r = r;
    tf.W = H.bottomRows(n - 1);

    // U_mat = (I - 1 r^T) W^+ with W^+ = W^T (W W^T)^{-1}; W W^T = I to
    // roundoff, the solve keeps the construction exact in the invariants.
    Eigen::MatrixXd WWt = tf.W * tf.W.transpose();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(WWt);
    if (ldlt.info() != Eigen::Success)
        throw AssumptionError("W W^T is numerically rank deficient");
    Eigen::MatrixXd Wplus = ldlt.solve(tf.W).transpose();
    Eigen::MatrixXd ones_rT = Eigen::VectorXd::Ones(n) * r.transpose();
    tf.U_mat = (Eigen::MatrixXd::Identity(n, n) - ones_rT) * Wplus;

    tf.J = tf.W * lap.L * tf.U_mat;

    // Completeness check 1 r^T + U_mat W = I; fails only if r or L is bad.
    const double resid = (ones_rT + tf.U_mat * tf.W - Eigen::MatrixXd::Identity(n, n))
                             .cwiseAbs()
                             .maxCoeff();
    if (resid > 1e-8)
        throw AssumptionError("transform completeness residual " + std::to_string(resid) +
                              " exceeds 1e-8; inputs are numerically rank deficient");

    tf.R = Eigen::MatrixXd::Zero(2 * (n - 1), 2 * n);
    tf.R.topLeftCorner(n - 1, n) = tf.W;
    tf.R.bottomRightCorner(n - 1, n) = tf.W;
    return tf;
}

std::pair<double, double> disagreement(const ConsensusTransform& tf,
                                       const Eigen::VectorXd& p,
                                       const Eigen::VectorXd& v) {
    return {(tf.W * p).norm(), (tf.W * v).norm()};
}

} // namespace dacs
