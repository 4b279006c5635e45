#pragma once

#include "dacs/graph.hpp"

#include <Eigen/Dense>

namespace dacs {

/// Similarity-transform objects reducing the network to disagreement
/// coordinates.
///
///   r      left null vector of L (r^T L = 0, r^T 1 = 1)
///   W      (n-1) x n, orthonormal rows spanning the complement of span{1}
///   U_mat  n x (n-1), with W U_mat = I, r^T U_mat = 0, 1 r^T + U_mat W = I
///   J      (n-1) x (n-1) reduced Laplacian W L U_mat; spectrum = nonzero
///          spectrum of L, all real parts positive
///   R      2(n-1) x 2n block diag(W, W) mapping x = [p; v] to (W p, W v)
struct ConsensusTransform {
    Eigen::VectorXd r;
    Eigen::MatrixXd W;
    Eigen::MatrixXd U_mat;
    Eigen::MatrixXd J;
    Eigen::MatrixXd R;
};

/// Build the transform for a spanning-tree Laplacian and its left null
/// vector. W is fixed deterministically as rows 2..n of the Householder
/// reflector I - 2uu^T/u^Tu with u = (1/sqrt(n))*1 + e1; U_mat is
/// (I - 1 r^T) W^T (W W^T)^{-1}. Rejects on numerical rank deficiency.
ConsensusTransform build_transform(const Laplacian& lap, const Eigen::VectorXd& r);

/// Disagreement seminorm pair: (||W p||_2, ||W v||_2).
std::pair<double, double> disagreement(const ConsensusTransform& tf,
                                       const Eigen::VectorXd& p,
                                       const Eigen::VectorXd& v);

} // namespace dacs
